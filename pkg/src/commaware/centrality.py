"""The seven community-aware centrality measures and score rankings.

Measure ids:

    COMM  Comm Centrality
    CBC   Community-based Centrality
    CBM   Community-based Mediator
    CHB   Community Hub-Bridge
    MV    Modularity Vitality
    PC    Participation Coefficient
    KSC   K-shell with Community
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from commaware.community import LinkCensus, Partition, community_totals, link_census
from commaware.errors import ParameterError, UndefinedStatsError
from commaware.graph import Graph, k_core_decomposition

MEASURES = ("COMM", "CBC", "CBM", "CHB", "MV", "PC", "KSC")

MEASURE_NAMES = {
    "COMM": "Comm Centrality",
    "CBC": "Community-based Centrality",
    "CBM": "Community-based Mediator",
    "CHB": "Community Hub-Bridge",
    "MV": "Modularity Vitality",
    "PC": "Participation Coefficient",
    "KSC": "K-shell with Community",
}


@dataclass(frozen=True, eq=False)
class CentralityScores:
    measure: str
    values: np.ndarray
    params: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Ranking:
    order: np.ndarray
    scores: CentralityScores

    @property
    def positions(self) -> np.ndarray:
        """1-based rank of every node."""
        pos = np.empty(len(self.order), dtype=np.int64)
        pos[self.order] = np.arange(1, len(self.order) + 1)
        return pos


def _safe_ratio(num, den) -> np.ndarray:
    num = np.asarray(num, dtype=np.float64)
    den = np.asarray(den, dtype=np.float64)
    return np.divide(num, den, out=np.zeros_like(num), where=den != 0)


def comm_centrality(g: Graph, p: Partition, census: LinkCensus, R: float = 1.0) -> CentralityScores:
    """Hub term on intra links plus a squared bridge term on inter links.

    Both link counts are normalised by their maximum inside the node's own
    community; a zero maximum zeroes the corresponding term.
    """
    if not R > 0:
        raise ParameterError(f"R must be positive, got {R}")
    nc = p.n_communities
    max_intra = np.zeros(nc, dtype=np.int64)
    max_inter = np.zeros(nc, dtype=np.int64)
    np.maximum.at(max_intra, p.assignment, census.intra)
    np.maximum.at(max_inter, p.assignment, census.inter)
    mu = census.mixing[p.assignment]
    hub = _safe_ratio(census.intra, max_intra[p.assignment]) * R
    bridge = _safe_ratio(census.inter, max_inter[p.assignment]) * R
    values = (1 + mu) * hub + (1 - mu) * bridge ** 2
    return CentralityScores("COMM", values, {"R": R})


def community_based_centrality(g: Graph, p: Partition, census: LinkCensus) -> CentralityScores:
    weights = p.sizes / g.n_nodes
    values = np.asarray(census.per_community @ weights, dtype=np.float64).ravel()
    return CentralityScores("CBC", values)


def community_based_mediator(g: Graph, p: Partition, census: LinkCensus) -> CentralityScores:
    """Entropy of the intra/inter split, weighted by the node's share of all degree.

    Natural logarithm, ``0 ln 0 = 0``.
    """
    k = g.degrees
    entropy = np.zeros(g.n_nodes)
    for part in (census.intra, census.inter):
        rho = _safe_ratio(part, k)
        nz = rho > 0
        entropy[nz] -= rho[nz] * np.log(rho[nz])
    total = k.sum()
    values = entropy * k / total if total else np.zeros(g.n_nodes)
    return CentralityScores("CBM", values)


def community_hub_bridge(g: Graph, p: Partition, census: LinkCensus) -> CentralityScores:
    own_size = p.sizes[p.assignment]
    values = (own_size * census.intra + census.neighbor_communities * census.inter).astype(np.float64)
    return CentralityScores("CHB", values)


def modularity_vitality(g: Graph, p: Partition, census: LinkCensus | None = None, signed: bool = False) -> CentralityScores:
    """Change in modularity when each node (and its edges) is removed.

    Absolute value by default. Updates the community totals incrementally,
    in exact integer arithmetic, instead of recomputing modularity N times.
    Nodes whose removal leaves no edge get ``M(G_i) = 0`` and are listed in
    ``params["empty_after_removal"]``.
    """
    if census is None:
        census = link_census(g, p)
    m = g.n_edges
    if m == 0:
        raise UndefinedStatsError("modularity vitality needs at least one edge")
    l, d = community_totals(g, p)
    l_total = int(l.sum())
    d = d.tolist()
    sq_total = sum(x * x for x in d)
    base = l_total / m - sq_total / (4.0 * m * m)

    kic = census.per_community
    indptr, cols, data = kic.indptr.tolist(), kic.indices.tolist(), kic.data.tolist()
    deg = g.degrees.tolist()
    intra = census.intra.tolist()
    assign = p.assignment.tolist()
    values = np.empty(g.n_nodes)
    emptied = []
    for i in range(g.n_nodes):
        m_i = m - deg[i]
        if m_i == 0:
            values[i] = 0.0 - base
            emptied.append(i)
            continue
        own = assign[i]
        sq = sq_total
        own_touched = False
        for j in range(indptr[i], indptr[i + 1]):
            c, cnt = cols[j], data[j]
            if c == own:
                new = d[c] - deg[i] - cnt
                own_touched = True
            else:
                new = d[c] - cnt
            sq += new * new - d[c] * d[c]
        if not own_touched:
            new = d[own] - deg[i]
            sq += new * new - d[own] * d[own]
        values[i] = (l_total - intra[i]) / m_i - sq / (4.0 * m_i * m_i) - base
    if not signed:
        values = np.abs(values)
    return CentralityScores("MV", values, {"signed": signed, "empty_after_removal": emptied})


def participation_coefficient(g: Graph, p: Partition, census: LinkCensus) -> CentralityScores:
    kic = census.per_community
    sq = np.asarray(kic.multiply(kic).sum(axis=1), dtype=np.float64).ravel()
    k = g.degrees.astype(np.float64)
    values = np.zeros(g.n_nodes)
    nz = k > 0
    values[nz] = 1.0 - sq[nz] / (k[nz] * k[nz])
    return CentralityScores("PC", values)


def kshell_with_community(g: Graph, p: Partition, delta: float = 0.5) -> CentralityScores:
    """Weighted mix of the k-shell index on intra-only and inter-only subgraphs."""
    if not 0.0 <= delta <= 1.0:
        raise ParameterError(f"delta must lie in [0, 1], got {delta}")
    e = g.edges
    same = p.assignment[e[:, 0]] == p.assignment[e[:, 1]]
    beta_intra = k_core_decomposition(g.edge_subgraph(same))
    beta_inter = k_core_decomposition(g.edge_subgraph(~same))
    values = delta * beta_intra + (1 - delta) * beta_inter
    return CentralityScores("KSC", values.astype(np.float64), {"delta": delta})


def compute_measure(measure: str, g: Graph, p: Partition, census: LinkCensus | None = None,
                    R: float = 1.0, delta: float = 0.5) -> CentralityScores:
    if census is None:
        census = link_census(g, p)
    if measure == "COMM":
        return comm_centrality(g, p, census, R)
    if measure == "CBC":
        return community_based_centrality(g, p, census)
    if measure == "CBM":
        return community_based_mediator(g, p, census)
    if measure == "CHB":
        return community_hub_bridge(g, p, census)
    if measure == "MV":
        return modularity_vitality(g, p, census)
    if measure == "PC":
        return participation_coefficient(g, p, census)
    if measure == "KSC":
        return kshell_with_community(g, p, delta)
    raise ParameterError(f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}")


def rank(scores: CentralityScores) -> Ranking:
    """Descending order of scores; equal scores keep ascending node order."""
    values = np.asarray(scores.values, dtype=np.float64)
    if not np.isfinite(values).all():
        raise ParameterError(f"{scores.measure}: scores must be finite")
    order = np.argsort(-values, kind="stable")
    return Ranking(order, scores)


def write_scores_csv(path, g: Graph, rankings, metadata: dict | None = None) -> None:
    """``node_label,measure,score,rank`` rows, preceded by ``# key=value`` lines.

    ``path`` may also be an open text stream.
    """
    if hasattr(path, "write"):
        _write_scores(path, g, rankings, metadata)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        _write_scores(fh, g, rankings, metadata)


def _write_scores(fh, g, rankings, metadata):
    for key, val in (metadata or {}).items():
        fh.write(f"# {key}={val}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["node_label", "measure", "score", "rank"])
    for r in rankings:
        pos = r.positions
        for i in range(g.n_nodes):
            w.writerow([g.labels[i], r.scores.measure, repr(float(r.scores.values[i])), int(pos[i])])
