"""Community partitions, the per-node link census, and modularity."""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy import sparse

from commaware.errors import PartitionError, UndefinedStatsError
from commaware.graph import Graph, Source, _read_text


@dataclass(frozen=True, eq=False)
class Partition:
    """Hard assignment of every node to one of ``n_communities`` communities."""

    assignment: np.ndarray

    @classmethod
    def from_labels(cls, tokens: Sequence) -> "Partition":
        """Renumber arbitrary community tokens densely in first-appearance order."""
        ids: dict = {}
        out = np.empty(len(tokens), dtype=np.int64)
        for i, tok in enumerate(tokens):
            out[i] = ids.setdefault(tok, len(ids))
        out.setflags(write=False)
        return cls(out)

    @property
    def n_nodes(self) -> int:
        return len(self.assignment)

    @cached_property
    def n_communities(self) -> int:
        return int(self.assignment.max()) + 1 if len(self.assignment) else 0

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.n_communities)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == c)

    def fingerprint(self) -> str:
        """Stable 64-bit hex digest of the assignment.

        BLAKE2b (8-byte digest) over the little-endian int64 pairs
        ``(node_index, community_id)`` in ascending node order.
        """
        pairs = np.column_stack([np.arange(self.n_nodes, dtype="<i8"), self.assignment.astype("<i8")])
        return hashlib.blake2b(pairs.tobytes(), digest_size=8).hexdigest()


def load_partition(source: Source, g: Graph, unknown: str = "error") -> Partition:
    """Read ``label community`` lines and map them onto the nodes of ``g``.

    ``unknown="ignore"`` skips labels that are not in ``g`` (useful when the
    partition was computed on the full network and ``g`` is its largest
    component).
    """
    index = g.label_index
    tokens: list = [None] * g.n_nodes
    for lineno, raw in enumerate(io.StringIO(_read_text(source)), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) < 2:
            raise PartitionError(f"line {lineno}: expected 'label community', got {line!r}")
        label, tok = parts[0], parts[1]
        i = index.get(label)
        if i is None:
            if unknown == "ignore":
                continue
            raise PartitionError(f"line {lineno}: unknown node label {label!r}")
        if tokens[i] is not None and tokens[i] != tok:
            raise PartitionError(f"line {lineno}: node {label!r} assigned to two communities")
        tokens[i] = tok
    missing = [g.labels[i] for i, t in enumerate(tokens) if t is None]
    if missing:
        shown = ", ".join(missing[:20]) + (" ..." if len(missing) > 20 else "")
        raise PartitionError(f"{len(missing)} node(s) missing from partition: {shown}")
    return Partition.from_labels(tokens)


def write_partition(g: Graph, p: Partition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for label, c in zip(g.labels, p.assignment.tolist()):
            fh.write(f"{label} {c}\n")


def detect_label_propagation(g: Graph, rng_seed: int = 0, max_sweeps: int = 100) -> Partition:
    """Asynchronous label propagation.

    Each sweep visits the nodes in a seeded random order; a node takes the
    most frequent label among its neighbors, the smallest label on ties.
    Stops when a sweep changes nothing or after ``max_sweeps`` sweeps.
    Not a substitute for Infomap; meant for smoke tests and demos.
    """
    rng = np.random.default_rng(rng_seed)
    labels = list(range(g.n_nodes))
    adj = [g.neighbors(v).tolist() for v in range(g.n_nodes)]
    for _ in range(max_sweeps):
        changed = False
        for v in rng.permutation(g.n_nodes).tolist():
            nbrs = adj[v]
            if not nbrs:
                continue
            counts: dict[int, int] = {}
            for u in nbrs:
                lab = labels[u]
                counts[lab] = counts.get(lab, 0) + 1
            top = max(counts.values())
            best = min(lab for lab, c in counts.items() if c == top)
            if best != labels[v]:
                labels[v] = best
                changed = True
        if not changed:
            break
    return Partition.from_labels(labels)


@dataclass(frozen=True, eq=False)
class LinkCensus:
    """Decomposition of each node's degree by community.

    ``per_community`` is a sparse ``N x N_c`` matrix whose entry ``(i, c)``
    counts the neighbors of ``i`` inside community ``c``.
    """

    intra: np.ndarray
    inter: np.ndarray
    per_community: sparse.csr_matrix
    neighbor_communities: np.ndarray
    mixing: np.ndarray


def link_census(g: Graph, p: Partition) -> LinkCensus:
    if p.n_nodes != g.n_nodes:
        raise PartitionError("partition does not cover the graph")
    n, nc = g.n_nodes, p.n_communities
    rows = np.repeat(np.arange(n), g.degrees)
    cols = p.assignment[g.indices]
    kic = sparse.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, nc))
    kic.sum_duplicates()
    kic.sort_indices()
    intra = np.asarray(kic[np.arange(n), p.assignment]).ravel().astype(np.int64)
    k = g.degrees
    inter = k - intra
    # distinct communities touched by i, minus its own when it has intra links
    touched = np.diff(kic.indptr)
    neighbor_comms = touched - (intra > 0)
    ratio = np.divide(inter, k, out=np.zeros(n), where=k > 0)
    mixing = np.bincount(p.assignment, weights=ratio, minlength=nc) / p.sizes
    return LinkCensus(intra, inter, kic, neighbor_comms.astype(np.int64), mixing)


def community_totals(g: Graph, p: Partition) -> tuple[np.ndarray, np.ndarray]:
    """Intra-edge count ``l_q`` and degree total ``d_q`` per community (int64)."""
    e = g.edges
    ca, cb = p.assignment[e[:, 0]], p.assignment[e[:, 1]]
    same = ca == cb
    l = np.bincount(ca[same], minlength=p.n_communities).astype(np.int64)
    d = np.bincount(p.assignment, weights=g.degrees, minlength=p.n_communities).astype(np.int64)
    return l, d


def modularity(g: Graph, p: Partition) -> float:
    """Newman-Girvan modularity ``sum_q [l_q/m - (d_q/2m)^2]``."""
    m = g.n_edges
    if m == 0:
        raise UndefinedStatsError("modularity is undefined without edges")
    l, d = community_totals(g, p)
    return float(l.sum() / m - (d.astype(np.float64) ** 2).sum() / (4.0 * m * m))
