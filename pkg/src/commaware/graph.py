"""Undirected simple graphs: loading, components, summary statistics, k-cores.

Graphs are stored in compressed sparse row form with dense node indices
``0..N-1``. The original string labels are kept alongside so results can be
reported in the labels found in the input file.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Sequence, Union

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from commaware.errors import EmptyGraphError, ParseError, UndefinedStatsError

logger = logging.getLogger(__name__)

Source = Union[str, os.PathLike, IO[str], IO[bytes]]

_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph in CSR form.

    ``indices[indptr[i]:indptr[i+1]]`` are the neighbors of node ``i`` in
    ascending order.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple

    @classmethod
    def from_edges(cls, n_nodes: int, edges, labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph from an ``(E, 2)`` integer array.

        Self-loops are dropped and duplicate or reversed edges collapsed.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if labels is None:
            labels = [str(i) for i in range(n_nodes)]
        if len(labels) != n_nodes:
            raise ValueError("labels must have one entry per node")
        if edges.size and (edges.min() < 0 or edges.max() >= n_nodes):
            raise ValueError("edge endpoint out of range")
        edges = edges[edges[:, 0] != edges[:, 1]]
        both = np.concatenate([edges, edges[:, ::-1]])
        if both.size:
            both = np.unique(both, axis=0)
        rows, cols = both[:, 0], both[:, 1]
        indptr = np.zeros(n_nodes + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        # np.unique sorts lexicographically, so each row's columns are ascending
        indices = np.ascontiguousarray(cols, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        return cls(indptr, indices, tuple(str(x) for x in labels))

    @property
    def n_nodes(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        return deg

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @cached_property
    def adjacency(self) -> sparse.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int64)
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n_nodes, self.n_nodes))

    @cached_property
    def edges(self) -> np.ndarray:
        """Each undirected edge once, as ``(u, v)`` with ``u < v``."""
        rows = np.repeat(np.arange(self.n_nodes), self.degrees)
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    @cached_property
    def label_index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    def subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph on ``nodes``, re-indexed in ascending original order."""
        nodes = np.unique(np.asarray(list(nodes), dtype=np.int64))
        remap = np.full(self.n_nodes, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        e = self.edges
        keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
        return Graph.from_edges(len(nodes), remap[e[keep]], [self.labels[i] for i in nodes])

    def edge_subgraph(self, mask: np.ndarray) -> "Graph":
        """Same node set, keeping only the edges of ``self.edges`` selected by ``mask``."""
        return Graph.from_edges(self.n_nodes, self.edges[mask], self.labels)


def _read_text(source: Source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def load_edge_list(source: Source, comment: str = "#") -> Graph:
    """Read a whitespace- or comma-separated edge list.

    Node labels are indexed in order of first appearance. Tokens after the
    second are ignored (a warning is logged once).
    """
    label_index: dict[str, int] = {}
    edges = []
    warned = False
    for lineno, raw in enumerate(io.StringIO(_read_text(source)), start=1):
        line = raw.strip()
        if not line or line.startswith(comment) or line.startswith("%"):
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        if len(tokens) < 2:
            raise ParseError(f"expected two node labels, got {line!r}", lineno)
        if len(tokens) > 2 and not warned:
            logger.warning("ignoring extra columns (weights/timestamps) from line %d on", lineno)
            warned = True
        ids = []
        for tok in tokens[:2]:
            if tok not in label_index:
                label_index[tok] = len(label_index)
            ids.append(label_index[tok])
        edges.append(ids)
    if not label_index:
        raise EmptyGraphError("edge list contains no edges")
    return Graph.from_edges(len(label_index), edges, list(label_index))


def write_label_map(g: Graph, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "index"])
        for i, label in enumerate(g.labels):
            w.writerow([label, i])


def connected_components(g: Graph) -> np.ndarray:
    """Component id per node; ids are ordered by each component's smallest node."""
    _, comp = csgraph.connected_components(g.adjacency, directed=False)
    # relabel so that component ids follow first occurrence in node order
    _, first = np.unique(comp, return_index=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    return relabel[comp]


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component.

    Equal-size components are resolved in favour of the one holding the
    smallest node index.
    """
    if g.n_nodes == 0:
        raise EmptyGraphError("graph has no nodes")
    comp = connected_components(g)
    sizes = np.bincount(comp)
    best = int(np.argmax(sizes))  # first maximum == smallest-index component
    if sizes[best] == g.n_nodes:
        return g
    return g.subgraph(np.flatnonzero(comp == best))


@dataclass(frozen=True)
class NetworkStats:
    n_nodes: int
    n_edges: int
    avg_degree: float
    avg_distance: float
    density: float
    transitivity: float
    assortativity: float

    def as_row(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "avg_degree": self.avg_degree,
            "avg_distance": self.avg_distance,
            "density": self.density,
            "transitivity": self.transitivity,
            "assortativity": self.assortativity,
        }


def average_distance(g: Graph, chunk: int = 256) -> float:
    """Mean shortest-path length over unordered pairs, by BFS from every node.

    Costs O(N * |E|) time; sources are processed in blocks to bound memory.
    """
    n = g.n_nodes
    total = 0.0
    adj = g.adjacency
    for start in range(0, n, chunk):
        src = np.arange(start, min(start + chunk, n))
        d = csgraph.shortest_path(adj, directed=False, unweighted=True, indices=src)
        if np.isinf(d).any():
            raise UndefinedStatsError("average distance needs a connected graph")
        total += d.sum()
    return total / (n * (n - 1))


def transitivity(g: Graph) -> float:
    """3 * triangles / connected triples."""
    a = g.adjacency
    closed = (a @ a).multiply(a).sum()  # = 6 * triangles
    k = g.degrees.astype(np.float64)
    triples = (k * (k - 1) / 2).sum()
    if triples == 0:
        return 0.0
    return float(closed / 2 / triples)


def degree_assortativity(g: Graph) -> float:
    """Pearson correlation of the degrees at either end of an edge.

    Both orientations of each edge are counted. Returns NaN when every edge
    joins nodes of equal degree (zero variance).
    """
    e = g.edges
    k = g.degrees.astype(np.float64)
    x = np.concatenate([k[e[:, 0]], k[e[:, 1]]])
    y = np.concatenate([k[e[:, 1]], k[e[:, 0]]])
    xm = x - x.mean()
    ym = y - y.mean()
    denom = np.sqrt((xm * xm).sum() * (ym * ym).sum())
    if denom == 0:
        return float("nan")
    return float((xm * ym).sum() / denom)


def network_stats(g: Graph) -> NetworkStats:
    n, m = g.n_nodes, g.n_edges
    if n < 2:
        raise UndefinedStatsError("statistics need at least two nodes")
    return NetworkStats(
        n_nodes=n,
        n_edges=m,
        avg_degree=2.0 * m / n,
        avg_distance=float(average_distance(g)),
        density=2.0 * m / (n * (n - 1)),
        transitivity=transitivity(g),
        assortativity=degree_assortativity(g),
    )


def k_core_decomposition(g: Graph) -> np.ndarray:
    """Shell index of every node (bucket peeling, O(N + |E|)).

    Works on disconnected graphs; isolated nodes get shell 0.
    """
    n = g.n_nodes
    deg = g.degrees.astype(np.int64).tolist()
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    max_deg = max(deg)
    # bin sort nodes by current degree
    bin_start = [0] * (max_deg + 2)
    for d in deg:
        bin_start[d + 1] += 1
    for d in range(1, max_deg + 2):
        bin_start[d] += bin_start[d - 1]
    pos = [0] * n
    order = [0] * n
    fill = bin_start[:]
    for v in range(n):
        pos[v] = fill[deg[v]]
        order[pos[v]] = v
        fill[deg[v]] += 1
    for i in range(n):
        v = order[i]
        dv = deg[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            du = deg[u]
            if du > dv:
                # swap u to the front of its bin, then shrink its degree
                pw = bin_start[du]
                w = order[pw]
                if w != u:
                    pu = pos[u]
                    order[pu], order[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bin_start[du] += 1
                deg[u] = du - 1
    return np.asarray(deg, dtype=np.int64)
