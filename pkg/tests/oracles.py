"""Naive, formula-literal reference implementations used as test oracles.

Everything here works on plain dicts/sets and loops and shares no code with
the package beyond reading ``Graph.edges`` and ``Partition.assignment``.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque

import numpy as np

from commaware.community import Partition
from commaware.graph import Graph


def adjacency(g: Graph) -> dict:
    adj = {i: set() for i in range(g.n_nodes)}
    for u, v in g.edges.tolist():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def random_graph(rng: random.Random, n_max=50, connected=False) -> Graph:
    n = rng.randint(2, n_max)
    p = rng.uniform(0.02, 0.5)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for a in range(1, n):
            edges.append((order[a], order[rng.randrange(a)]))
    return Graph.from_edges(n, edges)


def random_partition(rng: random.Random, n: int) -> Partition:
    nc = rng.randint(1, max(1, min(n, 8)))
    return Partition.from_labels([rng.randrange(nc) for _ in range(n)])


# -- graph-core ---------------------------------------------------------------

def peel_shells(adj: dict) -> dict:
    """Shell index by literal peeling: at level s, repeatedly delete nodes of degree <= s."""
    alive = {v: set(nb) for v, nb in adj.items()}
    shell = {}
    s = 0
    while alive:
        changed = True
        while changed:
            changed = False
            for v in [v for v, nb in alive.items() if len(nb) <= s]:
                shell[v] = s
                for u in alive[v]:
                    alive[u].discard(v)
                del alive[v]
                changed = True
        s += 1
    return shell


def bfs_distances(adj: dict, src: int) -> dict:
    dist = {src: 0}
    q = deque([src])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def avg_distance(adj: dict) -> float:
    nodes = sorted(adj)
    total, pairs = 0, 0
    for a, b in itertools.combinations(nodes, 2):
        total += bfs_distances(adj, a)[b]
        pairs += 1
    return total / pairs


def transitivity(adj: dict) -> float:
    tri = sum(1 for a, b, c in itertools.combinations(sorted(adj), 3)
              if b in adj[a] and c in adj[a] and c in adj[b])
    triples = sum(len(nb) * (len(nb) - 1) / 2 for nb in adj.values())
    return 3 * tri / triples if triples else 0.0


def assortativity(adj: dict) -> float:
    xs, ys = [], []
    for v, nb in adj.items():
        for u in nb:
            xs.append(len(adj[v]))
            ys.append(len(adj[u]))
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    return cov / math.sqrt(vx * vy)


# -- community ----------------------------------------------------------------

def naive_modularity(adj: dict, comm: dict) -> float:
    m = sum(len(nb) for nb in adj.values()) / 2
    total = 0.0
    for q in set(comm.values()):
        members = [v for v in adj if comm[v] == q]
        l_q = sum(1 for v in members for u in adj[v] if comm[u] == q) / 2
        d_q = sum(len(adj[v]) for v in members)
        total += l_q / m - (d_q / (2 * m)) ** 2
    return total


def census(adj: dict, comm: dict):
    """Per node: (k_intra, k_inter, {community: k_ic}, #foreign neighbor communities)."""
    out = {}
    for v, nb in adj.items():
        kic = {}
        for u in nb:
            kic[comm[u]] = kic.get(comm[u], 0) + 1
        intra = kic.get(comm[v], 0)
        foreign = {comm[u] for u in nb if comm[u] != comm[v]}
        out[v] = (intra, len(nb) - intra, kic, len(foreign))
    return out


# -- centralities -------------------------------------------------------------

def ref_comm(adj, comm, R=1.0):
    c = census(adj, comm)
    groups = {}
    for v in adj:
        groups.setdefault(comm[v], []).append(v)
    out = {}
    for v in adj:
        q = groups[comm[v]]
        mu = sum((c[i][1] / len(adj[i]) if adj[i] else 0.0) for i in q) / len(q)
        max_intra = max(c[j][0] for j in q)
        max_inter = max(c[j][1] for j in q)
        hub = (c[v][0] / max_intra * R) if max_intra else 0.0
        bridge = (c[v][1] / max_inter * R) if max_inter else 0.0
        out[v] = (1 + mu) * hub + (1 - mu) * bridge ** 2
    return out


def ref_cbc(adj, comm):
    n = len(adj)
    size = {q: sum(1 for v in adj if comm[v] == q) for q in set(comm.values())}
    return {v: sum(k * size[q] / n for q, k in census(adj, comm)[v][2].items()) for v in adj}


def ref_cbm(adj, comm, log=math.log):
    c = census(adj, comm)
    total = sum(len(nb) for nb in adj.values())
    out = {}
    for v in adj:
        k = len(adj[v])
        if k == 0:
            out[v] = 0.0
            continue
        h = 0.0
        for part in (c[v][0], c[v][1]):
            rho = part / k
            if rho > 0:
                h -= rho * log(rho)
        out[v] = h * k / total
    return out


def ref_chb(adj, comm):
    c = census(adj, comm)
    size = {q: sum(1 for v in adj if comm[v] == q) for q in set(comm.values())}
    return {v: size[comm[v]] * c[v][0] + c[v][3] * c[v][1] for v in adj}


def ref_mv(adj, comm, signed=False):
    base = naive_modularity(adj, comm)
    out = {}
    for v in adj:
        rest = {u: nb - {v} for u, nb in adj.items() if u != v}
        if sum(len(nb) for nb in rest.values()) == 0:
            after = 0.0
        else:
            after = naive_modularity(rest, {u: comm[u] for u in rest})
        out[v] = after - base if signed else abs(after - base)
    return out


def ref_pc(adj, comm):
    out = {}
    for v, (_, _, kic, _) in census(adj, comm).items():
        k = len(adj[v])
        out[v] = 1 - sum((x / k) ** 2 for x in kic.values()) if k else 0.0
    return out


def ref_ksc(adj, comm, delta=0.5):
    intra = {v: {u for u in nb if comm[u] == comm[v]} for v, nb in adj.items()}
    inter = {v: {u for u in nb if comm[u] != comm[v]} for v, nb in adj.items()}
    bi, be = peel_shells(intra), peel_shells(inter)
    return {v: delta * bi[v] + (1 - delta) * be[v] for v in adj}


REFERENCE = {"COMM": ref_comm, "CBC": ref_cbc, "CBM": ref_cbm, "CHB": ref_chb, "MV": ref_mv,
             "PC": ref_pc, "KSC": ref_ksc}


# -- diffusion ----------------------------------------------------------------

def lt_fixpoint(adj: dict, seeds, theta) -> set:
    """Iterate the activation rule over every node until nothing changes."""
    active = set(seeds)
    while True:
        new = {v for v in adj if v not in active and adj[v]
               and sum(1 for u in adj[v] if u in active) / len(adj[v]) >= theta[v]}
        if not new:
            return active
        active |= new


# -- voting -------------------------------------------------------------------

def widest_paths_bruteforce(M: np.ndarray) -> np.ndarray:
    """Max over every simple path of the minimum margin along it."""
    n = len(M)
    st = np.zeros_like(M)
    for d in range(n):
        for e in range(n):
            if d == e:
                continue
            best = None
            others = [x for x in range(n) if x not in (d, e)]
            for r in range(len(others) + 1):
                for mid in itertools.permutations(others, r):
                    path = (d, *mid, e)
                    s = min(M[a, b] for a, b in zip(path, path[1:]))
                    best = s if best is None else max(best, s)
            st[d, e] = best
    return st


def condorcet_winner(ballots, candidates):
    """Candidate strictly preferred to every other by more ballots than the reverse."""
    for c in candidates:
        wins = True
        for d in candidates:
            if d == c:
                continue
            pro = sum(1 for b in ballots if b.positions()[c] < b.positions()[d])
            con = sum(1 for b in ballots if b.positions()[d] < b.positions()[c])
            if pro <= con:
                wins = False
                break
        if wins:
            return c
    return None
