import io
import random

import networkx as nx
import numpy as np
import pytest

from commaware.community import (
    Partition,
    community_totals,
    detect_label_propagation,
    link_census,
    load_partition,
    modularity,
)
from commaware.errors import PartitionError, UndefinedStatsError
from commaware.graph import Graph, load_edge_list

from oracles import adjacency, census, naive_modularity, random_graph, random_partition


def path4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])


class TestLoadPartition:
    g = load_edge_list(io.StringIO("a b\nb c\n"))

    def test_basic(self):
        p = load_partition(io.StringIO("a 0\nb 0\nc 1\n"), self.g)
        assert p.n_communities == 2
        assert p.sizes.tolist() == [2, 1]

    def test_single_token(self):
        assert load_partition(io.StringIO("a z\nb z\nc z\n"), self.g).n_communities == 1

    def test_renumbering(self):
        p = load_partition(io.StringIO("# comment\na x\nb y\nc x\n"), self.g)
        assert p.assignment.tolist() == [0, 1, 0]

    def test_unknown_label(self):
        with pytest.raises(PartitionError, match="unknown node label 'd'"):
            load_partition(io.StringIO("a 0\nb 0\nc 1\nd 1\n"), self.g)

    def test_unknown_label_ignored_on_request(self):
        p = load_partition(io.StringIO("a 0\nb 0\nc 1\nd 1\n"), self.g, unknown="ignore")
        assert p.n_communities == 2

    def test_missing_nodes_listed(self):
        with pytest.raises(PartitionError, match="missing.*c"):
            load_partition(io.StringIO("a 0\nb 0\n"), self.g)

    def test_conflicting_assignment(self):
        with pytest.raises(PartitionError):
            load_partition(io.StringIO("a 0\na 1\nb 0\nc 0\n"), self.g)


class TestFingerprint:
    def test_stable_and_sensitive(self):
        a = Partition.from_labels([0, 0, 1, 1])
        assert a.fingerprint() == Partition.from_labels(["x", "x", "y", "y"]).fingerprint()
        assert a.fingerprint() != Partition.from_labels([0, 1, 1, 1]).fingerprint()
        assert len(a.fingerprint()) == 16


class TestLabelPropagation:
    def test_two_triangles(self):
        g = two_triangles()
        p = detect_label_propagation(g, rng_seed=0)
        assert p.sizes.sum() == 6
        assert modularity(g, p) > 0

    def test_k5_single_community(self):
        g = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
        for seed in range(5):
            assert detect_label_propagation(g, seed).n_communities == 1

    def test_deterministic_and_valid(self):
        rng = random.Random(1)
        for _ in range(20):
            g = random_graph(rng, 40, connected=True)
            p = detect_label_propagation(g, 42)
            q = detect_label_propagation(g, 42)
            assert np.array_equal(p.assignment, q.assignment)
            assert p.sizes.sum() == g.n_nodes and (p.sizes > 0).all()

    def test_finds_planted_blocks(self):
        G = nx.planted_partition_graph(4, 25, 0.5, 0.01, seed=3)
        g = Graph.from_edges(100, list(G.edges()))
        p = detect_label_propagation(g, 0)
        truth = Partition.from_labels([v // 25 for v in range(100)])
        assert modularity(g, p) == pytest.approx(modularity(g, truth), abs=0.05)


class TestCensus:
    def test_path_example(self):
        c = link_census(path4(), Partition.from_labels([0, 0, 1, 1]))
        assert (c.intra[1], c.inter[1], c.neighbor_communities[1]) == (1, 1, 1)
        assert c.mixing.tolist() == [0.25, 0.25]

    def test_single_community(self):
        g = two_triangles()
        c = link_census(g, Partition.from_labels([0] * 6))
        assert (c.inter == 0).all()
        assert (c.mixing == 0).all()

    def test_isolated_node_mixing_term_is_zero(self):
        g = Graph.from_edges(3, [(0, 1)])
        c = link_census(g, Partition.from_labels([0, 1, 1]))
        assert c.mixing.tolist() == [1.0, 0.5]

    def test_matches_direct_count(self):
        rng = random.Random(5)
        for _ in range(500):
            g = random_graph(rng, 30)
            p = random_partition(rng, g.n_nodes)
            c = link_census(g, p)
            comm = dict(enumerate(p.assignment.tolist()))
            ref = census(adjacency(g), comm)
            kic = c.per_community.toarray()
            for v in range(g.n_nodes):
                intra, inter, per, foreign = ref[v]
                assert (c.intra[v], c.inter[v], c.neighbor_communities[v]) == (intra, inter, foreign)
                assert kic[v, comm[v]] == c.intra[v]
                assert kic[v].sum() == g.degrees[v]
                assert {q: kic[v, q] for q in np.flatnonzero(kic[v])} == per
            assert ((0 <= c.mixing) & (c.mixing <= 1)).all()


class TestModularity:
    def test_single_community_is_zero(self):
        g = two_triangles()
        assert modularity(g, Partition.from_labels([0] * 6)) == pytest.approx(0.0, abs=1e-15)

    def test_path_example(self):
        assert modularity(path4(), Partition.from_labels([0, 0, 1, 1])) == pytest.approx(1 / 6)

    def test_singletons_on_triangle(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert modularity(g, Partition.from_labels([0, 1, 2])) == pytest.approx(-1 / 3)

    def test_no_edges(self):
        with pytest.raises(UndefinedStatsError):
            modularity(Graph.from_edges(2, []), Partition.from_labels([0, 1]))

    def test_random_against_oracles(self):
        rng = random.Random(9)
        for _ in range(200):
            g = random_graph(rng, 40)
            if g.n_edges == 0:
                continue
            p = random_partition(rng, g.n_nodes)
            comm = dict(enumerate(p.assignment.tolist()))
            M = modularity(g, p)
            assert M == pytest.approx(naive_modularity(adjacency(g), comm), abs=1e-12)
            assert -1 <= M <= 1
            l, d = community_totals(g, p)
            cross = sum(1 for u, v in g.edges.tolist() if comm[u] != comm[v])
            assert l.sum() + cross == g.n_edges
            assert d.sum() == 2 * g.n_edges

    def test_agrees_with_networkx(self):
        G = nx.karate_club_graph()
        g = Graph.from_edges(34, list(G.edges()))
        p = Partition.from_labels([G.nodes[v]["club"] for v in range(34)])
        groups = [set(p.members(c).tolist()) for c in range(p.n_communities)]
        assert modularity(g, p) == pytest.approx(nx.community.modularity(G, groups, weight=None))
