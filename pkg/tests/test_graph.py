from __future__ import annotations

import math
import random

import networkx as nx
import pytest

from ncgcover.graph import (NotSemiregular, build_graph, from_graph6, fundamental_cycles,
                            is_isomorphism, isomorphic_small, predicates, quotient_by,
                            read_edge_list, spanning_tree, to_graph6, write_edge_list)
from ncgcover.perm import GeneratedGroup, Permutation
from ncgcover.voltage import (PINNED_COTREE, PINNED_TREE, U, k33, ncg_spanning, pappus_graph,
                              translations, walk_to_names)

PAPPUS_G6 = "Q??????aQHEOcGQ_CgCK?SO?g_?"


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(rng, n, density):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density])


class TestBuild:
    def test_k33(self):
        g = k33()
        assert g.vertex_count == 6 and all(g.degree(v) == 3 for v in range(6))
        assert g.edge_count == 9

    def test_single_vertex(self):
        g = build_graph(1, [])
        assert g.vertex_count == 1 and g.edge_count == 0

    @pytest.mark.parametrize("edges", [[(0, 1), (1, 0)], [(0, 0)], [(0, 5)]])
    def test_rejects(self, edges):
        with pytest.raises(ValueError):
            build_graph(3, edges)

    def test_sorted_adjacency(self):
        g = build_graph(4, [(3, 0), (0, 1), (2, 0)])
        assert g.neighbors(0) == (1, 2, 3)


class TestPredicates:
    def test_k33(self):
        pr = predicates(k33())
        assert pr.is_cubic and pr.is_connected and pr.is_bipartite and pr.girth == 4
        assert sorted(map(sorted, pr.parts)) == [[0, 1, 2], [3, 4, 5]]

    def test_single_edge(self):
        pr = predicates(build_graph(2, [(0, 1)]))
        assert pr.girth == math.inf and not pr.is_cubic

    def test_odd_cycle(self):
        pr = predicates(cycle(5))
        assert not pr.is_bipartite and pr.parts is None and pr.girth == 5

    def test_ncg7(self, cover7):
        g = cover7.graph
        pr = predicates(g)
        assert g.vertex_count == 6174 and g.edge_count == 9261
        assert pr.is_cubic and pr.is_connected and pr.is_bipartite
        assert [len(p) for p in pr.parts] == [3087, 3087]

    @pytest.mark.parametrize("seed", range(10))
    def test_against_networkx(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(2, 25), rng.uniform(0.05, 0.4))
        h = nx.Graph()
        h.add_nodes_from(range(g.vertex_count))
        h.add_edges_from(g.edges())
        pr = predicates(g)
        assert pr.is_connected == nx.is_connected(h)
        assert pr.is_bipartite == nx.is_bipartite(h)
        assert pr.girth == nx.girth(h)


class TestSpanning:
    def test_pinned_k33(self):
        sp = ncg_spanning()
        assert tuple(sp.cotree_arcs) == PINNED_COTREE
        assert sorted(sp.tree_edges) == sorted(PINNED_TREE)

    def test_tree_graph(self):
        g = build_graph(4, [(0, 1), (1, 2), (1, 3)])
        sp = spanning_tree(g, 0)
        assert len(sp.cotree_arcs) == 0 and fundamental_cycles(g, sp) == []

    def test_c6(self):
        assert len(spanning_tree(cycle(6), 0).cotree_arcs) == 1

    def test_disconnected(self):
        with pytest.raises(ValueError):
            spanning_tree(build_graph(4, [(0, 1), (2, 3)]), 0)

    def test_cotree_count(self):
        rng = random.Random(5)
        for _ in range(10):
            g = random_graph(rng, 15, 0.4)
            if predicates(g).is_connected:
                sp = spanning_tree(g, 0)
                assert len(sp.cotree_arcs) == g.edge_count - g.vertex_count + 1
                assert len(sp.tree_edges) == g.vertex_count - 1

    def test_fundamental_walks(self):
        g = k33()
        walks = fundamental_cycles(g, ncg_spanning(g))
        assert [walk_to_names(w) for w in walks] == ["uyvz", "uzwx", "uyvx", "uzwy"]
        assert all(w[0] == w[-1] == U for w in walks)


class TestQuotient:
    def test_by_translations(self, cover7):
        q, orbs = quotient_by(cover7.graph, translations(cover7))
        assert q.vertex_count == 6 and isomorphic_small(q, k33()) is not None
        assert sorted(len(o) for o in orbs) == [1029] * 6

    def test_by_trivial(self):
        g = k33()
        q, _ = quotient_by(g, GeneratedGroup(6, []))
        assert q == g

    def test_by_sylow(self, cover7):
        q, _ = quotient_by(cover7.graph, translations(cover7, "abc"))
        pr = predicates(q)
        assert q.vertex_count == 18 and pr.is_cubic and pr.is_connected

    def test_not_semiregular(self):
        g = k33()
        with pytest.raises(NotSemiregular):
            quotient_by(g, GeneratedGroup(6, [Permutation.from_cycles("(0 1)", 6)]))


class TestGraph6:
    def test_k33_round_trip(self):
        g = k33()
        assert from_graph6(to_graph6(g)).adjacency == g.adjacency

    def test_matches_networkx_encoding(self):
        h = nx.Graph()
        h.add_nodes_from(range(6))
        h.add_edges_from(k33().edges())
        assert to_graph6(k33()) == nx.to_graph6_bytes(h, header=False).decode().strip()

    def test_ncg_round_trip(self, cover7):
        g = cover7.graph
        assert from_graph6(to_graph6(g)).adjacency == g.adjacency

    @pytest.mark.parametrize("bad", ["", "E", "E?", "E" + "~" * 3, "Ez!"])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            from_graph6(bad)

    def test_header(self):
        assert from_graph6(">>graph6<<" + to_graph6(k33())).adjacency == k33().adjacency

    def test_random_round_trips(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(0, 50)
            g = random_graph(rng, n, rng.random())
            text = to_graph6(g)
            assert from_graph6(text).adjacency == g.adjacency
            h = nx.Graph()
            h.add_nodes_from(range(n))
            h.add_edges_from(g.edges())
            assert text == nx.to_graph6_bytes(h, header=False).decode().strip()

    def test_large_size_prefix(self):
        g = build_graph(100, [(0, 99)])
        assert from_graph6(to_graph6(g)).adjacency == g.adjacency


class TestIsomorphism:
    def test_relabelled_k33(self):
        g = k33()
        perm = [4, 0, 5, 2, 1, 3]
        h = build_graph(6, [(perm[a], perm[b]) for a, b in g.edges()])
        m = isomorphic_small(g, h)
        assert m is not None and is_isomorphism(g, h, m)

    def test_k33_vs_c6(self):
        assert isomorphic_small(k33(), cycle(6)) is None

    def test_pappus_fixture(self):
        pg = pappus_graph()
        assert to_graph6(pg) == PAPPUS_G6
        assert predicates(pg).girth == 6
        assert nx.is_isomorphic(nx.Graph(pg.edges()), nx.pappus_graph())

    def test_pappus_vs_desargues(self):
        # both cubic, order 18 vs 20, and a same-order non-isomorphic pair
        p = pappus_graph()
        other = from_graph6(nx.to_graph6_bytes(nx.LCF_graph(18, [5, -5], 9), header=False).decode().strip())
        assert isomorphic_small(p, other) is None

    def test_cap(self):
        with pytest.raises(ValueError):
            isomorphic_small(cycle(201), cycle(201))


def test_edge_list_io(tmp_path):
    g = k33()
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert read_edge_list(path).adjacency == g.adjacency
