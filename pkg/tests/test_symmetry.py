from __future__ import annotations

import copy
import json
import random

import networkx as nx
import pytest

from ncgcover import kgroup as kg
from ncgcover.graph import build_graph
from ncgcover.perm import GeneratedGroup, Permutation, compose
from ncgcover.symmetry import (Certificate, SizeCapError, certify_non_cayley, derive_non_cayley,
                               edge_reversing_involution, enumerate_s_arcs,
                               find_one_regular_subgroups, full_aut_vertex_stabilizer,
                               hall_witness, is_s_regular, iter_s_arcs, pappus_quotient_check,
                               scan_edge_reversing_involutions)
from ncgcover.voltage import ALPHA1, ALPHA2, BETA, DELTA, U, X, k33, pappus_graph

from oracles import automorphisms_bruteforce

AUT_K33 = GeneratedGroup(6, [ALPHA1, ALPHA2, BETA, DELTA])
L = GeneratedGroup(6, [ALPHA1, ALPHA2, DELTA])


def s_arcs_bruteforce(g, s):
    arcs = [(v,) for v in range(g.vertex_count)]
    for _ in range(s):
        arcs = [a + (w,) for a in arcs for w in g.neighbors(a[-1]) if len(a) < 2 or w != a[-2]]
    return arcs


class TestSArcs:
    def test_k33(self):
        g = k33()
        assert enumerate_s_arcs(g, 0) == 6
        assert enumerate_s_arcs(g, 1) == 18
        assert enumerate_s_arcs(g, 2) == 36

    def test_ncg(self, cover7):
        g = cover7.graph
        assert enumerate_s_arcs(g, 2) == 37044
        assert sum(1 for _ in iter_s_arcs(g, 2)) == 37044

    @pytest.mark.parametrize("seed", range(8))
    def test_random_graphs(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 12)
        g = build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35])
        for s in range(5):
            brute = s_arcs_bruteforce(g, s)
            assert enumerate_s_arcs(g, s) == len(brute)
            assert list(iter_s_arcs(g, s)) == sorted(brute)

    def test_cubic_formula(self):
        g = pappus_graph()
        for s in range(1, 6):
            assert enumerate_s_arcs(g, s) == 18 * 3 * 2 ** (s - 1)

    def test_negative(self):
        with pytest.raises(ValueError):
            enumerate_s_arcs(k33(), -1)


class TestSRegular:
    def test_k33_two_regular(self):
        r = is_s_regular(L, k33(), 2)
        assert r.regular_on_s_arcs

    def test_F_two_regular(self, cover7, F7):
        r = is_s_regular(F7, cover7.graph, 2)
        assert r.transitive_on_s_arcs and r.regular_on_s_arcs
        r3 = is_s_regular(F7, cover7.graph, 3)
        assert not r3.regular_on_s_arcs and F7.order() != 12 * 6174

    def test_trivial(self):
        r = is_s_regular(GeneratedGroup(6, []), k33(), 0)
        assert not r.transitive_on_s_arcs

    def test_full_aut_k33_three_arc_regular(self):
        assert is_s_regular(AUT_K33, k33(), 3).regular_on_s_arcs


class TestType:
    def test_l_is_type_22(self):
        assert edge_reversing_involution(L, k33()) is None
        assert scan_edge_reversing_involutions(L, k33()) == 0

    def test_full_aut_has_flip(self):
        inv = edge_reversing_involution(AUT_K33, k33(), (U, X))
        assert inv is not None
        assert inv(U) == X and inv(X) == U and compose(inv, inv).is_identity()
        assert scan_edge_reversing_involutions(AUT_K33, k33()) > 0

    def test_non_transitive_group(self):
        # <beta> alone is not arc-transitive but flips u-x
        inv = edge_reversing_involution(GeneratedGroup(6, [BETA]), k33())
        assert inv == BETA

    def test_F(self, cover7, F7):
        arc = (cover7.vertex(U, kg.IDENTITY), cover7.vertex(X, kg.IDENTITY))
        assert edge_reversing_involution(F7, cover7.graph, arc) is None
        assert edge_reversing_involution(F7, cover7.graph) is None
        assert scan_edge_reversing_involutions(F7, cover7.graph) == 0


class TestOneRegular:
    def test_F(self, cover7, F7):
        res = find_one_regular_subgroups(F7, cover7.graph)
        assert res.applicable and res.index_two_count == 1 and res.one_regular == []

    def test_k33_has_one(self):
        g = GeneratedGroup(6, [ALPHA1, ALPHA2, BETA, compose(DELTA, DELTA)])
        assert g.order() == 36
        res = find_one_regular_subgroups(g, k33())
        assert res.applicable and len(res.one_regular) >= 1
        assert any(h.contains(BETA) and h.order() == 18 for h in res.one_regular)

    def test_not_applicable(self):
        res = find_one_regular_subgroups(GeneratedGroup(6, [ALPHA1, ALPHA2]), k33())
        assert not res.applicable


class TestHall:
    def test_F(self, cover7, F7):
        hw = hall_witness(F7, cover7.graph)
        assert hw.order == 9261 and hw.index == 4 and hw.orbit_count == 2
        assert hw.orbits_are_parts and hw.stabilizer_orders == (3,) and hw.verified

    def test_s3(self):
        tri = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        s3 = GeneratedGroup(3, [Permutation.from_cycles("(0 1 2)", 3), Permutation.from_cycles("(0 1)", 3)])
        hw = hall_witness(s3, tri)
        assert hw.index == 2 and not hw.verified


class TestFullAut:
    def test_k33(self):
        g = k33()
        brute = automorphisms_bruteforce(6, g.edges())
        assert len(brute) == 72
        for v in range(6):
            st = full_aut_vertex_stabilizer(g, v)
            assert st.order == sum(1 for p in brute if p[v] == v) == 12
            assert {p.images for p in st.generators} == {p for p in brute if p[v] == v}

    def test_pappus(self):
        g = pappus_graph()
        h = nx.Graph(g.edges())
        total = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter())
        assert total == 216
        assert full_aut_vertex_stabilizer(g, 5).order == 12

    def test_ncg(self, cover7, F7):
        st = full_aut_vertex_stabilizer(cover7.graph, 0)
        assert st.order == 6
        assert st.order * 6174 == F7.order()
        assert all(F7.contains(p) and p(0) == 0 for p in st.generators)

    def test_cycle(self):
        c = build_graph(8, [(i, (i + 1) % 8) for i in range(8)])
        assert full_aut_vertex_stabilizer(c, 3).order == 2

    def test_cap(self, cover7):
        with pytest.raises(SizeCapError):
            full_aut_vertex_stabilizer(cover7.graph, 0, cap=1000)


class TestPappusQuotient:
    def test_primes(self):
        assert pappus_quotient_check(7)
        assert pappus_quotient_check(13)

    def test_composite(self):
        with pytest.raises(ValueError):
            pappus_quotient_check(91)


@pytest.fixture(scope="module")
def cert7():
    return certify_non_cayley(7)


class TestCertificate:
    def test_n7(self, cert7):
        assert cert7.non_cayley and cert7.complete and cert7.contradictions == []
        assert cert7.graph["order"] == 6174 and cert7.type == "2^2"
        assert cert7.k33_automorphisms_lifting == 36
        assert "timings" not in cert7.to_dict()

    def test_deterministic(self, cert7):
        again = certify_non_cayley(7)
        assert json.dumps(again.to_dict()) == json.dumps(cert7.to_dict())

    def test_timings_opt_in(self):
        c = certify_non_cayley(7, skip_full_aut=True, include_timings=True)
        assert "cover" in c.to_dict()["timings"]
        assert not c.non_cayley and not c.complete

    @pytest.mark.parametrize("n", [9, 6])
    def test_no_root(self, n):
        with pytest.raises(kg.NoRootError):
            certify_non_cayley(n)

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            certify_non_cayley(13, cap=10 ** 4)

    @pytest.mark.parametrize("mutation", [
        ("full_aut", None),
        ("full_aut.vertex_stabilizer_order", 12),
        ("full_aut.aut_order", 74088),
        ("lifted_group_transitive", False),
        ("two_regular", False),
        ("one_regular_subgroup_count", 1),
        ("one_regular_subgroup_count", None),
        ("type", "2^1"),
        ("type", "n/a"),
        ("hall.verified", False),
    ])
    def test_monotone(self, cert7, mutation):
        assert derive_non_cayley(cert7)
        mutated: Certificate = copy.deepcopy(cert7)
        key, value = mutation
        if "." in key:
            outer, inner = key.split(".")
            getattr(mutated, outer)[inner] = value
        else:
            setattr(mutated, key, value)
        assert not derive_non_cayley(mutated)
