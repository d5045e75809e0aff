from __future__ import annotations

import random

import pytest

from ncgcover import kgroup as kg
from ncgcover.kgroup import GEN_A, GEN_B, GEN_C, GEN_H, IDENTITY, KElement, KParams
from ncgcover.voltage import BETA, STATED_EXTENSIONS, ncg_lift_test

VALID_N = [n for n in range(7, 201, 2) if kg.find_unit_cube_roots(n)]


def test_roots():
    assert kg.find_unit_cube_roots(7) == [2, 4]
    assert kg.find_unit_cube_roots(9) == []
    assert kg.find_unit_cube_roots(13) == [3, 9]


def test_roots_cube_to_one():
    for n in range(2, 300):
        for r in kg.find_unit_cube_roots(n):
            assert pow(r, 3, n) == 1 % n


def test_default_params():
    assert kg.default_params(7) == KParams(7, 2)
    assert kg.default_params(7, 4).r == 4
    for n in (9, 6, 5, 10):
        with pytest.raises(kg.NoRootError):
            kg.default_params(n)
    with pytest.raises(kg.NoRootError):
        kg.default_params(7, 3)


def test_params_validation():
    with pytest.raises(ValueError):
        KParams(7, 3)
    with pytest.raises(ValueError):
        KParams(3, 1)
    p = KParams(13, 3)
    assert p.rho * p.r % p.n == 1
    assert p.order == 6591


def test_multiply_examples():
    p = KParams(7, 2)
    assert kg.multiply(p, IDENTITY, GEN_B) == GEN_B
    assert kg.multiply(p, GEN_H, GEN_A) == (4, 0, 0, 1)
    assert kg.multiply(p, GEN_A, GEN_H) == (1, 0, 0, 1)
    assert kg.multiply(p, GEN_H, kg.element(p, 2, 0, 0, 0)) == (1, 0, 0, 1)


def test_inverse_examples():
    p = KParams(7, 2)
    assert kg.inverse(p, IDENTITY) == IDENTITY
    assert kg.inverse(p, GEN_A) == (6, 0, 0, 0)
    assert kg.inverse(p, GEN_H) == (0, 0, 0, 2)
    assert kg.multiply(p, GEN_H, KElement(0, 0, 0, 2)) == IDENTITY


def test_words():
    p = KParams(7, 2)
    assert kg.normalize_word(p, "a") == (1, 0, 0, 0)
    assert kg.normalize_word(p, "h^{-1}a") == (2, 0, 0, 2)
    assert kg.normalize_word(p, "hc") == (0, 0, 4, 1)
    assert kg.normalize_word(p, "h^-1 a^r b^{-r^2}") == kg.normalize_word(p, "h^2 a^2 b^-4")
    assert kg.normalize_word(p, "1") == IDENTITY
    assert kg.parse_word("h^{-1}a^{r}b^{-r^2}", {"r": 3}) == [("h", -1), ("a", 3), ("b", -9)]
    for bad in ("d", "a^", "a^{q}", "a^{1"):
        with pytest.raises(ValueError):
            kg.normalize_word(p, bad)


def test_formatting():
    assert str(KElement(1, 2, 3, 1)) == "[1,2,3,1]"
    assert kg.format_element(KElement(2, 0, 1, 1)) == "a^2 c h"
    assert kg.format_element(IDENTITY) == "1"


@pytest.mark.parametrize("n", VALID_N)
def test_relation_suite(n):
    for r in kg.find_unit_cube_roots(n):
        p = KParams(n, r)
        for g in (GEN_A, GEN_B, GEN_C):
            assert kg.power(p, g, n) == IDENTITY
            assert kg.power(p, g, n - 1) != IDENTITY
            assert kg.conjugate(p, g, GEN_H) == kg.power(p, g, r)
        assert kg.power(p, GEN_H, 3) == IDENTITY
        for g1, g2 in ((GEN_A, GEN_B), (GEN_A, GEN_C), (GEN_B, GEN_C)):
            assert kg.commutator(p, g1, g2) == IDENTITY
        for t in range(3):
            assert pow(p.rho, t, n) * pow(r, t, n) % n == 1


@pytest.mark.parametrize("n", [7, 13, 19, 49, 91, 199])
def test_associativity_and_inverses(n):
    p = kg.default_params(n)
    rng = random.Random(n)

    def rand():
        return kg.element(p, rng.randrange(n), rng.randrange(n), rng.randrange(n), rng.randrange(3))

    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        assert kg.multiply(p, kg.multiply(p, a, b), c) == kg.multiply(p, a, kg.multiply(p, b, c))
        assert kg.multiply(p, a, kg.inverse(p, a)) == IDENTITY
        assert kg.multiply(p, kg.inverse(p, a), a) == IDENTITY


def test_enumeration():
    p = KParams(7, 2)
    elems = kg.enumerate_elements(p)
    assert len(elems) == 1029 and elems[0] == IDENTITY
    assert all(kg.element_index(p, e) == i for i, e in enumerate(elems))
    assert all(kg.element_at(p, i) == e for i, e in enumerate(elems))
    assert len(kg.enumerate_elements(KParams(13, 3))) == 6591
    assert len(kg.generated_subgroup(p, (GEN_A, GEN_B, GEN_C, GEN_H))) == 1029
    assert len(kg.generated_subgroup(p, (GEN_A, GEN_H))) == 21


def test_identity_images_automorphism():
    p = KParams(7, 2)
    chk = kg.check_generator_images(p, dict(kg.GENERATORS))
    assert chk.is_endomorphism and chk.is_automorphism


@pytest.mark.parametrize("name", ["alpha1", "alpha2", "delta"])
@pytest.mark.parametrize("params", [KParams(7, 2), KParams(7, 4), KParams(13, 3)])
def test_stated_extensions_are_automorphisms(name, params):
    images = {k: kg.normalize_word(params, w) for k, w in STATED_EXTENSIONS[name].items()}
    chk = kg.check_generator_images(params, images)
    assert chk.is_automorphism
    if params.n == 7:
        seen = {kg.apply_homomorphism(params, images, e) for e in kg.enumerate_elements(params)}
        assert len(seen) == params.order


@pytest.mark.parametrize("n", [7, 13, 19, 31])
def test_beta_images_not_endomorphism(n):
    p = kg.default_params(n)
    res = ncg_lift_test(p, BETA)
    cand = res.candidate_images
    # a and h as forced by the beta row of the walk table
    assert cand["a"] == kg.normalize_word(p, "b^{-1} c^{-r^2}")
    assert cand["h"] == kg.normalize_word(p, "h^{-1} a b^{-r^2} c^{-r}")
    chk = kg.check_generator_images(p, cand)
    assert not chk.is_endomorphism
    assert "a^h==a^r" in chk.failed_relations


def test_non_surjective_endomorphism():
    p = KParams(7, 2)
    images = {"a": IDENTITY, "b": IDENTITY, "c": IDENTITY, "h": GEN_H}
    chk = kg.check_generator_images(p, images)
    assert chk.is_endomorphism and not chk.is_automorphism


def test_cyclic_group():
    z = kg.CyclicGroup(3)
    assert z.multiply(2, 2) == 1 and z.inverse(1) == 2
    assert z.generated([0]) == {0} and z.generated([1]) == {0, 1, 2}
