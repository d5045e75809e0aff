"""Voltage assignments on K_{3,3}, regular covers, walk voltages and lifts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from . import kgroup as kg
from .graph import (SimpleGraph, SpanningData, build_graph, components, fundamental_cycles,
                    spanning_tree)
from .kgroup import KElement, KGroup, KParams
from .perm import GeneratedGroup, Permutation
from .refine import certified_base

BASE_NAMES = ("u", "v", "w", "x", "y", "z")
U, V, W, X, Y, Z = range(6)

ALPHA1 = Permutation.from_cycles([[U, V, W]], 6)
ALPHA2 = Permutation.from_cycles([[X, Y, Z]], 6)
BETA = Permutation.from_cycles([[U, X], [V, Y], [W, Z]], 6)
DELTA = Permutation.from_cycles([[V, Y, W, Z], [U, X]], 6)
BASE_AUTOMORPHISMS = {"alpha1": ALPHA1, "alpha2": ALPHA2, "beta": BETA, "delta": DELTA}

# the five voltage-1 edges and the cotree arcs in the order uyvz, uzwx, uyvx, uzwy
PINNED_TREE = ((U, X), (U, Y), (U, Z), (V, Y), (W, Z))
PINNED_COTREE = ((V, Z), (W, X), (V, X), (W, Y))
NCG_VOLTAGES = {(V, Z): "h", (W, X): "h^{-1}a", (V, X): "h^{-1}b", (W, Y): "hc"}

# generators as words in the cycle voltages: (cycle index, exponent) applied left to right
NCG_GENERATOR_WORDS = {
    "h": ((0, 1),),
    "a": ((0, 1), (1, 1)),
    "b": ((0, 1), (2, 1)),
    "c": ((0, -1), (3, 1)),
}

# images under alpha1, alpha2, beta, delta of the fundamental walks, with voltages
WALK_TABLE = {
    "cycles": (("uyvz", "h"), ("uzwx", "h^{-1}a"), ("uyvx", "h^{-1}b"), ("uzwy", "hc")),
    "alpha1": (("vywz", "h c^{-r}"), ("vzux", "h^{-1} b^{-r}"),
               ("vywx", "h^{-1} a^{r} b^{-r} c^{-r^2}"), ("vzuy", "h")),
    "alpha2": (("uzvx", "h b"), ("uxwy", "h^{-1} a^{-r^2} c"), ("uzvy", "h^{-1}"),
               ("uxwz", "h a^{-r}")),
    "beta": (("xvyw", "h^{-1} a b^{-r^2} c^{-r}"), ("xwzu", "h a^{-r}"), ("xvyu", "h b^{-r}"),
             ("xwzv", "h^{-1} a^{-r^2} b")),
    "delta": (("xwyv", "h a^{-r} b c^{r^2}"), ("xvzu", "h^{-1} b^{-r^2}"),
              ("xwyu", "h^{-1} a^{-r^2} c"), ("xvzw", "h a b^{-r}")),
}

# the three extensions to automorphisms of K, as words in a, b, c, h
STATED_EXTENSIONS = {
    "alpha1": {"a": "b^{-r} c^{-1}", "b": "a^{r} b^{-r} c^{r}", "c": "c^{r}", "h": "h c^{-r}"},
    "alpha2": {"a": "a^{-r^2} b^{r^2} c", "b": "b^{r^2}", "c": "a^{-r} b^{-1}", "h": "h b"},
    "delta": {"a": "a^{-1} c^{r}", "b": "a^{r} b^{r^2} c^{-r^2}", "c": "a^{-r^2} b^{r^2} c^{-r^2}",
              "h": "h a^{-r} b c^{r^2}"},
}


def k33() -> SimpleGraph:
    return build_graph(6, [(i, j) for i in (U, V, W) for j in (X, Y, Z)], labels=BASE_NAMES)


def walk_from_names(text: str) -> tuple[int, ...]:
    """``"uyvz"`` -> closed walk (u, y, v, z, u)."""
    idx = [BASE_NAMES.index(ch) for ch in text]
    return tuple(idx + [idx[0]])


def walk_to_names(walk: Sequence[int]) -> str:
    body = walk[:-1] if len(walk) > 1 and walk[0] == walk[-1] else walk
    return "".join(BASE_NAMES[v] for v in body)


class VoltageAssignment:
    """Arc -> group element map with ``phi(v, u) = phi(u, v)^-1`` on every arc.

    Arcs not listed carry the identity.  Giving both orientations of an arc is
    allowed only when they are mutually inverse.
    """

    def __init__(self, base: SimpleGraph, group, voltages: Mapping[tuple[int, int], Any]):
        self.base = base
        self.group = group
        phi: dict[tuple[int, int], Any] = {}
        for (u, v), e in voltages.items():
            if not base.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an arc of the base graph")
            inv = group.inverse(e)
            for arc, val in (((u, v), e), ((v, u), inv)):
                if arc in phi and phi[arc] != val:
                    raise ValueError(f"voltages on {arc} and its reverse are not inverse")
                phi[arc] = val
        for u, v in base.arcs():
            phi.setdefault((u, v), group.identity)
        self._phi = phi

    def voltage(self, u: int, v: int):
        return self._phi[(u, v)]

    def arcs(self) -> list[tuple[int, int]]:
        return sorted(self._phi)

    def to_json(self) -> list[dict]:
        return [{"tail": u, "head": v, "voltage": self.group.serialize(self._phi[(u, v)])}
                for u, v in self.arcs()]

    @classmethod
    def from_json(cls, base: SimpleGraph, group, data: Sequence[Mapping]) -> "VoltageAssignment":
        if isinstance(group, KGroup):
            def parse(vals):
                return kg.element(group.params, *vals)
        else:
            def parse(vals):
                return vals[0] % group.order
        return cls(base, group, {(d["tail"], d["head"]): parse(d["voltage"]) for d in data})


def walk_voltage(va: VoltageAssignment, walk: Sequence[int]):
    """Product of arc voltages along the walk, in walk order."""
    result = va.group.identity
    for u, v in zip(walk, walk[1:]):
        if not va.base.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an arc; not a walk")
        result = va.group.multiply(result, va.voltage(u, v))
    return result


def image_walk(walk: Sequence[int], alpha: Permutation) -> tuple[int, ...]:
    return tuple(alpha(v) for v in walk)


def ncg_spanning(base: SimpleGraph | None = None) -> SpanningData:
    return spanning_tree(base or k33(), U, tree_edges=PINNED_TREE, cotree_order=PINNED_COTREE)


def ncg_assignment(p: KParams) -> tuple[SimpleGraph, VoltageAssignment]:
    base = k33()
    volts = {arc: kg.normalize_word(p, word) for arc, word in NCG_VOLTAGES.items()}
    return base, VoltageAssignment(base, KGroup(p), volts)


# -- covers ---------------------------------------------------------------------------


@dataclass(eq=False)
class CoverGraph:
    base: SimpleGraph
    assignment: VoltageAssignment
    graph: SimpleGraph
    spanning: SpanningData
    elements: list
    connected: bool
    voltages_generate: bool
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def group(self):
        return self.assignment.group

    @property
    def fiber_size(self) -> int:
        return len(self.elements)

    def vertex(self, b: int, e) -> int:
        return b * len(self.elements) + self.group.index(e)

    def label(self, i: int) -> tuple[int, Any]:
        b, k = divmod(i, len(self.elements))
        return b, self.elements[k]

    def fiber(self, b: int) -> range:
        m = len(self.elements)
        return range(b * m, (b + 1) * m)

    def certified_base(self) -> tuple[int, ...]:
        if "base" not in self._cache:
            self._cache["base"] = certified_base(self.graph)
        return self._cache["base"]

    def sidecar(self) -> dict:
        """JSON-ready description of vertex labels and the assignment."""
        names = self.base.labels or tuple(str(i) for i in range(self.base.vertex_count))
        out = {
            "vertex_count": self.graph.vertex_count,
            "indexing": "index = base_vertex * |group| + lexicographic index of element",
            "base_vertices": list(names),
            "assignment": self.assignment.to_json(),
            "labels": [[names[b], self.group.serialize(e)]
                       for b in range(self.base.vertex_count) for e in self.elements],
        }
        if isinstance(self.group, KGroup):
            out["params"] = self.group.params.to_dict()
        return out


def local_group_generates(va: VoltageAssignment, spanning: SpanningData) -> bool:
    """Do the fundamental-cycle voltages at the root generate the whole group?"""
    cyc = fundamental_cycles(va.base, spanning)
    gens = [walk_voltage(va, c) for c in cyc]
    return len(va.group.generated(gens)) == va.group.order


def build_cover(base: SimpleGraph, va: VoltageAssignment,
                spanning: SpanningData | None = None) -> CoverGraph:
    """Derived graph on V(base) x G with edges {(u, g), (v, g phi(u, v))}."""
    if va.base != base:
        raise ValueError("assignment belongs to a different base graph")
    group = va.group
    elements = group.elements()
    m = len(elements)
    edges = []
    for u, v in base.edges():
        phi = va.voltage(u, v)
        for i, g in enumerate(elements):
            edges.append((u * m + i, v * m + group.index(group.multiply(g, phi))))
    names = base.labels or tuple(range(base.vertex_count))
    labels = [(names[b], e) for b in range(base.vertex_count) for e in elements]
    graph = build_graph(base.vertex_count * m, edges, labels)
    if spanning is None:
        spanning = spanning_tree(base, 0)
    connected = len(components(graph)) == 1
    generate = local_group_generates(va, spanning)
    if connected != generate:
        raise RuntimeError("cover connectivity disagrees with voltage generation")
    return CoverGraph(base, va, graph, spanning, elements, connected, generate)


def ncg_cover(p: KParams) -> CoverGraph:
    base, va = ncg_assignment(p)
    return build_cover(base, va, ncg_spanning(base))


def pappus_graph() -> SimpleGraph:
    """Z_3-cover of K_{3,3}: voltage 0 on the pinned tree, 1, 2, 2, 1 on the cotree arcs."""
    base = k33()
    volts = dict(zip(PINNED_COTREE, (1, 2, 2, 1)))
    va = VoltageAssignment(base, kg.CyclicGroup(3), volts)
    return build_cover(base, va, ncg_spanning(base)).graph


# -- walk table ----------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkTableRow:
    cycle: str
    alpha: str
    image_walk: str
    voltage: KElement
    expected_image_walk: str
    expected_expression: str
    expected_voltage: KElement

    @property
    def match(self) -> bool:
        return self.image_walk == self.expected_image_walk and self.voltage == self.expected_voltage


def table1_report(p: KParams) -> tuple[list[tuple[str, KElement, bool]], list[WalkTableRow]]:
    """Fundamental walks with their voltages, and the 16 image rows.

    Returns ``(cycles, rows)``; ``cycles`` holds (walk, voltage, matches the expected word).
    """
    base, va = ncg_assignment(p)
    sp = ncg_spanning(base)
    walks = fundamental_cycles(base, sp)
    cycles = []
    for walk, (name, expr) in zip(walks, WALK_TABLE["cycles"]):
        vol = walk_voltage(va, walk)
        cycles.append((walk_to_names(walk), vol,
                       walk_to_names(walk) == name and vol == kg.normalize_word(p, expr)))
    rows = []
    for alpha_name in ("alpha1", "alpha2", "beta", "delta"):
        alpha = BASE_AUTOMORPHISMS[alpha_name]
        for walk, (expected_walk, expr) in zip(walks, WALK_TABLE[alpha_name]):
            img = image_walk(walk, alpha)
            rows.append(WalkTableRow(walk_to_names(walk), alpha_name, walk_to_names(img),
                                  walk_voltage(va, img), expected_walk, expr,
                                  kg.normalize_word(p, expr)))
    return cycles, rows


# -- lifting ------------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftResult:
    alpha: Permutation
    lifts: bool
    images: dict | None
    candidate_images: dict
    failed_relations: tuple[str, ...]
    consistent: bool


def is_automorphism(g: SimpleGraph, p: Permutation) -> bool:
    if len(p) != g.vertex_count:
        return False
    nbr = g.neighbor_array()
    arr = np.append(p.array, g.vertex_count)
    return bool(np.array_equal(np.sort(arr[nbr], axis=1), np.sort(nbr[p.array], axis=1))) \
        if g.vertex_count else True


def generator_words(group: KGroup, cycle_voltages: Sequence[KElement]) -> dict:
    """Shortest words in the cycle voltages for a, b, c, h (breadth-first)."""
    p = group.params
    letters = [(i, s) for i in range(len(cycle_voltages)) for s in (1, -1)]
    values = {(i, s): kg.power(p, cycle_voltages[i], s) for i, s in letters}
    targets = {v: k for k, v in kg.GENERATORS.items()}
    found: dict[str, tuple] = {}
    seen = {kg.IDENTITY: ()}
    queue = deque([kg.IDENTITY])
    while queue and len(found) < 4:
        e = queue.popleft()
        for letter in letters:
            f = kg.multiply(p, e, values[letter])
            if f in seen:
                continue
            seen[f] = seen[e] + (letter,)
            if f in targets and targets[f] not in found:
                found[targets[f]] = seen[f]
            queue.append(f)
    if len(found) < 4:
        raise ValueError("cycle voltages do not generate K")
    return found


def lift_test(base: SimpleGraph, va: VoltageAssignment, alpha: Permutation,
              spanning: SpanningData | None = None,
              words: Mapping[str, Sequence[tuple[int, int]]] | None = None) -> LiftResult:
    """Decide whether ``alpha`` lifts along the K-cover.

    Candidate images of a, b, c, h are read off the image-cycle voltages
    through ``words`` (default: shortest words), then checked against the
    defining relations of K, for surjectivity and for consistency on every
    fundamental cycle.
    """
    if not isinstance(va.group, KGroup):
        raise TypeError("lift_test needs a K-valued voltage assignment")
    if not is_automorphism(base, alpha):
        raise ValueError("alpha is not an automorphism of the base graph")
    p = va.group.params
    spanning = spanning or spanning_tree(base, 0)
    cycles = fundamental_cycles(base, spanning)
    phis = [walk_voltage(va, c) for c in cycles]
    imgs = [walk_voltage(va, image_walk(c, alpha)) for c in cycles]
    words = words or generator_words(va.group, phis)
    cand = {}
    for letter in "abch":
        cand[letter] = kg.product(p, (kg.power(p, imgs[i], s) for i, s in words[letter]))
    check = kg.check_generator_images(p, cand)
    consistent = check.is_endomorphism and all(
        kg.apply_homomorphism(p, cand, phi) == img for phi, img in zip(phis, imgs))
    lifts = check.is_automorphism and consistent
    return LiftResult(alpha, lifts, dict(cand) if lifts else None, cand,
                      check.failed_relations, consistent)


def ncg_lift_test(p: KParams, alpha: Permutation) -> LiftResult:
    """Lift test on the NCG assignment using the proof's elimination order."""
    base, va = ncg_assignment(p)
    return lift_test(base, va, alpha, ncg_spanning(base), NCG_GENERATOR_WORDS)


def construct_lift(cover: CoverGraph, alpha: Permutation, images: Mapping[str, KElement]) -> Permutation:
    """(v, k) -> (alpha(v), sigma(k phi(T_v)^-1) phi(T_v^alpha)), checked to be an automorphism.

    ``T_v`` is the tree path from the root to ``v``; on the pinned NCG tree
    ``phi(T_v)`` is trivial.
    """
    group = cover.group
    p = group.params
    check = kg.check_generator_images(p, images)
    if not check.is_automorphism:
        raise ValueError(f"generator images do not define an automorphism: {check.failed_relations}")
    sp = cover.spanning
    m = cover.fiber_size
    arr = np.empty(cover.graph.vertex_count, dtype=np.int64)
    for v in range(cover.base.vertex_count):
        path = sp.path_from_root(v)
        head = kg.inverse(p, walk_voltage(cover.assignment, path))
        tail = walk_voltage(cover.assignment, image_walk(path, alpha))
        av = alpha(v)
        for i, e in enumerate(cover.elements):
            s = kg.apply_homomorphism(p, images, kg.multiply(p, e, head))
            arr[v * m + i] = av * m + group.index(kg.multiply(p, s, tail))
    lift = Permutation(arr)
    if not is_automorphism(cover.graph, lift):
        raise RuntimeError("constructed lift is not a graph automorphism")
    return lift


def translation(cover: CoverGraph, k) -> Permutation:
    """Left multiplication (v, g) -> (v, k g)."""
    group = cover.group
    m = cover.fiber_size
    fib = np.array([group.index(group.multiply(k, g)) for g in cover.elements], dtype=np.int64)
    arr = np.concatenate([b * m + fib for b in range(cover.base.vertex_count)])
    return Permutation(arr)


def translations(cover: CoverGraph, letters: str | None = None) -> GeneratedGroup:
    named = cover.group.named_generators()
    keys = list(named) if letters is None else list(letters)
    gens = [translation(cover, named[k]) for k in keys]
    return GeneratedGroup(cover.graph.vertex_count, gens, certified_base=cover.certified_base())


def lifted_group(cover: CoverGraph) -> GeneratedGroup:
    """F = <translations, lifts of alpha1, alpha2, delta>, with its chain."""
    if not isinstance(cover.group, KGroup):
        raise TypeError("lifted_group needs the NCG cover")
    p = cover.group.params
    gens = list(translations(cover).generators)
    for name in ("alpha1", "alpha2", "delta"):
        res = ncg_lift_test(p, BASE_AUTOMORPHISMS[name])
        if not res.lifts:
            raise RuntimeError(f"{name} does not lift")
        gens.append(construct_lift(cover, res.alpha, res.images))
    group = GeneratedGroup(cover.graph.vertex_count, gens, certified_base=cover.certified_base())
    group.chain
    return group
