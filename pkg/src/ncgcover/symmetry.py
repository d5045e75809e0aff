"""Arc-transitivity checks and the end-to-end non-Cayley certificate."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import __version__
from . import kgroup as kg
from .graph import SimpleGraph, bipartition, isomorphic_small, predicates, quotient_by
from .perm import (GeneratedGroup, NoNormalComplement, Permutation, build_stabilizer_chain,
                   cyclic_sylow2_witness, index_two_subgroups, odd_order_core, orbits)
from .refine import individualize, refine, refine_against, target_cell
from .voltage import (ALPHA1, ALPHA2, BASE_AUTOMORPHISMS, DELTA, STATED_EXTENSIONS, U, X,
                      is_automorphism, lifted_group, ncg_cover, ncg_lift_test, pappus_graph,
                      table1_report, translations)

DEFAULT_VERTEX_CAP = 10 ** 5
FULL_AUT_CAP = 10 ** 5
EXHAUSTIVE_SCAN_LIMIT = 10 ** 5


class SizeCapError(ValueError):
    """The requested instance exceeds the configured vertex budget."""


# -- s-arcs -----------------------------------------------------------------------------


def iter_s_arcs(g: SimpleGraph, s: int) -> Iterator[tuple[int, ...]]:
    """All s-arcs in lexicographic order."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    adj = g.adjacency

    def grow(prefix):
        if len(prefix) == s + 1:
            yield tuple(prefix)
            return
        for w in adj[prefix[-1]]:
            if len(prefix) >= 2 and w == prefix[-2]:
                continue
            prefix.append(w)
            yield from grow(prefix)
            prefix.pop()

    for v in range(g.vertex_count):
        yield from grow([v])


def enumerate_s_arcs(g: SimpleGraph, s: int) -> int:
    """Number of s-arcs, by dynamic programming over arcs."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s == 0:
        return g.vertex_count
    counts = {arc: 1 for arc in g.arcs()}
    for _ in range(s - 1):
        nxt = {}
        for (u, v), c in counts.items():
            for w in g.adjacency[v]:
                if w != u:
                    nxt[(v, w)] = nxt.get((v, w), 0) + c
        counts = {arc: nxt.get(arc, 0) for arc in counts}
    return sum(counts.values())


def first_s_arc(g: SimpleGraph, s: int, start: int = 0) -> tuple[int, ...] | None:
    arc = [start]
    while len(arc) < s + 1:
        options = [w for w in g.adjacency[arc[-1]] if len(arc) < 2 or w != arc[-2]]
        if not options:
            return None
        arc.append(options[0])
    return tuple(arc)


def arc_orbit(group: GeneratedGroup, arc: tuple[int, ...]) -> set[tuple[int, ...]]:
    gens = [p.as_list() for p in group.generators]
    seen = {arc}
    queue = deque([arc])
    while queue:
        a = queue.popleft()
        for gl in gens:
            b = tuple(gl[v] for v in a)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


@dataclass(frozen=True)
class SRegularity:
    s: int
    arc_count: int
    orbit_size: int
    group_order: int
    transitive_on_s_arcs: bool
    regular_on_s_arcs: bool


def is_s_regular(group: GeneratedGroup, g: SimpleGraph, s: int) -> SRegularity:
    if group.domain_size != g.vertex_count:
        raise ValueError("group degree differs from the vertex count")
    count = enumerate_s_arcs(g, s)
    arc = first_s_arc(g, s)
    orbit = len(arc_orbit(group, arc)) if arc is not None else 0
    order = group.order()
    transitive = arc is not None and orbit == count
    return SRegularity(s, count, orbit, order, transitive, transitive and order == count)


# -- type 2^1 / 2^2 --------------------------------------------------------------------------


def _is_involution(chain, arr: np.ndarray) -> bool:
    sq = arr[arr]
    if chain.certified_base is not None:
        return all(int(sq[b]) == b for b in chain.certified_base) and \
            any(int(arr[b]) != b for b in chain.certified_base)
    ident = np.arange(len(arr))
    return bool(np.array_equal(sq, ident)) and not np.array_equal(arr, ident)


def edge_reversing_involution(group: GeneratedGroup, g: SimpleGraph,
                              arc: tuple[int, int] | None = None) -> Permutation | None:
    """An involution swapping the ends of an edge, searched coset by coset.

    For each arc-orbit representative (v0, v1) (just the given or first arc
    when the group is arc-transitive) the elements mapping (v0, v1) to
    (v1, v0) form one coset of the arc stabilizer, enumerated in full.
    """
    if arc is None:
        arc = first_s_arc(g, 1)
        if arc is None:
            return None
    if is_s_regular(group, g, 1).transitive_on_s_arcs:
        reps = [arc]
    else:
        reps, covered = [], set()
        for a in g.arcs():
            if a not in covered:
                reps.append(a)
                covered |= arc_orbit(group, a)
    for v0, v1 in reps:
        chain = build_stabilizer_chain(group, (v0, v1)).chain
        if v1 not in chain.basic_orbit(0):
            continue
        u1 = chain.transversal_element(0, v1)
        w = u1.inverse()(v0)
        if w not in chain.basic_orbit(1):
            continue
        u2 = chain.transversal_element(1, w).array
        step = u1.array[u2]
        for s in chain.tail(2).iter_element_arrays():
            cand = step[s]
            if _is_involution(chain, cand):
                return Permutation._wrap(cand)
    return None


def scan_edge_reversing_involutions(group: GeneratedGroup, g: SimpleGraph) -> int:
    """Count, over all elements, the involutions that reverse some edge."""
    chain = group.chain
    nbr = g.neighbor_array()
    count = 0
    for arr in chain.iter_element_arrays():
        if not _is_involution(chain, arr):
            continue
        moved = np.flatnonzero(arr != np.arange(len(arr)))
        if np.any((nbr[moved] == arr[moved][:, None]).any(axis=1)):
            count += 1
    return count


# -- regular subgroups and the Hall subgroup -------------------------------------------------


@dataclass
class OneRegularSearch:
    applicable: bool
    index_two_count: int
    one_regular: list = field(default_factory=list)


def find_one_regular_subgroups(group: GeneratedGroup, g: SimpleGraph) -> OneRegularSearch:
    """Index-2 subgroups acting regularly on arcs (the only candidates when |G| = 2 |arcs|)."""
    arcs = enumerate_s_arcs(g, 1)
    if group.order() != 2 * arcs:
        return OneRegularSearch(False, 0)
    subs = index_two_subgroups(group)
    hits = [h for h in subs if is_s_regular(h, g, 1).regular_on_s_arcs]
    return OneRegularSearch(True, len(subs), hits)


@dataclass(frozen=True)
class HallWitness:
    order: int
    index: int
    normal: bool
    orbit_count: int
    orbits_are_parts: bool
    stabilizer_orders: tuple[int, ...]
    chain_stabilizer_order: int

    @property
    def verified(self) -> bool:
        return (self.normal and self.index == 4 and self.orbits_are_parts
                and self.stabilizer_orders == (3,) and self.chain_stabilizer_order == 3)


def hall_witness(group: GeneratedGroup, g: SimpleGraph, seed: int = 0) -> HallWitness:
    h = odd_order_core(group, seed)
    horder = h.order()
    orbs = orbits(h)
    parts = bipartition(g)
    as_sets = sorted(tuple(o) for o in orbs)
    match = parts is not None and as_sets == sorted(parts)
    stab_orders = tuple(sorted({horder // len(o) for o in orbs}))
    chain = build_stabilizer_chain(h, (orbs[0][0],)).chain
    return HallWitness(horder, group.order() // horder, True, len(orbs), match, stab_orders,
                       chain.tail(1).order())


# -- full automorphism group -----------------------------------------------------------------


@dataclass(frozen=True)
class AutStabilizer:
    order: int
    generators: tuple[Permutation, ...]
    nodes: int


def full_aut_vertex_stabilizer(g: SimpleGraph, v: int, cap: int = FULL_AUT_CAP) -> AutStabilizer:
    """Every automorphism fixing ``v``, found by individualization-refinement.

    The reference branch always individualizes the first vertex of the
    smallest non-singleton cell; candidate branches try every vertex of the
    matching cell and survive only while their refinement trace equals the
    reference trace.  Each automorphism fixing ``v`` yields exactly one
    surviving leaf, and leaves are checked edge by edge, so the count is exact.
    """
    if g.vertex_count > cap:
        raise SizeCapError(f"{g.vertex_count} vertices exceed the cap {cap}")
    if not 0 <= v < g.vertex_count:
        raise ValueError("vertex out of range")
    start, _ = refine(g, individualize(np.zeros(g.vertex_count, dtype=np.int64), v))
    ref_path = [start]
    traces = [None]
    found: list[Permutation] = []
    nodes = 0

    def search(cand: np.ndarray, depth: int) -> None:
        nonlocal nodes
        ref = ref_path[depth]
        cell = target_cell(ref)
        if cell is None:
            perm = np.empty(g.vertex_count, dtype=np.int64)
            perm[np.argsort(ref)] = np.argsort(cand)
            p = Permutation._wrap(perm)
            if is_automorphism(g, p):
                found.append(p)
            return
        if len(ref_path) == depth + 1:
            rv = int(np.flatnonzero(ref == cell)[0])
            nxt, trace = refine(g, individualize(ref, rv))
            ref_path.append(nxt)
            traces.append(trace)
        for w in np.flatnonzero(cand == cell).tolist():
            nodes += 1
            refined = refine_against(g, individualize(cand, w), traces[depth + 1])
            if refined is not None:
                search(refined, depth + 1)

    search(start, 0)
    return AutStabilizer(len(found), tuple(found), nodes)


# -- Pappus quotient ------------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PappusCheck:
    order: int
    connected: bool
    cubic: bool
    isomorphic: bool

    @property
    def passed(self) -> bool:
        return self.order == 18 and self.connected and self.cubic and self.isomorphic


def pappus_quotient(cover) -> PappusCheck:
    p = cover.group.params
    if not is_prime(p.n):
        raise ValueError(f"n={p.n} is not prime; the Sylow-p quotient check does not apply")
    sylow = translations(cover, "abc")
    q, _ = quotient_by(cover.graph, sylow)
    pr = predicates(q)
    iso = isomorphic_small(q, pappus_graph()) is not None
    return PappusCheck(q.vertex_count, pr.is_connected, pr.is_cubic, iso)


def pappus_quotient_check(n: int, root: int | None = None, cover=None) -> bool:
    if not is_prime(n):
        raise ValueError(f"n={n} is not prime; the Sylow-p quotient check does not apply")
    cover = cover or ncg_cover(kg.default_params(n, root))
    return pappus_quotient(cover).passed


# -- certificate --------------------------------------------------------------------------------


@dataclass
class Certificate:
    tool_version: str
    params: dict
    graph: dict
    voltages_generate: bool
    walk_table_match: bool
    lifts: dict
    k33_automorphisms_lifting: int
    lifted_group_order: int
    lifted_group_transitive: bool
    arc_regular: bool
    two_regular: bool
    three_regular: bool
    type: str
    reversing_involution_at_pinned_arc: bool
    reversing_involutions_exhaustive: int | None
    index_two_subgroup_count: int
    one_regular_subgroup_count: int | None
    sylow2: dict
    hall: dict
    full_aut: dict | None
    pappus: bool | None
    non_cayley: bool = False
    complete: bool = False
    contradictions: list = field(default_factory=list)
    timings: dict | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        if out["timings"] is None:
            del out["timings"]
        return out


def derive_non_cayley(cert: Certificate) -> bool:
    """Non-Cayley verdict from its prerequisites; false whenever any is missing."""
    fa = cert.full_aut
    return bool(
        fa is not None
        and fa.get("vertex_stabilizer_order") == 6
        and fa.get("aut_order") == cert.lifted_group_order
        and cert.lifted_group_transitive
        and cert.two_regular
        and cert.one_regular_subgroup_count == 0
        and cert.type == "2^2"
        and cert.hall.get("verified") is True
    )


def _lift_entry(p: kg.KParams, name: str) -> dict:
    res = ncg_lift_test(p, BASE_AUTOMORPHISMS[name])
    entry = {"lifts": res.lifts, "failed_relations": list(res.failed_relations)}
    if res.lifts:
        entry["images"] = {k: list(v) for k, v in res.images.items()}
        expected = STATED_EXTENSIONS.get(name)
        entry["matches_stated"] = expected is not None and all(
            res.images[k] == kg.normalize_word(p, w) for k, w in expected.items())
    return entry


def certify_non_cayley(n: int, root: int | None = None, *, cap: int = DEFAULT_VERTEX_CAP,
                       skip_full_aut: bool = False, seed: int = 0,
                       include_timings: bool = False,
                       progress: Callable[[str, float], None] | None = None) -> Certificate:
    """Run every check for NCG_{18n^3} and assemble the certificate."""
    p = kg.default_params(n, root)
    if 18 * n ** 3 > cap:
        raise SizeCapError(f"18n^3 = {18 * n ** 3} exceeds the vertex cap {cap}")
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def tick(stage: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[stage] = round(now - clock, 3)
        if progress:
            progress(stage, now - clock)
        clock = now

    contradictions = []
    cover = ncg_cover(p)
    g = cover.graph
    tick("cover")

    pr = predicates(g)
    graph_info = {
        "order": g.vertex_count, "edges": g.edge_count, "is_cubic": pr.is_cubic,
        "is_connected": pr.is_connected, "is_bipartite": pr.is_bipartite,
        "part_sizes": [len(x) for x in pr.parts] if pr.parts else None,
        "girth": pr.girth if pr.girth != float("inf") else None,
    }
    if g.vertex_count != 18 * n ** 3 or not (pr.is_cubic and pr.is_connected and pr.is_bipartite):
        contradictions.append("graph is not a connected cubic bipartite graph of order 18n^3")
    tick("predicates")

    cycles, rows = table1_report(p)
    table_ok = all(c[2] for c in cycles) and all(r.match for r in rows)
    if not table_ok:
        contradictions.append("walk table mismatch")
    tick("walk_table")

    lifts = {name: _lift_entry(p, name) for name in ("alpha1", "alpha2", "beta", "delta")}
    if not (lifts["alpha1"]["lifts"] and lifts["alpha2"]["lifts"] and lifts["delta"]["lifts"]) \
            or lifts["beta"]["lifts"]:
        contradictions.append("lifting pattern of alpha1, alpha2, beta, delta")
    if not all(lifts[k].get("matches_stated") for k in ("alpha1", "alpha2", "delta")):
        contradictions.append("extension images differ from the stated ones")
    aut_k33 = GeneratedGroup(6, [ALPHA1, ALPHA2, BASE_AUTOMORPHISMS["beta"], DELTA])
    lifting = sum(ncg_lift_test(p, a).lifts for a in aut_k33.elements())
    if lifting != 36:
        contradictions.append(f"{lifting} of 72 base automorphisms lift, expected 36")
    tick("lifts")

    F = lifted_group(cover)
    forder = F.order()
    transitive = len(F.orbit(0)) == g.vertex_count
    tick("lifted_group")

    two = is_s_regular(F, g, 2)
    three_regular = forder == enumerate_s_arcs(g, 3) and is_s_regular(F, g, 3).regular_on_s_arcs
    if forder != 6 * g.vertex_count or not two.regular_on_s_arcs or three_regular:
        contradictions.append("lifted group is not 2-regular of order 6|V|")
    tick("s_regularity")

    pinned = (cover.vertex(U, kg.IDENTITY), cover.vertex(X, kg.IDENTITY))
    inv = edge_reversing_involution(F, g, pinned)
    exhaustive = scan_edge_reversing_involutions(F, g) if forder <= EXHAUSTIVE_SCAN_LIMIT else None
    if two.regular_on_s_arcs:
        type_tag = "2^1" if inv is not None or exhaustive else "2^2"
    else:
        type_tag = "n/a"
    if type_tag != "2^2":
        contradictions.append(f"lifted group has type {type_tag}")
    tick("type")

    one = find_one_regular_subgroups(F, g)
    one_count = len(one.one_regular) if one.applicable else None
    if one_count != 0:
        contradictions.append("a 1-regular subgroup exists")
    tick("one_regular")

    syl = cyclic_sylow2_witness(F, seed)
    if not (syl.is_cyclic and syl.sylow2_order == 4):
        contradictions.append("Sylow 2-subgroup is not cyclic of order 4")
    tick("sylow2")

    try:
        hw = hall_witness(F, g, seed)
        hall = {**asdict(hw), "stabilizer_orders": list(hw.stabilizer_orders),
                "verified": hw.verified}
        if not hw.verified:
            contradictions.append("Hall 2'-subgroup structure differs")
    except NoNormalComplement as exc:
        hall = {"verified": False, "error": str(exc)}
        contradictions.append("no normal Hall 2'-subgroup found")
    tick("hall")

    full = None
    if not skip_full_aut:
        st = full_aut_vertex_stabilizer(g, 0, cap=max(cap, FULL_AUT_CAP))
        aut_order = st.order * g.vertex_count if transitive else None
        full = {"vertex_stabilizer_order": st.order, "aut_order": aut_order,
                "equals_lifted_group": aut_order == forder, "search_nodes": st.nodes}
        if aut_order != forder:
            contradictions.append("full automorphism group is larger than the lifted group")
        tick("full_aut")

    pappus = None
    if is_prime(n):
        pappus = pappus_quotient(cover).passed
        if not pappus:
            contradictions.append("Sylow-p quotient is not the Pappus graph")
        tick("pappus")

    cert = Certificate(
        tool_version=__version__,
        params=p.to_dict(),
        graph=graph_info,
        voltages_generate=cover.voltages_generate,
        walk_table_match=table_ok,
        lifts=lifts,
        k33_automorphisms_lifting=lifting,
        lifted_group_order=forder,
        lifted_group_transitive=transitive,
        arc_regular=is_s_regular(F, g, 1).regular_on_s_arcs,
        two_regular=two.regular_on_s_arcs,
        three_regular=three_regular,
        type=type_tag,
        reversing_involution_at_pinned_arc=inv is not None,
        reversing_involutions_exhaustive=exhaustive,
        index_two_subgroup_count=one.index_two_count,
        one_regular_subgroup_count=one_count,
        sylow2=asdict(syl),
        hall=hall,
        full_aut=full,
        pappus=pappus,
        contradictions=contradictions,
        timings=timings if include_timings else None,
    )
    cert.non_cayley = derive_non_cayley(cert) and not contradictions
    cert.complete = full is not None
    return cert
