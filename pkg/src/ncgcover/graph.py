"""Simple undirected graphs: predicates, spanning trees, quotients, graph6."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .perm import GeneratedGroup, orbits as group_orbits

ISOMORPHISM_CAP = 200


class NotSemiregular(ValueError):
    """The group does not act semiregularly on the vertices."""


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted."""
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u]]

    def neighbor_array(self) -> np.ndarray:
        """``(N, maxdeg)`` array of neighbors padded with ``N``."""
        arr = self._cache.get("nbr")
        if arr is None:
            d = max((len(a) for a in self.adjacency), default=0)
            arr = np.full((self.vertex_count, d), self.vertex_count, dtype=np.int64)
            for v, a in enumerate(self.adjacency):
                arr[v, :len(a)] = a
            arr.flags.writeable = False
            self._cache["nbr"] = arr
        return arr

    def __eq__(self, other) -> bool:
        return (isinstance(other, SimpleGraph) and self.vertex_count == other.vertex_count
                and self.adjacency == other.adjacency)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.adjacency))


def build_graph(vertex_count: int, edges: Iterable[tuple[int, int]],
                labels: Sequence | None = None) -> SimpleGraph:
    """Canonical simple graph; loops, duplicates and bad endpoints raise ValueError."""
    if vertex_count < 0:
        raise ValueError("negative vertex count")
    adj: list[set[int]] = [set() for _ in range(vertex_count)]
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ValueError(f"edge ({u}, {v}) has an endpoint out of range")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if v in adj[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    if labels is not None and len(labels) != vertex_count:
        raise ValueError("one label per vertex required")
    return SimpleGraph(vertex_count, tuple(tuple(sorted(a)) for a in adj),
                       tuple(labels) if labels is not None else None)


def graph_from_adjacency(adjacency: Sequence[Sequence[int]], labels=None) -> SimpleGraph:
    edges = [(u, v) for u, a in enumerate(adjacency) for v in a if u < v]
    return build_graph(len(adjacency), edges, labels)


# -- predicates -------------------------------------------------------------------


@dataclass(frozen=True)
class GraphPredicates:
    is_cubic: bool
    is_connected: bool
    is_bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None
    girth: float


def components(g: SimpleGraph) -> list[list[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def bipartition(g: SimpleGraph):
    """The two colour classes (class of vertex 0 first), or None."""
    colour = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return (tuple(v for v in range(g.vertex_count) if colour[v] == 0),
            tuple(v for v in range(g.vertex_count) if colour[v] == 1))


def girth(g: SimpleGraph) -> float:
    """Length of a shortest cycle (``math.inf`` for forests), by BFS from every vertex."""
    best = math.inf
    adj = g.adjacency
    for s in range(g.vertex_count):
        dist = {s: 0}
        par = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    queue.append(w)
                elif par[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def predicates(g: SimpleGraph) -> GraphPredicates:
    parts = bipartition(g)
    return GraphPredicates(
        is_cubic=all(len(a) == 3 for a in g.adjacency),
        is_connected=len(components(g)) <= 1,
        is_bipartite=parts is not None,
        parts=parts,
        girth=girth(g),
    )


# -- spanning trees ----------------------------------------------------------------


@dataclass(frozen=True)
class SpanningData:
    root: int
    parent: dict  # vertex -> parent vertex; the root maps to None
    tree_edges: tuple[tuple[int, int], ...]
    cotree_arcs: tuple[tuple[int, int], ...]

    def path_from_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        path.reverse()
        return path


def spanning_tree(g: SimpleGraph, root: int = 0,
                  tree_edges: Iterable[tuple[int, int]] | None = None,
                  cotree_order: Sequence[tuple[int, int]] | None = None) -> SpanningData:
    """Breadth-first spanning tree (ascending neighbours), or the pinned tree given.

    Cotree arcs default to the non-tree edges as (min, max), sorted;
    ``cotree_order`` fixes their order and orientation instead.
    """
    allowed = None
    if tree_edges is not None:
        allowed = {frozenset(e) for e in tree_edges}
        for e in allowed:
            u, v = tuple(e)
            if not g.has_edge(u, v):
                raise ValueError(f"pinned tree edge {tuple(e)} is not an edge")
    parent = {root: None}
    queue = deque([root])
    tree = []
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w in parent:
                continue
            if allowed is not None and frozenset((u, w)) not in allowed:
                continue
            parent[w] = u
            tree.append((min(u, w), max(u, w)))
            queue.append(w)
    if len(parent) != g.vertex_count:
        raise ValueError("graph is disconnected" if allowed is None
                         else "pinned edges do not span the graph")
    if allowed is not None and len(allowed) != len(tree):
        raise ValueError("pinned edges contain a cycle")
    tree_set = {frozenset(e) for e in tree}
    cotree = [e for e in g.edges() if frozenset(e) not in tree_set]
    if cotree_order is not None:
        if sorted((min(a), max(a)) for a in cotree_order) != cotree:
            raise ValueError("cotree_order must list each cotree edge once")
        cotree = [tuple(a) for a in cotree_order]
    return SpanningData(root, parent, tuple(sorted(tree)), tuple(cotree))


def fundamental_cycles(g: SimpleGraph, sp: SpanningData) -> list[tuple[int, ...]]:
    """Closed walk per cotree arc (t, h): root..t, then h..root along the tree."""
    walks = []
    for t, h in sp.cotree_arcs:
        to_tail = sp.path_from_root(t)
        back = sp.path_from_root(h)[::-1]
        walks.append(tuple(to_tail + back))
    return walks


# -- quotients -----------------------------------------------------------------------


def quotient_by(g: SimpleGraph, group: GeneratedGroup) -> tuple[SimpleGraph, list[list[int]]]:
    """Quotient by a semiregular group: vertices are orbits (by smallest member).

    Returns the quotient and the orbits.  Non-semiregular actions and orbits
    containing an edge raise NotSemiregular / ValueError.
    """
    if group.domain_size != g.vertex_count:
        raise ValueError("group degree differs from the vertex count")
    orbs = group_orbits(group)
    order = group.order()
    if any(len(o) != order for o in orbs):
        raise NotSemiregular("some vertex has a nontrivial stabilizer")
    which = [0] * g.vertex_count
    for i, o in enumerate(orbs):
        for v in o:
            which[v] = i
    qedges = set()
    for u, v in g.edges():
        a, b = which[u], which[v]
        if a == b:
            raise ValueError("an edge lies inside an orbit; the quotient has a loop")
        qedges.add((min(a, b), max(a, b)))
    return build_graph(len(orbs), sorted(qedges)), orbs


# -- graph6 -----------------------------------------------------------------------------


def _encode_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("too many vertices for graph6")


def to_graph6(g: SimpleGraph) -> str:
    """Standard graph6 encoding without the ``>>graph6<<`` header."""
    n = g.vertex_count
    nbits = n * (n - 1) // 2
    chars = np.zeros((nbits + 5) // 6, dtype=np.uint8)
    e = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    if len(e):
        idx = e[:, 1] * (e[:, 1] - 1) // 2 + e[:, 0]
        np.bitwise_or.at(chars, idx // 6, (1 << (5 - idx % 6)).astype(np.uint8))
    return (_encode_size(n) + (chars + 63).tobytes()).decode("ascii")


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = np.frombuffer(s.encode("ascii"), dtype=np.uint8).astype(np.int64) - 63
    if len(data) == 0 or data.min() < 0 or data.max() > 63:
        raise ValueError("malformed graph6 string")
    if data[0] != 63:
        n, pos = int(data[0]), 1
    elif len(data) > 1 and data[1] == 63:
        if len(data) < 8:
            raise ValueError("truncated graph6 size field")
        n = 0
        for v in data[2:8]:
            n = (n << 6) | int(v)
        pos = 8
    else:
        if len(data) < 4:
            raise ValueError("truncated graph6 size field")
        n = (int(data[1]) << 12) | (int(data[2]) << 6) | int(data[3])
        pos = 4
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    nz = np.flatnonzero(body)
    bits = []
    for k in nz.tolist():
        v = int(body[k])
        for j in range(6):
            if v >> (5 - j) & 1:
                bits.append(6 * k + j)
    bits = np.array(bits, dtype=np.int64)
    if len(bits) and bits.max() >= nbits:
        raise ValueError("graph6 padding bits are set")
    # invert idx = j(j-1)/2 + i
    col = ((1 + np.sqrt(1 + 8 * bits.astype(np.float64))) // 2).astype(np.int64)
    col -= (col * (col - 1) // 2 > bits)
    col += ((col + 1) * col // 2 <= bits)
    row = bits - col * (col - 1) // 2
    return build_graph(n, zip(row.tolist(), col.tolist()))


def read_edge_list(path: str | Path, vertex_count: int | None = None) -> SimpleGraph:
    """Text file with one ``u v`` pair per line; ``#`` starts a comment."""
    edges = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        u, v = (int(tok) for tok in line.split())
        edges.append((u, v))
    if vertex_count is None:
        vertex_count = 1 + max((max(e) for e in edges), default=-1)
    return build_graph(vertex_count, edges)


def write_edge_list(g: SimpleGraph, path: str | Path) -> None:
    Path(path).write_text("".join(f"{u} {v}\n" for u, v in g.edges()))


# -- small-graph isomorphism -----------------------------------------------------------


def _distance_profile(g: SimpleGraph, s: int) -> tuple[int, ...]:
    dist = {s: 0}
    queue = deque([s])
    counts = [1]
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                if dist[w] == len(counts):
                    counts.append(0)
                counts[dist[w]] += 1
                queue.append(w)
    return tuple(counts)


def isomorphic_small(g1: SimpleGraph, g2: SimpleGraph) -> list[int] | None:
    """Vertex bijection ``m`` with ``g1`` edges mapped onto ``g2`` edges, or None."""
    n = g1.vertex_count
    if max(n, g2.vertex_count) > ISOMORPHISM_CAP:
        raise ValueError(f"isomorphic_small is capped at {ISOMORPHISM_CAP} vertices")
    if n != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    if n == 0:
        return []
    inv1 = [(g1.degree(v), _distance_profile(g1, v)) for v in range(n)]
    inv2 = [(g2.degree(v), _distance_profile(g2, v)) for v in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None
    # order g1's vertices so each is adjacent to an earlier one when possible
    order: list[int] = []
    placed = [False] * n
    for s in range(n):
        if placed[s]:
            continue
        placed[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g1.adjacency[u]:
                if not placed[w]:
                    placed[w] = True
                    queue.append(w)
    mapping = [-1] * n
    used = [False] * n
    adj2 = [set(a) for a in g2.adjacency]

    def candidates(u):
        mapped_nbrs = [mapping[w] for w in g1.adjacency[u] if mapping[w] >= 0]
        pool = g2.adjacency[mapped_nbrs[0]] if mapped_nbrs else range(n)
        for c in pool:
            if used[c] or inv2[c] != inv1[u]:
                continue
            if all(m in adj2[c] for m in mapped_nbrs):
                # mapped non-neighbours must stay non-neighbours
                if sum(1 for w in g2.adjacency[c] if used[w]) == len(mapped_nbrs):
                    yield c

    def extend(i):
        if i == n:
            return True
        u = order[i]
        for c in candidates(u):
            mapping[u] = c
            used[c] = True
            if extend(i + 1):
                return True
            mapping[u] = -1
            used[c] = False
        return False

    return list(mapping) if extend(0) else None


def is_isomorphism(g1: SimpleGraph, g2: SimpleGraph, mapping: Sequence[int]) -> bool:
    if g1.vertex_count != g2.vertex_count or sorted(mapping) != list(range(g1.vertex_count)):
        return False
    return sorted(tuple(sorted((mapping[u], mapping[v]))) for u, v in g1.edges()) == g2.edges()
