"""Brute-force reference implementations used to cross-check the library."""

from __future__ import annotations

from collections import deque
from itertools import permutations

import numpy as np


def closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    """All products of generators (tuples of images), by breadth-first search."""
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def automorphisms_bruteforce(n: int, edges) -> list[tuple[int, ...]]:
    es = {frozenset(e) for e in edges}
    return [p for p in permutations(range(n))
            if all(frozenset((p[a], p[b])) in es for a, b in edges)]


def base_image_order(gens, base) -> int:
    """|G| from the orbit of the base tuple; valid when ``base`` is a base for G."""
    arrs = [np.asarray(g.array) for g in gens]
    start = tuple(base)
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for a in arrs:
            s = tuple(int(a[b]) for b in t)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return len(seen)
