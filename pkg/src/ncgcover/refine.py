"""Colour refinement with individualization.

Colours are relabelled canonically after each round (sorted by the pair
(old colour, sorted neighbour colours)), so refining two partitions related by
a graph automorphism produces colourings related by the same automorphism.
Comparing the round-by-round traces therefore prunes branches that cannot
extend to an automorphism.
"""

from __future__ import annotations

import numpy as np

from .graph import SimpleGraph


def _round(nbr: np.ndarray, colors: np.ndarray, ncol: int):
    ext = np.append(colors, -1)
    nc = np.sort(ext[nbr], axis=1) + 1  # sentinel padding becomes 0
    d = nbr.shape[1]
    base = ncol + 1
    if base ** (d + 1) < 2 ** 62:
        key = colors.astype(np.int64)
        for j in range(d):
            key = key * base + nc[:, j]
        uniq, inv = np.unique(key, return_inverse=True)
        return uniq, inv.astype(np.int64)
    rows = np.column_stack([colors, nc])
    uniq, inv = np.unique(rows, axis=0, return_inverse=True)
    return uniq, inv.reshape(-1).astype(np.int64)


def refine(g: SimpleGraph, colors: np.ndarray) -> tuple[np.ndarray, list]:
    """Stable refinement of ``colors`` plus the trace of each round."""
    nbr = g.neighbor_array()
    _, colors = np.unique(colors, return_inverse=True)
    colors = colors.reshape(-1).astype(np.int64)
    ncol = int(colors.max()) + 1 if len(colors) else 0
    trace = []
    while True:
        uniq, new = _round(nbr, colors, ncol)
        trace.append((uniq, np.bincount(new)))
        if len(uniq) == ncol:
            return new, trace
        colors, ncol = new, len(uniq)


def refine_against(g: SimpleGraph, colors: np.ndarray, trace: list) -> np.ndarray | None:
    """Refine ``colors`` while matching a reference trace; None on divergence."""
    nbr = g.neighbor_array()
    _, colors = np.unique(colors, return_inverse=True)
    colors = colors.reshape(-1).astype(np.int64)
    ncol = int(colors.max()) + 1 if len(colors) else 0
    for uniq_ref, counts_ref in trace:
        uniq, new = _round(nbr, colors, ncol)
        if len(uniq) != len(uniq_ref) or not np.array_equal(uniq, uniq_ref):
            return None
        if not np.array_equal(np.bincount(new), counts_ref):
            return None
        colors, ncol = new, len(uniq)
    return colors


def individualize(colors: np.ndarray, v: int) -> np.ndarray:
    out = colors.copy()
    out[v] = int(colors.max()) + 1
    return out


def target_cell(colors: np.ndarray) -> int | None:
    """Colour of the smallest non-singleton cell (smallest colour on ties)."""
    counts = np.bincount(colors)
    big = np.flatnonzero(counts > 1)
    if not len(big):
        return None
    return int(big[np.argmin(counts[big])])


def certified_base(g: SimpleGraph) -> tuple[int, ...]:
    """Vertices whose individualization refines to the discrete partition.

    Refinement is automorphism-equivariant, so any automorphism fixing these
    vertices fixes every vertex: they form a base of ``Aut(g)``.
    """
    colors = np.zeros(g.vertex_count, dtype=np.int64)
    colors, _ = refine(g, colors)
    base = []
    while True:
        cell = target_cell(colors)
        if cell is None:
            return tuple(base)
        v = int(np.flatnonzero(colors == cell)[0])
        base.append(v)
        colors, _ = refine(g, individualize(colors, v))
