"""Permutation groups acting on the index domain {0, ..., N-1}.

Composition convention: ``compose(p, q)`` applies ``p`` first and then ``q``,
so ``compose(p, q)(i) == q(p(i))``.  Conjugation is ``s ** x = x^-1 s x`` and the
commutator is ``[x, y] = x^-1 y^-1 x y``, both read left to right.

Groups carry an optional *certified base*: points whose pointwise stabilizer in
some ambient group containing every generator is trivial (for instance a base
of the automorphism group of a graph the generators preserve).  When present,
products of generators are tested for being the identity on those points only,
which keeps Schreier-Sims affordable at degrees in the tens of thousands.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


class NoNormalComplement(Exception):
    """Raised when no odd-order normal subgroup of 2-power index was found."""


def two_part(m: int) -> int:
    """Largest power of two dividing ``m``."""
    if m <= 0:
        raise ValueError("two_part needs a positive integer")
    return m & -m


class Permutation:
    """A bijection of {0, ..., N-1}, stored as its image array."""

    __slots__ = ("_arr", "_list", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        arr = np.array(list(images) if not isinstance(images, np.ndarray) else images,
                       dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("permutation images must be one-dimensional")
        if check and len(arr):
            n = len(arr)
            if arr.min() < 0 or arr.max() >= n or np.bincount(arr, minlength=n).max() != 1:
                raise ValueError("images do not form a bijection")
        arr.flags.writeable = False
        self._arr = arr
        self._list = None
        self._hash = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        arr.flags.writeable = False
        p._arr = arr
        p._list = None
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._wrap(np.arange(n, dtype=np.int64))

    @classmethod
    def from_cycles(cls, cycles: str | Iterable[Iterable[int]], n: int) -> "Permutation":
        """Build from disjoint cycles, e.g. ``"(0 1 2)(3 4)"`` or ``[[0, 1, 2], [3, 4]]``."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        arr = np.arange(n, dtype=np.int64)
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for i, a in enumerate(cyc):
                if not 0 <= a < n:
                    raise ValueError(f"point {a} outside domain of size {n}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycles")
                seen.add(a)
                arr[a] = cyc[(i + 1) % len(cyc)]
        return cls._wrap(arr)

    @property
    def size(self) -> int:
        return len(self._arr)

    def __len__(self) -> int:
        return len(self._arr)

    @property
    def array(self) -> np.ndarray:
        """Read-only image array; ``array[i]`` is the image of ``i``."""
        return self._arr

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self.as_list())

    def as_list(self) -> list[int]:
        if self._list is None:
            self._list = self._arr.tolist()
        return self._list

    def __call__(self, i: int) -> int:
        return int(self._arr[i])

    def compose(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        if len(other) != len(self):
            raise ValueError("domain size mismatch")
        return Permutation._wrap(other._arr[self._arr])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._arr)
        inv[self._arr] = np.arange(len(self._arr), dtype=np.int64)
        return Permutation._wrap(inv)

    def power(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = np.arange(len(self._arr), dtype=np.int64)
        b = base._arr
        while k:
            if k & 1:
                result = b[result]
            b = b[b]
            k >>= 1
        return Permutation._wrap(result)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._arr, np.arange(len(self._arr))))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        img = self.as_list()
        seen = [False] * len(img)
        out = []
        for i in range(len(img)):
            if seen[i] or img[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = img[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if len(self._arr) else 1

    def support(self) -> list[int]:
        return np.flatnonzero(self._arr != np.arange(len(self._arr))).tolist()

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self._arr, other._arr)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._arr.tobytes())
        return self._hash

    def __repr__(self) -> str:
        if len(self._arr) <= 64:
            return f"Permutation({self.cycle_string()}, n={len(self._arr)})"
        return f"Permutation(<{len(self.support())} moved points>, n={len(self._arr)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse ``"(0 1 2)(3 4)"``; commas are accepted as separators."""
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"malformed cycle string {text!r}")
    return [[int(tok) for tok in body.replace(",", " ").split()]
            for body in _CYCLE_RE.findall(stripped)]


def compose(*perms: Permutation) -> Permutation:
    """Product applying the arguments left to right."""
    if not perms:
        raise ValueError("compose needs at least one permutation")
    n = len(perms[0])
    arr = perms[0].array
    for q in perms[1:]:
        if len(q) != n:
            raise ValueError("domain size mismatch")
        arr = q.array[arr]
    return Permutation._wrap(np.array(arr))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def conjugate(s: Permutation, x: Permutation) -> Permutation:
    """``x^-1 s x``."""
    return compose(x.inverse(), s, x)


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """``x^-1 y^-1 x y``."""
    return compose(x.inverse(), y.inverse(), x, y)


# --------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("base", "gen_ids", "parent", "orbit", "tested")

    def __init__(self, base: int):
        self.base = base
        self.gen_ids: list[int] = []
        # point -> (previous point, strong generator id); the root maps to None
        self.parent: dict[int, tuple[int, int] | None] = {base: None}
        self.orbit: list[int] = [base]
        self.tested: dict[int, int] = {}

    def copy(self) -> "_Level":
        c = _Level(self.base)
        c.gen_ids = list(self.gen_ids)
        c.parent = dict(self.parent)
        c.orbit = list(self.orbit)
        c.tested = dict(self.tested)
        return c


def _apply(word, p: int) -> int:
    for lst, _ in word:
        p = lst[p]
    return p


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Base points are the prefix given at construction followed by the smallest
    point moved by each new strong generator.  Transversals are Schreier trees
    grown breadth-first.  Group elements are written ``h`` then ``u`` with ``u``
    a transversal element of the first level and ``h`` in the stabilizer.
    """

    def __init__(self, domain_size: int, base_prefix: Sequence[int] = (),
                 certified_base: Sequence[int] | None = None):
        self.domain_size = domain_size
        self._certified = tuple(certified_base) if certified_base is not None else None
        self._strong: list[Permutation] = []
        self._fwd: list[tuple[list[int], np.ndarray]] = []
        self._inv: list[tuple[list[int], np.ndarray]] = []
        if len(set(base_prefix)) != len(base_prefix):
            raise ValueError("repeated base point")
        for b in base_prefix:
            if not 0 <= b < domain_size:
                raise ValueError(f"base point {b} out of range")
        self._levels: list[_Level] = [_Level(b) for b in base_prefix]

    def copy(self) -> "StabilizerChain":
        c = StabilizerChain.__new__(StabilizerChain)
        c.domain_size = self.domain_size
        c._certified = self._certified
        c._strong = list(self._strong)
        c._fwd = list(self._fwd)
        c._inv = list(self._inv)
        c._levels = [lvl.copy() for lvl in self._levels]
        return c

    def tail(self, start: int) -> "StabilizerChain":
        """Chain of the pointwise stabilizer of the first ``start`` base points."""
        c = self.copy()
        c._levels = c._levels[start:]
        return c

    # -- queries -----------------------------------------------------------

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.base for lvl in self._levels)

    @property
    def basic_orbit_lengths(self) -> tuple[int, ...]:
        return tuple(len(lvl.orbit) for lvl in self._levels)

    def basic_orbit(self, level: int) -> list[int]:
        return list(self._levels[level].orbit)

    @property
    def certified_base(self):
        return self._certified

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths)

    def strong_generators(self, level: int = 0) -> list[Permutation]:
        if level >= len(self._levels):
            return []
        return [self._strong[g] for g in self._levels[level].gen_ids]

    def all_strong_generators(self) -> list[Permutation]:
        ids = sorted({g for lvl in self._levels for g in lvl.gen_ids})
        return [self._strong[g] for g in ids]

    def transversal_element(self, level: int, point: int) -> Permutation:
        lvl = self._levels[level]
        if point not in lvl.parent:
            raise KeyError(point)
        return Permutation._wrap(self._materialize(self._fwd_path(lvl, point)))

    def contains(self, p: Permutation, *, trusted: bool = False) -> bool:
        """Sift ``p``.  ``trusted`` asserts ``p`` lies in the ambient group of the
        certified base, so the final identity test may use that base only."""
        if len(p) != self.domain_size:
            raise ValueError("domain size mismatch")
        word = [(p.as_list(), p.array)]
        _, drop, ident = self._sift(word, 0, trusted)
        return drop == len(self._levels) and ident

    def sift_residue(self, p: Permutation) -> tuple[Permutation, int]:
        """Residue of sifting and the level where sifting stopped."""
        word = [(p.as_list(), p.array)]
        w, drop, _ = self._sift(word, 0, False)
        return Permutation._wrap(self._materialize(w)), drop

    # -- construction ----------------------------------------------------------

    def add_generator(self, p: Permutation, *, trusted: bool = True) -> bool:
        """Extend the group by ``p``; returns False when ``p`` was already a member."""
        if len(p) != self.domain_size:
            raise ValueError("domain size mismatch")
        if p.is_identity():
            return False
        word = [(p.as_list(), p.array)]
        w, drop, ident = self._sift(word, 0, trusted)
        if drop == len(self._levels) and ident:
            return False
        h = Permutation._wrap(self._materialize(w))
        self._install(h, 0, drop)
        self._complete(drop)
        return True

    def _register(self, h: Permutation) -> int:
        self._strong.append(h)
        self._fwd.append((h.as_list(), h.array))
        hi = h.inverse()
        self._inv.append((hi.as_list(), hi.array))
        return len(self._strong) - 1

    def _install(self, h: Permutation, lo: int, hi: int) -> None:
        gid = self._register(h)
        for li in range(lo, hi + 1):
            if li == len(self._levels):
                moved = np.flatnonzero(h.array != np.arange(self.domain_size))
                self._levels.append(_Level(int(moved[0])))
            self._extend_orbit(self._levels[li], gid)

    def _extend_orbit(self, lvl: _Level, gid: int) -> None:
        lvl.gen_ids.append(gid)
        parent, orbit = lvl.parent, lvl.orbit
        g = self._fwd[gid][0]
        queue = deque()
        for x in list(orbit):
            y = g[x]
            if y not in parent:
                parent[y] = (x, gid)
                orbit.append(y)
                queue.append(y)
        gens = [(k, self._fwd[k][0]) for k in lvl.gen_ids]
        while queue:
            x = queue.popleft()
            for k, gl in gens:
                y = gl[x]
                if y not in parent:
                    parent[y] = (x, k)
                    orbit.append(y)
                    queue.append(y)

    def _fwd_path(self, lvl: _Level, x: int) -> list:
        maps = []
        parent = lvl.parent
        step = parent[x]
        while step is not None:
            prev, gid = step
            maps.append(self._fwd[gid])
            step = parent[prev]
        maps.reverse()
        return maps

    def _inv_path(self, lvl: _Level, y: int) -> list:
        maps = []
        parent = lvl.parent
        step = parent[y]
        while step is not None:
            prev, gid = step
            maps.append(self._inv[gid])
            step = parent[prev]
        return maps

    def _materialize(self, word) -> np.ndarray:
        arr = np.arange(self.domain_size, dtype=np.int64)
        for _, a in word:
            arr = a[arr]
        return arr

    def _sift(self, word, start: int, trusted: bool, imgs=None):
        """Sift from level ``start``; returns (word, drop level, is_identity)."""
        levels = self._levels
        use_cert = trusted and self._certified is not None
        probes = [lvl.base for lvl in levels[start:]]
        if use_cert:
            probes += list(self._certified)
        if imgs is None:
            imgs = [_apply(word, p) for p in probes]
        word = list(word)
        for j in range(start, len(levels)):
            lvl = levels[j]
            y = imgs[j - start]
            if y not in lvl.parent:
                return word, j, False
            if y != lvl.base:
                suffix = self._inv_path(lvl, y)
                word.extend(suffix)
                new = []
                for q in imgs:
                    for lst, _ in suffix:
                        q = lst[q]
                    new.append(q)
                imgs = new
        if use_cert:
            k = len(levels) - start
            ident = imgs[k:] == list(self._certified)
        else:
            ident = bool(np.array_equal(self._materialize(word), np.arange(self.domain_size)))
        return word, len(levels), ident

    def _complete(self, i: int) -> None:
        while i >= 0:
            found = self._check_level(i)
            if found is None:
                i -= 1
                continue
            h, drop = found
            self._install(h, i + 1, drop)
            i = drop

    def _check_level(self, i: int):
        lvl = self._levels[i]
        levels = self._levels
        probes = [lv.base for lv in levels[i + 1:]]
        if self._certified is not None:
            probes += list(self._certified)
        parent = lvl.parent
        for x in lvl.orbit:
            start = lvl.tested.get(x, 0)
            ngens = len(lvl.gen_ids)
            if start >= ngens:
                continue
            path = self._fwd_path(lvl, x)
            imgs_x = [_apply(path, p) for p in probes]
            for k in range(start, ngens):
                lvl.tested[x] = k + 1
                gid = lvl.gen_ids[k]
                g = self._fwd[gid][0]
                y = g[x]
                if parent[y] == (x, gid):
                    continue
                inv = self._inv_path(lvl, y)
                imgs = []
                for q in imgs_x:
                    q = g[q]
                    for lst, _ in inv:
                        q = lst[q]
                    imgs.append(q)
                word = path + [self._fwd[gid]] + inv
                w, drop, ident = self._sift(word, i + 1, True, imgs)
                if drop < len(levels) or not ident:
                    return Permutation._wrap(self._materialize(w)), drop
        return None

    # -- enumeration ------------------------------------------------------------

    def _transversal_arrays(self, level: int) -> Iterator[tuple[int, np.ndarray]]:
        """Yield (point, transversal element) by depth-first walk of the tree."""
        lvl = self._levels[level]
        children: dict[int, list[tuple[int, int]]] = {}
        for y in lvl.orbit:
            step = lvl.parent[y]
            if step is not None:
                children.setdefault(step[0], []).append((y, step[1]))
        stack = [(lvl.base, np.arange(self.domain_size, dtype=np.int64))]
        while stack:
            x, arr = stack.pop()
            yield x, arr
            for y, gid in reversed(children.get(x, [])):
                stack.append((y, self._fwd[gid][1][arr]))

    def iter_element_arrays(self) -> Iterator[np.ndarray]:
        """Every group element exactly once, as image arrays."""
        if not self._levels:
            yield np.arange(self.domain_size, dtype=np.int64)
            return
        lower = [np.arange(self.domain_size, dtype=np.int64)]
        for li in range(len(self._levels) - 1, 0, -1):
            trans = [a for _, a in self._transversal_arrays(li)]
            lower = [u[h] for u in trans for h in lower]
        for _, u in self._transversal_arrays(0):
            for h in lower:
                yield u[h]

    def element_order(self, arr: np.ndarray) -> int:
        """Order of a group element given by its image array."""
        if self._certified is None:
            return Permutation._wrap(arr).order()
        result = 1
        for b in self._certified:
            length = 1
            p = arr[b]
            while p != b:
                p = arr[p]
                length += 1
            result = math.lcm(result, length)
        return result


# --------------------------------------------------------------------------
# generated groups


class GeneratedGroup:
    """A permutation group given by generators, with an optional chain.

    The chain is built on first use and cached; the group itself never changes.
    """

    def __init__(self, domain_size: int, generators: Iterable[Permutation] = (), *,
                 certified_base: Sequence[int] | None = None,
                 chain: StabilizerChain | None = None):
        gens = tuple(generators)
        for g in gens:
            if len(g) != domain_size:
                raise ValueError("generator domain size mismatch")
        self.domain_size = domain_size
        self.generators = gens
        self.certified_base = tuple(certified_base) if certified_base is not None else None
        self._chain = chain

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = _build_chain(self, ())
        return self._chain

    @property
    def has_chain(self) -> bool:
        return self._chain is not None

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        return self.chain.contains(p)

    def orbit(self, point: int) -> list[int]:
        return _orbit_tree(self, point)[0]

    def orbits(self) -> list[list[int]]:
        return orbits(self)

    def elements(self) -> Iterator[Permutation]:
        for arr in self.chain.iter_element_arrays():
            yield Permutation._wrap(arr)

    def __repr__(self) -> str:
        return f"GeneratedGroup(degree={self.domain_size}, ngens={len(self.generators)})"


def _build_chain(g: GeneratedGroup, base_prefix: Sequence[int]) -> StabilizerChain:
    chain = StabilizerChain(g.domain_size, base_prefix, g.certified_base)
    for p in g.generators:
        chain.add_generator(p, trusted=True)
    return chain


def build_stabilizer_chain(g: GeneratedGroup, base_prefix: Sequence[int] = ()) -> GeneratedGroup:
    """Same group with a freshly built chain whose base starts with ``base_prefix``."""
    if g.domain_size <= 0:
        raise ValueError("empty domain")
    if not base_prefix and g.has_chain:
        return g
    return GeneratedGroup(g.domain_size, g.generators, certified_base=g.certified_base,
                          chain=_build_chain(g, base_prefix))


def membership_test(g: GeneratedGroup, p: Permutation) -> bool:
    if len(p) != g.domain_size:
        raise ValueError("domain size mismatch")
    return g.chain.contains(p)


class Transversal(Mapping):
    """Lazy map from orbit points to group elements carrying the root there."""

    def __init__(self, domain_size: int, root: int, parent: dict, gens: Sequence[Permutation]):
        self._n = domain_size
        self._root = root
        self._parent = parent
        self._gens = gens

    def __getitem__(self, x: int) -> Permutation:
        if x not in self._parent:
            raise KeyError(x)
        path = []
        while self._parent[x] is not None:
            x, k = self._parent[x]
            path.append(k)
        arr = np.arange(self._n, dtype=np.int64)
        for k in reversed(path):
            arr = self._gens[k].array[arr]
        return Permutation._wrap(arr)

    def __iter__(self):
        return iter(self._parent)

    def __len__(self) -> int:
        return len(self._parent)


def _orbit_tree(g: GeneratedGroup, point: int):
    if not 0 <= point < g.domain_size:
        raise ValueError(f"point {point} out of range")
    gens = [p.as_list() for p in g.generators]
    parent = {point: None}
    orbit = [point]
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for k, gl in enumerate(gens):
            y = gl[x]
            if y not in parent:
                parent[y] = (x, k)
                orbit.append(y)
                queue.append(y)
    return orbit, parent


def orbit_with_transversal(g: GeneratedGroup, point: int) -> tuple[frozenset[int], Transversal]:
    orbit, parent = _orbit_tree(g, point)
    return frozenset(orbit), Transversal(g.domain_size, point, parent, g.generators)


def orbits(g: GeneratedGroup) -> list[list[int]]:
    """All orbits, each sorted, ordered by smallest point."""
    n = g.domain_size
    label = list(range(n))

    def find(a):
        while label[a] != a:
            label[a] = label[label[a]]
            a = label[a]
        return a

    for p in g.generators:
        img = p.as_list()
        for i in range(n):
            a, b = find(i), find(img[i])
            if a != b:
                if a < b:
                    label[b] = a
                else:
                    label[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def point_stabilizer(g: GeneratedGroup, point: int) -> GeneratedGroup:
    """Stabilizer of ``point``, with its chain, from a chain based at ``point``."""
    if not 0 <= point < g.domain_size:
        raise ValueError(f"point {point} out of range")
    full = build_stabilizer_chain(g, (point,)).chain
    sub = full.tail(1)
    return GeneratedGroup(g.domain_size, full.strong_generators(1),
                          certified_base=g.certified_base, chain=sub)


def _close_normally(chain: StabilizerChain, gens: list[Permutation],
                    ambient: Sequence[Permutation]) -> list[Permutation]:
    i = 0
    while i < len(gens):
        s = gens[i]
        for x in ambient:
            c = conjugate(s, x)
            if chain.add_generator(c, trusted=True):
                gens.append(c)
        i += 1
    return gens


def normal_closure(g: GeneratedGroup, elements: Iterable[Permutation]) -> GeneratedGroup:
    """Smallest normal subgroup of ``g`` containing ``elements`` (assumed in ``g``)."""
    chain = StabilizerChain(g.domain_size, (), g.certified_base)
    gens = [e for e in elements if chain.add_generator(e, trusted=True)]
    gens = _close_normally(chain, gens, g.generators)
    return GeneratedGroup(g.domain_size, gens, certified_base=g.certified_base, chain=chain)


def index_two_subgroups(g: GeneratedGroup) -> list[GeneratedGroup]:
    """All subgroups of index 2, as preimages of hyperplanes of ``g / N``.

    ``N`` is the normal closure of the squares and commutators of the
    generators, so ``g / N`` is elementary abelian of order ``2^k``.  Subgroups
    are listed by the functional bitmask on the basis picked greedily from the
    generators.
    """
    order = g.order()
    if order % 2:
        return []
    gens = list(g.generators)
    rel = [compose(x, x) for x in gens]
    rel += [commutator(x, y) for i, x in enumerate(gens) for y in gens[i + 1:]]
    nsub = normal_closure(g, rel)
    span = nsub.chain.copy()
    basis: list[Permutation] = []
    for x in gens:
        if span.add_generator(x, trusted=True):
            basis.append(x)
    k = len(basis)
    if nsub.order() * 2 ** k != order:
        raise RuntimeError("quotient by squares and commutators is not elementary abelian")
    if k > 16:
        raise ValueError("2-quotient rank too large to enumerate hyperplanes")

    def vector(x: Permutation) -> int:
        for v in range(1 << k):
            prod = x
            for j in range(k):
                if v >> j & 1:
                    prod = compose(prod, basis[j].inverse())
            if nsub.chain.contains(prod, trusted=True):
                return v
        raise RuntimeError("generator outside the span of the 2-quotient basis")

    coords = [vector(x) for x in gens]
    result = []
    for f in range(1, 1 << k):
        signs = [bin(f & v).count("1") & 1 for v in coords]
        odd = [x for x, s in zip(gens, signs) if s]
        kgens = list(nsub.generators) + [x for x, s in zip(gens, signs) if not s]
        x0 = odd[0]
        kgens.append(compose(x0, x0))
        kgens += [compose(x0, x) for x in odd[1:]]
        sub = GeneratedGroup(g.domain_size, kgens, certified_base=g.certified_base)
        if sub.order() * 2 != order:
            raise RuntimeError("hyperplane preimage does not have index 2")
        result.append(sub)
    return result


def _random_elements(g: GeneratedGroup, count: int, seed: int, length: int = 12):
    rng = random.Random(seed)
    gens = list(g.generators)
    for _ in range(count):
        arr = np.arange(g.domain_size, dtype=np.int64)
        for _ in range(length):
            arr = rng.choice(gens).array[arr]
        yield Permutation._wrap(arr)


def odd_order_core(g: GeneratedGroup, seed: int = 0) -> GeneratedGroup:
    """Normal subgroup of odd order and 2-power index, built from odd parts.

    Odd parts ``x^(2-part of |x|)`` of generators, their pairwise products and
    seeded random products are added, closed under conjugation, until the
    index reaches the 2-part of the group order.
    """
    order = g.order()
    target = order // two_part(order)
    chain = StabilizerChain(g.domain_size, (), g.certified_base)
    hgens: list[Permutation] = []
    gens = list(g.generators)

    def candidates():
        yield from gens
        for i, x in enumerate(gens):
            for y in gens[i + 1:]:
                yield compose(x, y)
        yield from _random_elements(g, 200, seed)

    for x in candidates():
        if chain.order() == target:
            break
        y = x.power(two_part(x.order()))
        if chain.add_generator(y, trusted=True):
            hgens.append(y)
            hgens = _close_normally(chain, hgens, gens)
    h = GeneratedGroup(g.domain_size, hgens, certified_base=g.certified_base, chain=chain)
    horder = chain.order()
    index = order // horder
    normal = all(chain.contains(conjugate(s, x), trusted=True) for s in hgens for x in gens)
    if not (normal and horder % 2 == 1 and index == two_part(index) and order % horder == 0):
        raise NoNormalComplement(f"found subgroup of order {horder} in group of order {order}")
    return h


@dataclass(frozen=True)
class Sylow2Witness:
    max_two_element_order: int
    sylow2_order: int
    is_cyclic: bool
    exhaustive: bool
    elements_scanned: int


def cyclic_sylow2_witness(g: GeneratedGroup, seed: int = 0,
                          exhaustive_limit: int = 10 ** 6, samples: int = 2000) -> Sylow2Witness:
    """Compare the largest 2-power element order with the 2-part of ``|g|``.

    A cyclic Sylow 2-subgroup is equivalent to having an element of order equal
    to that 2-part.  Below ``exhaustive_limit`` every element is scanned.
    """
    chain = g.chain
    order = chain.order()
    sylow = two_part(order)
    best = 1
    scanned = 0
    exhaustive = order <= exhaustive_limit
    if exhaustive:
        for arr in chain.iter_element_arrays():
            scanned += 1
            best = max(best, two_part(chain.element_order(arr)))
    else:
        for x in list(g.generators) + list(_random_elements(g, samples, seed)):
            scanned += 1
            best = max(best, two_part(chain.element_order(x.array)))
    return Sylow2Witness(best, sylow, best == sylow, exhaustive, scanned)


@dataclass(frozen=True)
class TransitivityReport:
    transitive: bool
    semiregular: bool
    regular: bool
    orbit_count: int


def transitivity_predicates(g: GeneratedGroup, domain_subset: Iterable[int]) -> TransitivityReport:
    subset = set(domain_subset)
    if not subset:
        raise ValueError("empty subset")
    order = g.order()
    seen: set[int] = set()
    sizes = []
    for x in sorted(subset):
        if x in seen:
            continue
        orb = g.orbit(x)
        seen.update(orb)
        sizes.append(len(orb))
    transitive = len(sizes) == 1 and seen == subset
    semiregular = all(s == order for s in sizes)
    return TransitivityReport(transitive, semiregular, transitive and semiregular, len(sizes))
