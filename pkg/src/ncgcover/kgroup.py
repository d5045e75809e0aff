"""Arithmetic in K = <a, b, c, h> = Z_n^3 x| Z_3.

Elements are kept in the normal form ``a^x b^y c^z h^t`` and stored as
``KElement(x, y, z, t)``.  The relations ``h^-1 a h = a^r`` (likewise for
``b`` and ``c``) give ``h^t a^x = a^(rho^t x) h^t`` with ``rho = r^-1``, hence

    (x1, y1, z1, t1) * (x2, y2, z2, t2)
        = (x1 + rho^t1 x2, y1 + rho^t1 y2, z1 + rho^t1 z2, t1 + t2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

ROOT_SEARCH_CAP = 10 ** 6
ENUMERATION_CAP = 10 ** 7


class NoRootError(ValueError):
    """x^2 + x + 1 has no root modulo n (or n is below 7)."""


def find_unit_cube_roots(n: int) -> list[int]:
    """All r in Z_n with r^2 + r + 1 = 0, ascending, by exhaustive scan."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > ROOT_SEARCH_CAP:
        raise ValueError(f"root search is capped at n <= {ROOT_SEARCH_CAP}")
    return [r for r in range(n) if (r * r + r + 1) % n == 0]


@dataclass(frozen=True)
class KParams:
    n: int
    r: int

    def __post_init__(self):
        n, r = self.n, self.r
        if n < 7 or n % 2 == 0:
            raise ValueError(f"n must be odd and at least 7, got {n}")
        if (r * r + r + 1) % n:
            raise ValueError(f"r={r} is not a root of x^2+x+1 modulo {n}")

    @property
    def rho(self) -> int:
        return self.r * self.r % self.n

    @property
    def order(self) -> int:
        return 3 * self.n ** 3

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r}


def default_params(n: int, root: int | None = None) -> KParams:
    """Params with the smallest root, or with ``root`` after checking it."""
    if n < 7:
        raise NoRootError(f"n={n}: the construction needs n >= 7")
    roots = find_unit_cube_roots(n)
    if not roots:
        raise NoRootError(f"x^2+x+1 has no root modulo {n}")
    if root is None:
        return KParams(n, roots[0])
    if root % n not in roots:
        raise NoRootError(f"{root} is not a root of x^2+x+1 modulo {n}; roots are {roots}")
    return KParams(n, root % n)


class KElement(NamedTuple):
    x: int
    y: int
    z: int
    t: int

    def __str__(self) -> str:
        return f"[{self.x},{self.y},{self.z},{self.t}]"


IDENTITY = KElement(0, 0, 0, 0)
GEN_A = KElement(1, 0, 0, 0)
GEN_B = KElement(0, 1, 0, 0)
GEN_C = KElement(0, 0, 1, 0)
GEN_H = KElement(0, 0, 0, 1)
GENERATORS = {"a": GEN_A, "b": GEN_B, "c": GEN_C, "h": GEN_H}


def element(p: KParams, x: int, y: int, z: int, t: int) -> KElement:
    n = p.n
    return KElement(x % n, y % n, z % n, t % 3)


def multiply(p: KParams, e1: KElement, e2: KElement) -> KElement:
    n = p.n
    s = pow(p.rho, e1.t, n)
    return KElement((e1.x + s * e2.x) % n, (e1.y + s * e2.y) % n,
                    (e1.z + s * e2.z) % n, (e1.t + e2.t) % 3)


def inverse(p: KParams, e: KElement) -> KElement:
    n = p.n
    s = pow(p.r, e.t, n)
    return KElement(-s * e.x % n, -s * e.y % n, -s * e.z % n, -e.t % 3)


def power(p: KParams, e: KElement, k: int) -> KElement:
    if k < 0:
        e, k = inverse(p, e), -k
    result = IDENTITY
    while k:
        if k & 1:
            result = multiply(p, result, e)
        e = multiply(p, e, e)
        k >>= 1
    return result


def product(p: KParams, elems: Iterable[KElement]) -> KElement:
    result = IDENTITY
    for e in elems:
        result = multiply(p, result, e)
    return result


def conjugate(p: KParams, e: KElement, by: KElement) -> KElement:
    """``by^-1 e by``."""
    return product(p, (inverse(p, by), e, by))


def commutator(p: KParams, e1: KElement, e2: KElement) -> KElement:
    return product(p, (inverse(p, e1), inverse(p, e2), e1, e2))


# -- words ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([abch])(?:\^(\{[^}]*\}|[-+]?\w+))?")
_EXPONENT = re.compile(r"^([-+]?)\s*(?:(\d+)|([A-Za-z]\w*)(?:\^(\d+))?)$")


def parse_word(word: str, symbols: Mapping[str, int] | None = None) -> list[tuple[str, int]]:
    """Parse ``"h^{-1}a^{r}b^{-r^2}"`` into ``[("h", -1), ("a", r), ("b", -r*r)]``.

    Exponents are signed integers or a symbol from ``symbols`` optionally
    raised to a nonnegative integer power; braces are optional.
    """
    symbols = dict(symbols or {})
    out = []
    pos = 0
    text = word.strip()
    if text in ("", "1", "e"):
        return out
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {word!r} at position {pos}")
        letter, exp = m.group(1), m.group(2)
        out.append((letter, 1 if exp is None else _eval_exponent(exp, symbols, word)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _eval_exponent(exp: str, symbols: Mapping[str, int], word: str) -> int:
    exp = exp.strip("{}").strip()
    m = _EXPONENT.match(exp)
    if not m:
        raise ValueError(f"bad exponent {exp!r} in {word!r}")
    sign, num, sym, pw = m.groups()
    if num is not None:
        value = int(num)
    else:
        if sym not in symbols:
            raise ValueError(f"unknown symbol {sym!r} in {word!r}")
        value = symbols[sym] ** (int(pw) if pw else 1)
    return -value if sign == "-" else value


def normalize_word(p: KParams, word: str | Sequence[tuple[str, int]]) -> KElement:
    """Normal form of a word; the symbol ``r`` stands for the params' root."""
    letters = parse_word(word, {"r": p.r}) if isinstance(word, str) else word
    return product(p, (power(p, GENERATORS[g], k) for g, k in letters))


def format_element(e: KElement) -> str:
    """Normal-form word, e.g. ``a^2 c^5 h``."""
    parts = []
    for letter, k in zip("abch", e):
        if k == 1:
            parts.append(letter)
        elif k:
            parts.append(f"{letter}^{k}")
    return " ".join(parts) or "1"


# -- enumeration and automorphism checks -------------------------------------------


def element_index(p: KParams, e: KElement) -> int:
    """Position in the lexicographic order on (x, y, z, t)."""
    n = p.n
    x, y, z, t = e
    return ((x * n + y) * n + z) * 3 + t


def element_at(p: KParams, index: int) -> KElement:
    n = p.n
    index, t = divmod(index, 3)
    index, z = divmod(index, n)
    x, y = divmod(index, n)
    return KElement(x, y, z, t)


def enumerate_elements(p: KParams) -> list[KElement]:
    if p.order > ENUMERATION_CAP:
        raise ValueError(f"|K| = {p.order} exceeds the enumeration cap {ENUMERATION_CAP}")
    n = p.n
    return [KElement(x, y, z, t) for x in range(n) for y in range(n)
            for z in range(n) for t in range(3)]


def generated_subgroup(p: KParams, gens: Iterable[KElement]) -> set[KElement]:
    """Closure of ``gens`` under right multiplication by generators."""
    gens = [g for g in gens if g != IDENTITY]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = multiply(p, e, g)
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class ImageCheck:
    is_endomorphism: bool
    is_automorphism: bool
    failed_relations: tuple[str, ...]


def check_generator_images(p: KParams, images: Mapping[str, KElement]) -> ImageCheck:
    """Decide whether a, b, c, h -> images extends to an endomorphism / automorphism."""
    if set(images) != set("abch"):
        raise ValueError("images must be given for exactly a, b, c, h")
    A, B, C, H = (images[k] for k in "abch")
    n, r = p.n, p.r
    failed = []
    for name, e in (("a", A), ("b", B), ("c", C)):
        if power(p, e, n) != IDENTITY:
            failed.append(f"{name}^n")
    if power(p, H, 3) != IDENTITY:
        failed.append("h^3")
    for name, e1, e2 in (("[a,b]", A, B), ("[a,c]", A, C), ("[b,c]", B, C)):
        if commutator(p, e1, e2) != IDENTITY:
            failed.append(name)
    for name, e in (("a", A), ("b", B), ("c", C)):
        if conjugate(p, e, H) != power(p, e, r):
            failed.append(f"{name}^h=={name}^r")
    endo = not failed
    auto = endo and len(generated_subgroup(p, (A, B, C, H))) == p.order
    return ImageCheck(endo, auto, tuple(failed))


def apply_homomorphism(p: KParams, images: Mapping[str, KElement], e: KElement) -> KElement:
    """Image of ``a^x b^y c^z h^t`` under the map fixed by generator images."""
    return product(p, (power(p, images["a"], e.x), power(p, images["b"], e.y),
                       power(p, images["c"], e.z), power(p, images["h"], e.t)))


class KGroup:
    """K packaged for voltage assignments (identity, multiply, inverse, indexing)."""

    def __init__(self, params: KParams):
        self.params = params
        self.order = params.order

    identity = IDENTITY

    def multiply(self, e1: KElement, e2: KElement) -> KElement:
        return multiply(self.params, e1, e2)

    def inverse(self, e: KElement) -> KElement:
        return inverse(self.params, e)

    def elements(self) -> list[KElement]:
        return enumerate_elements(self.params)

    def index(self, e: KElement) -> int:
        return element_index(self.params, e)

    def generated(self, gens: Iterable[KElement]) -> set[KElement]:
        return generated_subgroup(self.params, gens)

    def named_generators(self) -> dict[str, KElement]:
        return dict(GENERATORS)

    def serialize(self, e: KElement) -> list[int]:
        return list(e)

    def __eq__(self, other) -> bool:
        return isinstance(other, KGroup) and other.params == self.params

    def __hash__(self) -> int:
        return hash(self.params)


class CyclicGroup:
    """Z_m under addition, for small covers such as the Pappus graph."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.order = m

    identity = 0

    def multiply(self, e1: int, e2: int) -> int:
        return (e1 + e2) % self.m

    def inverse(self, e: int) -> int:
        return -e % self.m

    def elements(self) -> list[int]:
        return list(range(self.m))

    def index(self, e: int) -> int:
        return e % self.m

    def generated(self, gens: Iterable[int]) -> set[int]:
        from math import gcd
        d = self.m
        for g in gens:
            d = gcd(d, g)
        return set(range(0, self.m, d))

    def named_generators(self) -> dict[str, int]:
        return {"g": 1 % self.m}

    def serialize(self, e: int) -> list[int]:
        return [e]

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroup) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("Z", self.m))
