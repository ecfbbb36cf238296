"""The sandwich product on T_n and Green's structure of the variant T_n^a.

Everything in this module is computed by formula from kernels, images and
ranks.  The brute-force counterparts live in :mod:`sandwich.engine` and the
two are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import (
    SandwichElement,
    Transformation,
    all_transformations,
    compose,
    kernel_key,
    parse_transformation,
    rank,
    rank_class_size,
)
from . import engine

RELATIONS = ("R", "L", "H", "D")
CASES = ("regular", "R", "L", "singleton")


def as_sandwich(s) -> SandwichElement:
    if isinstance(s, SandwichElement):
        return s
    return SandwichElement(s)


def _sandwich_map(s) -> Transformation:
    if isinstance(s, SandwichElement):
        return s.a
    if isinstance(s, str):
        return parse_transformation(s)
    return s if isinstance(s, Transformation) else Transformation(s)


def star(f: Transformation, g: Transformation, s) -> Transformation:
    """The variant product f*a*g.  ``s`` may be any transformation, not only an idempotent."""
    a = _sandwich_map(s)
    if not len(f) == len(g) == len(a):
        raise ValueError(f"degree mismatch: {len(f)}, {len(a)}, {len(g)}")
    return Transformation._raw([g[a[v]] for v in f])


def normalize_sandwich(b) -> tuple[SandwichElement, Transformation]:
    """Return ``(SandwichElement(b*p), p)`` with p a permutation making b*p idempotent.

    Each image point of b is sent to the least point of its preimage; the
    remaining points go to the remaining targets in ascending order.  The
    map x -> p*x is then an isomorphism from T_n^{bp} onto T_n^b.
    """
    b = _sandwich_map(b)
    n = len(b)
    p = [-1] * n
    for x in range(n):
        y = b[x]
        if p[y] < 0:
            p[y] = x  # first x in increasing order is the least in the block
    used = set(v for v in p if v >= 0)
    free = iter(v for v in range(n) if v not in used)
    for y in range(n):
        if p[y] < 0:
            p[y] = next(free)
    perm = Transformation._raw(p)
    return SandwichElement(compose(b, perm)), perm


# --- P1, P2, P --------------------------------------------------------------


@dataclass(frozen=True)
class PClassification:
    in_P1: bool
    in_P2: bool

    @property
    def in_P(self) -> bool:
        return self.in_P1 and self.in_P2

    @property
    def case(self) -> str:
        if self.in_P:
            return "regular"
        if self.in_P1:
            return "R"
        if self.in_P2:
            return "L"
        return "singleton"


def in_P1(f: Transformation, s: SandwichElement) -> bool:
    """ker(a) separates im(f)."""
    return s.separates(set(f))


def in_P2(f: Transformation, s: SandwichElement) -> bool:
    """im(a) meets every kernel class of f."""
    return len({f[x] for x in s._A0}) == len(set(f))


def in_P(f: Transformation, s: SandwichElement) -> bool:
    return in_P1(f, s) and in_P2(f, s)


def classify_P(f: Transformation, s, check: bool = True) -> PClassification:
    s = as_sandwich(s)
    if len(f) != s.n:
        raise ValueError(f"degree mismatch: {len(f)} vs {s.n}")
    c = PClassification(in_P1(f, s), in_P2(f, s))
    if check:
        rf = rank(f)
        assert c.in_P1 == (rank(compose(f, s.a)) == rf)
        assert c.in_P2 == (rank(compose(s.a, f)) == rf)
    return c


def variant_case(f: Transformation, s) -> str:
    return classify_P(f, s, check=False).case


def p_census(s) -> dict[str, int]:
    """How many elements of T_n fall in each of the four cases."""
    s = as_sandwich(s)
    engine.check_enumerable(s.n)
    out = dict.fromkeys(CASES, 0)
    for f in all_transformations(s.n):
        out[variant_case(f, s)] += 1
    return out


# --- Green's classes by formula ----------------------------------------


@lru_cache(maxsize=8)
def _universe(n: int) -> tuple[Transformation, ...]:
    engine.check_enumerable(n)
    return tuple(all_transformations(n))


def _img(f) -> frozenset:
    return frozenset(f)


def variant_green_class(f: Transformation, s, relation: str) -> list[Transformation]:
    """The R^a/L^a/H^a/D^a class of f in T_n^a, listed in lexicographic order."""
    s = as_sandwich(s)
    relation = relation.rstrip("a").upper()
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}")
    c = classify_P(f, s, check=False)
    U = _universe(s.n)
    kf, imf, rf = kernel_key(f), _img(f), rank(f)
    if relation == "R":
        if not c.in_P1:
            return [f]
        return [g for g in U if kernel_key(g) == kf and in_P1(g, s)]
    if relation == "L":
        if not c.in_P2:
            return [f]
        return [g for g in U if _img(g) == imf and in_P2(g, s)]
    if relation == "H":
        if not c.in_P:
            return [f]
        return [g for g in U if kernel_key(g) == kf and _img(g) == imf]
    if c.in_P:
        return [g for g in U if rank(g) == rf and in_P(g, s)]
    if c.in_P2:
        return variant_green_class(f, s, "L")
    if c.in_P1:
        return variant_green_class(f, s, "R")
    return [f]


def variant_green_partition(s, relation: str) -> list[list[Transformation]]:
    """All classes of one relation on T_n^a by formula, each in lexicographic order."""
    s = as_sandwich(s)
    seen: set = set()
    out = []
    for f in _universe(s.n):
        if f in seen:
            continue
        cls = variant_green_class(f, s, relation)
        seen.update(cls)
        out.append(cls)
    return out


def variant_table(s) -> engine.SemigroupTable:
    """Cayley table of the whole variant T_n^a, elements in lexicographic order."""
    s = as_sandwich(s)
    return engine.transformation_table(_universe(s.n), s.a)


# --- D-order and rank -----------------------------------------------------


def _kernel_contains(f: Transformation, h: Transformation) -> bool:
    """ker(f) contains ker(h): points identified by h are identified by f."""
    seen: dict[int, int] = {}
    for x, y in enumerate(h):
        v = seen.setdefault(y, f[x])
        if v != f[x]:
            return False
    return True


def d_order_leq(f: Transformation, g: Transformation, s) -> bool:
    """Whether D_f^a <= D_g^a in T_n^a."""
    s = as_sandwich(s)
    a = s.a
    if len(f) != len(g) or len(f) != s.n:
        raise ValueError("degree mismatch")
    ag = compose(a, g)
    ga = compose(g, a)
    aga = compose(ag, a)
    r_aga = rank(aga)
    result = (
        f == g
        or rank(f) <= r_aga
        or set(f) <= set(ag)
        or _kernel_contains(f, ga)
    )
    if in_P(f, s):
        assert result == (rank(f) <= r_aga)
    if in_P(g, s):
        assert result == (rank(f) <= rank(g))
    return result


def rank_variant_formula(n: int, r: int) -> int:
    """Number of transformations of rank > r, the rank of T_n^a when rank(a) = r."""
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    return sum(rank_class_size(n, m) for m in range(r + 1, n + 1))


def unique_min_generating_set(s) -> list[Transformation]:
    """The elements of rank > r; every generating set of T_n^a contains all of them."""
    s = as_sandwich(s)
    if s.r >= s.n:
        raise ValueError("sandwich must be singular")
    return [f for f in _universe(s.n) if rank(f) > s.r]


def count_maximal_above_top_regular(s) -> int:
    s = as_sandwich(s)
    n, r = s.n, s.r
    if r >= n:
        raise ValueError("sandwich must be singular")
    from math import factorial

    return (n ** (n - r) - r ** (n - r)) * factorial(r) * s.Lambda


def count_maximal_above_top_regular_bruteforce(s) -> int:
    s = as_sandwich(s)
    a, r = s.a, s.r
    return sum(1 for f in _universe(s.n) if rank(f) > r and rank(compose(compose(a, f), a)) == r)


def is_variant_monoid_bruteforce(s) -> bool:
    """Whether T_n^a has a two-sided identity, by exhaustive scan."""
    S = variant_table(s)
    T = S.table
    import numpy as np

    idx = np.arange(len(S))
    return bool(((T == idx[None, :]).all(axis=1) & (T.T == idx[None, :]).all(axis=1)).any())

