"""Idempotents of T_n^a, the subsemigroup they generate, and its minimal generating sets.

Minimal idempotent generating sets of the singular part of T_r correspond
to strongly connected tournaments on r vertices: an arc i -> j stands for
the idempotent sending j to i.  On two vertices the only candidate is the
graph with both arcs, which is kept here as a flagged record.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .core import (
    SandwichElement,
    Transformation,
    all_transformations,
    compose,
    lambda_sum,
    rank,
    rho,
    stirling2,
)
from . import engine
from .regular import (
    build_top_generators,
    elementary_on_A,
    enumerate_reg,
    phi_lift,
    top_rect_group,
)
from .variant import _universe, as_sandwich, in_P, star


def variant_idempotents(s) -> list[Transformation]:
    """All f with f*a*f = f, in lexicographic order."""
    s = as_sandwich(s)
    return [f for f in _universe(s.n) if star(f, f, s) == f]


def is_variant_idempotent(f: Transformation, s) -> bool:
    """(af) restricted to im(f) is the identity."""
    s = as_sandwich(s)
    a = s.a
    return all(f[a[y]] == y for y in set(f))


def idempotent_count_formula(s) -> int:
    s = as_sandwich(s)
    n, r = s.n, s.r
    return sum(m ** (n - m) * lambda_sum(s.lambdas, m) for m in range(1, r + 1))


def lift_idempotent(q: Transformation, s) -> Transformation:
    """Lift an idempotent of T_r (indices through sorted A) to an idempotent of T_n^a."""
    s = as_sandwich(s)
    if compose(q, q) != q:
        raise ValueError(f"{q} is not idempotent")
    return phi_lift(q, s)


def elementary_idempotent(i: int, j: int, r: int) -> Transformation:
    """The idempotent of T_r sending j to i (1-indexed) and fixing the rest."""
    return elementary_on_A(i - 1, j - 1, r)


def exa_membership(f: Transformation, s) -> bool:
    """Whether f lies in the subsemigroup generated by the idempotents of T_n^a.

    That subsemigroup is the idempotents of the top D-class of P together
    with every element of P of rank below r.
    """
    s = as_sandwich(s)
    if not in_P(f, s):
        return False
    if rank(f) < s.r:
        return True
    return star(f, f, s) == f


def exa_elements(s) -> list[Transformation]:
    s = as_sandwich(s)
    return [f for f in enumerate_reg(s) if exa_membership(f, s)]


# --- tournaments ---------------------------------------------------------


@dataclass(frozen=True)
class Tournament:
    """A tournament on vertices 1..r, or the two-vertex convention graph.

    ``arcs`` holds 1-indexed pairs (i, j) meaning i -> j.  ``code`` packs one
    bit per pair i < j in lexicographic pair order, bit k for the k-th
    pair, set when the arc points from the smaller vertex.
    """

    r: int
    arcs: tuple[tuple[int, int], ...]
    code: int
    convention: bool = False

    @property
    def in_degrees(self) -> tuple[int, ...]:
        d = [0] * self.r
        for _, j in self.arcs:
            d[j - 1] += 1
        return tuple(d)

    @classmethod
    def from_code(cls, r: int, code: int) -> "Tournament":
        arcs = []
        for k, (i, j) in enumerate(itertools.combinations(range(1, r + 1), 2)):
            arcs.append((i, j) if code >> k & 1 else (j, i))
        return cls(r, tuple(arcs), code)

    @classmethod
    def from_arcs(cls, r: int, arcs: Sequence[tuple[int, int]]) -> "Tournament":
        pairs = {frozenset(p) for p in arcs}
        if len(pairs) != len(arcs) or len(arcs) != r * (r - 1) // 2 or any(i == j for i, j in arcs):
            raise ValueError("a tournament has exactly one arc per pair of vertices")
        arcset = set(arcs)
        code = sum(1 << k for k, p in enumerate(itertools.combinations(range(1, r + 1), 2)) if p in arcset)
        return cls.from_code(r, code)

    @classmethod
    def two_vertex_convention(cls) -> "Tournament":
        return cls(2, ((1, 2), (2, 1)), 1, convention=True)

    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in range(1, self.r + 1)}
        for i, j in self.arcs:
            out[i].append(j)
        return out

    def is_strongly_connected(self) -> bool:
        return len(strongly_connected_components(self.r, self.successors())) == 1

    def __str__(self) -> str:
        return " ".join(f"{i}->{j}" for i, j in self.arcs)


def strongly_connected_components(r: int, succ: dict[int, list[int]]) -> list[list[int]]:
    """Tarjan's algorithm on vertices 1..r, iterative."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(1, r + 1):
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


def all_tournaments(r: int) -> Iterator[Tournament]:
    for code in range(1 << (r * (r - 1) // 2)):
        yield Tournament.from_code(r, code)


def strongly_connected_tournaments(r: int) -> list[Tournament]:
    if r < 2:
        raise ValueError("tournaments need at least 2 vertices")
    if r == 2:
        return [Tournament.two_vertex_convention()]
    return [t for t in all_tournaments(r) if t.is_strongly_connected()]


def rotational_tournament(r: int) -> Tournament:
    """Arc i -> j when j - i mod r lies in 1..(r-1)//2, ties at r/2 broken towards i < j."""
    if r == 2:
        return Tournament.two_vertex_convention()
    arcs = []
    for i, j in itertools.combinations(range(1, r + 1), 2):
        d = (j - i) % r
        forward = 1 <= d <= (r - 1) // 2 or (2 * d == r)
        arcs.append((i, j) if forward else (j, i))
    t = Tournament.from_arcs(r, arcs)
    assert t.is_strongly_connected()
    return t


def singular_idempotent_genset(r: int, G: Tournament) -> list[Transformation]:
    """The idempotents of T_r attached to the arcs of G: arc (i, j) sends j to i."""
    if G.r != r:
        raise ValueError(f"tournament has {G.r} vertices, expected {r}")
    if not G.is_strongly_connected():
        raise ValueError(f"tournament {G} is not strongly connected")
    return [elementary_idempotent(i, j, r) for i, j in G.arcs]


def singular_part(r: int) -> list[Transformation]:
    return [f for f in all_transformations(r) if rank(f) < r]


# --- E_X^a ---------------------------------------------------------------


def build_exa_generating_set(s, tournament: Tournament | None = None) -> list[Transformation]:
    """r^{n-r} + rho_r idempotents generating the idempotent-generated part of T_n^a."""
    s = as_sandwich(s)
    if not 1 < s.r < s.n:
        raise ValueError(f"need 1 < r < n, got r={s.r}, n={s.n}")
    G = tournament if tournament is not None else rotational_tournament(s.r)
    band = build_top_generators(s, permutations_=False)
    return band + [lift_idempotent(e, s) for e in singular_idempotent_genset(s.r, G)]


def exa_rank_formula(s) -> int:
    s = as_sandwich(s)
    if not 1 < s.r < s.n:
        raise ValueError(f"need 1 < r < n, got r={s.r}, n={s.n}")
    return s.r ** (s.n - s.r) + rho(s.r)


def rect_band_genset_count(x: int, y: int) -> int:
    """Number of minimal generating sets of an x-by-y rectangular band, x >= y."""
    if not x >= y >= 1:
        raise ValueError(f"need x >= y >= 1, got {x}, {y}")
    return factorial(y) * stirling2(x, y)


def tournament_weight_sum(s) -> Fraction:
    """Sum over strongly connected tournaments of prod_j lambda_j^(-indegree(j)).

    Computed by a recurrence over vertex subsets: every tournament is a
    chain of strong components with all arcs pointing down the chain, so
    the strong tournaments on V are the whole weight of V minus the
    decomposable part.  On two vertices the convention graph is used.
    """
    s = as_sandwich(s)
    r = s.r
    if r == 2:
        return Fraction(1, s.lambdas[0] * s.lambdas[1])
    inv = [Fraction(1, lam) for lam in s.lambdas]
    full = (1 << r) - 1
    members = [[i for i in range(r) if mask >> i & 1] for mask in range(full + 1)]

    def into(src, dst):  # every arc from src to dst
        out = Fraction(1)
        for j in members[dst]:
            out *= inv[j] ** len(members[src])
        return out

    total = [Fraction(1)] * (full + 1)
    for mask in range(1, full + 1):
        vs = members[mask]
        w = Fraction(1)
        for i, j in itertools.combinations(vs, 2):
            w *= inv[i] + inv[j]
        total[mask] = w
    strong = [Fraction(0)] * (full + 1)
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            strong[mask] = Fraction(1)
            continue
        rest = Fraction(0)
        sub = (mask - 1) & mask
        while sub:
            # sub is the top strong component, the remainder any tournament below it
            rest += strong[sub] * into(sub, mask ^ sub) * total[mask ^ sub]
            sub = (sub - 1) & mask
        strong[mask] = total[mask] - rest
    return strong[full]


def tournament_weight_sum_bruteforce(s) -> Fraction:
    s = as_sandwich(s)
    total = Fraction(0)
    for G in strongly_connected_tournaments(s.r):
        denom = 1
        for lam, d in zip(s.lambdas, G.in_degrees):
            denom *= lam**d
        total += Fraction(1, denom)
    return total


def count_min_idempotent_gensets(s) -> int:
    s = as_sandwich(s)
    n, r, Lam = s.n, s.r, s.Lambda
    if not 1 < r < n:
        raise ValueError(f"need 1 < r < n, got r={r}, n={n}")
    value = Fraction(((r - 1) ** (n - r) * Lam) ** rho(r)) * rect_band_genset_count(r ** (n - r), Lam)
    value *= tournament_weight_sum(s)
    if value.denominator != 1:
        raise ArithmeticError(f"generating-set count {value} is not an integer")
    return value.numerator


def exa_table(s) -> engine.SemigroupTable:
    s = as_sandwich(s)
    return engine.transformation_table(exa_elements(s), s.a)


def idempotent_closure(s) -> list[Transformation]:
    """Closure of all variant idempotents under the sandwich product, by brute force."""
    s = as_sandwich(s)
    return engine.transformation_closure(variant_idempotents(s), s.a)


def enumerate_min_idempotent_gensets(s, k: int | None = None, time_budget: float | None = None):
    """All k-subsets of the idempotents (default k = rank) generating E_X^a, by exhaustive search."""
    s = as_sandwich(s)
    S = exa_table(s)
    idem = engine.idempotents(S)
    k = exa_rank_formula(s) if k is None else k
    return S, list(engine.generating_subsets(S, k, idem, time_budget=time_budget))


def top_band_shape(s) -> tuple[int, int]:
    D = top_rect_group(s)
    return len(D.rows), len(D.cols)
