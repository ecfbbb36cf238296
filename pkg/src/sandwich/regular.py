"""The regular part P = Reg(T_n^a) and its projection onto T_A.

P consists of the f with rank(afa) = rank(f).  Two maps organise it:

* ``psi(f) = (fa, af)`` embeds P in a product of two classical semigroups;
* ``phi(f) = (fa)|_A`` maps P onto the full transformation semigroup on
  A = im(a), which is stored as a degree-r transformation using the sorted
  order of A.

Each H-class of T_A pulls back to a rectangular array of H-classes of P,
and the top D-class of P is a rectangular group over the symmetric group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

from .core import (
    SandwichElement,
    Transformation,
    compose,
    kernel_key,
    lambda_sum,
    rank,
    stirling2,
)
from . import engine
from .variant import _universe, as_sandwich, in_P, star


class NotRegularError(ValueError):
    """An element outside Reg(T_n^a) was passed where one inside is required."""


def _require_P(f: Transformation, s: SandwichElement) -> None:
    if not in_P(f, s):
        raise NotRegularError(f"{f} is not regular in the variant by {s.a}")


def enumerate_reg(s) -> list[Transformation]:
    """All f with rank(afa) = rank(f), in lexicographic order."""
    s = as_sandwich(s)
    a = s.a
    return [f for f in _universe(s.n) if rank(compose(compose(a, f), a)) == rank(f)]


def psi(f: Transformation, s) -> tuple[Transformation, Transformation]:
    s = as_sandwich(s)
    _require_P(f, s)
    return compose(f, s.a), compose(s.a, f)


def in_psi_image(g: Transformation, h: Transformation, s) -> bool:
    """Whether (g, h) is of the form psi(f): equal ranks and g|_A = (ha)|_A."""
    s = as_sandwich(s)
    ha = compose(h, s.a)
    return rank(g) == rank(h) and all(g[x] == ha[x] for x in s._A0)


def psi_inverse(g: Transformation, h: Transformation, s) -> Transformation:
    """The f in P with psi(f) = (g, h).

    f agrees with h on A, and ker(f) = ker(g); every class of ker(g) meets A.
    """
    s = as_sandwich(s)
    out = [-1] * s.n
    rep: dict[int, int] = {}
    for x in s._A0:
        rep.setdefault(g[x], h[x])
    for x in range(s.n):
        out[x] = rep[g[x]]
    return Transformation._raw(out)


def phi(f: Transformation, s, check: bool = True) -> Transformation:
    """(fa)|_A as a transformation of {1..r}: i -> j when a_i f a = a_j."""
    s = as_sandwich(s)
    if check:
        _require_P(f, s)
    cls = s._cls
    return Transformation._raw([cls[f[x]] for x in s._A0])


def phi_lift(q: Transformation, s) -> Transformation:
    """The element mapping each class A_i onto a_{iq}; phi of it is q."""
    s = as_sandwich(s)
    if len(q) != s.r:
        raise ValueError(f"lift needs a degree-{s.r} transformation, got {q}")
    A0 = s._A0
    return Transformation._raw([A0[q[s._cls[x]]] for x in range(s.n)])


# --- counting -------------------------------------------------------------


@dataclass(frozen=True)
class InflationCounts:
    m: int
    r_hat_classes: int
    l_hat_classes: int
    h_class_size: int
    d_rows: int
    d_cols: int

    @property
    def d_size(self) -> int:
        return self.h_class_size * self.d_rows * self.d_cols


def hat_class_counts(s, m: int, I: Sequence[int] | None = None) -> InflationCounts:
    """Class counts for the rank-m part of P; ``I`` is a 1-indexed image index set of size m."""
    s = as_sandwich(s)
    n, r = s.n, s.r
    if not 1 <= m <= r:
        raise ValueError(f"rank {m} outside 1..{r}")
    if I is None:
        I = range(1, m + 1)
    I = sorted(set(I))
    if len(I) != m:
        raise ValueError(f"index set {I} does not have size {m}")
    lam_I = 1
    for i in I:
        if not 1 <= i <= r:
            raise IndexError(f"index {i} outside 1..{r}")
        lam_I *= s.lambdas[i - 1]
    return InflationCounts(
        m=m,
        r_hat_classes=m ** (n - r),
        l_hat_classes=lam_I,
        h_class_size=factorial(m),
        d_rows=m ** (n - r) * stirling2(r, m),
        d_cols=lambda_sum(s.lambdas, m),
    )


def size_reg_formula(s) -> int:
    s = as_sandwich(s)
    n, r = s.n, s.r
    return sum(
        factorial(m) * m ** (n - r) * stirling2(r, m) * lambda_sum(s.lambdas, m)
        for m in range(1, r + 1)
    )


# --- the top D-class as a rectangular group ------------------------------


@dataclass
class RectangularGroup:
    """The rank-r elements of P as triples (kernel, image, permutation).

    A row is a map from X minus A to {0..r-1}: the kernel class of x is the
    one containing a_{row(x)}.  A column is a cross-section (b_1..b_r) of
    ker(a) with b_i in A_i.  The permutation is phi(f).  The element with
    data (row, col, p) sends x to b_{p(i)}, where a_i shares x's class.
    """

    s: SandwichElement
    rows: list[tuple[int, ...]]
    cols: list[tuple[int, ...]]

    @property
    def group_degree(self) -> int:
        return self.s.r

    def __len__(self) -> int:
        return len(self.rows) * len(self.cols) * factorial(self.s.r)

    def _outside(self) -> list[int]:
        A = set(self.s._A0)
        return [x for x in range(self.s.n) if x not in A]

    def encode(self, i: int, j: int, p: Transformation) -> Transformation:
        s = self.s
        row, col = self.rows[i], self.cols[j]
        label = [0] * s.n
        for k, x in enumerate(s._A0):
            label[x] = k
        for x, k in zip(self._outside(), row):
            label[x] = k
        return Transformation._raw([col[p[label[x]]] for x in range(s.n)])

    def decode(self, f: Transformation) -> tuple[int, int, Transformation]:
        s = self.s
        if len(set(f)) != s.r or not in_P(f, s):
            raise ValueError(f"{f} is not in the top D-class")
        where = {f[x]: k for k, x in enumerate(s._A0)}  # image value -> index of a_k
        row = tuple(where[f[x]] for x in self._outside())
        col = [0] * s.r
        for v in set(f):
            col[s._cls[v]] = v
        return self._row_index[row], self._col_index[tuple(col)], phi(f, s, check=False)

    def __post_init__(self):
        self._row_index = {r: i for i, r in enumerate(self.rows)}
        self._col_index = {c: j for j, c in enumerate(self.cols)}

    @staticmethod
    def product(x: tuple[int, int, Transformation], y: tuple[int, int, Transformation]):
        return x[0], y[1], compose(x[2], y[2])

    def elements(self) -> Iterator[Transformation]:
        from .core import permutations

        perms = list(permutations(self.s.r))
        for i in range(len(self.rows)):
            for j in range(len(self.cols)):
                for p in perms:
                    yield self.encode(i, j, p)

    def idempotents(self) -> list[Transformation]:
        ident = Transformation.identity(self.s.r)
        return [self.encode(i, j, ident) for i in range(len(self.rows)) for j in range(len(self.cols))]


def top_rect_group(s) -> RectangularGroup:
    s = as_sandwich(s)
    outside = len([x for x in range(s.n) if x not in set(s._A0)])
    rows = list(itertools.product(range(s.r), repeat=outside))
    cols = list(itertools.product(*s._blocks0))
    return RectangularGroup(s, rows, cols)


# --- mididentities, RP(P), factorisation --------------------------------


def is_mididentity(e: Transformation, s) -> bool:
    """Whether f*e*g = f*g for all f, g; equivalent to a e a = a."""
    s = as_sandwich(s)
    return compose(compose(s.a, e), s.a) == s.a


def is_mididentity_bruteforce(e: Transformation, s, elements: Sequence[Transformation] | None = None) -> bool:
    s = as_sandwich(s)
    U = _universe(s.n) if elements is None else elements
    for f in U:
        fe = star(f, e, s)
        for g in U:
            if star(fe, g, s) != star(f, g, s):
                return False
    return True


def rp_elements(s) -> list[Transformation]:
    """The rank-r elements of P, which are exactly the regularity-preserving ones."""
    s = as_sandwich(s)
    return [f for f in enumerate_reg(s) if rank(f) == s.r]


def is_regularity_preserving_bruteforce(e_idx: int, S: engine.SemigroupTable, idem: Sequence[int],
                                        green: engine.GreenData) -> bool:
    """Idempotent test: f e R f and e f L f for every idempotent f of S."""
    T = S.table
    for f in idem:
        fe, ef = int(T[f, e_idx]), int(T[e_idx, f])
        if green.r_ids[fe] != green.r_ids[f] or green.l_ids[ef] != green.l_ids[f]:
            return False
    return True


def _blocks_of(f: Transformation) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for x, y in enumerate(f):
        out.setdefault(y, []).append(x)
    return out


def factor_between(f: Transformation, g: Transformation, m: int, s) -> tuple[Transformation, Transformation]:
    """Idempotents e1, e2 of rank m in P with f = e1 * g * e2.

    Requires f, g in P with phi(f) = phi(g) and rank(f) <= m <= r.
    """
    s = as_sandwich(s)
    _require_P(f, s)
    _require_P(g, s)
    if phi(f, s) != phi(g, s):
        raise ValueError(f"phi({f}) != phi({g})")
    l, r = rank(f), s.r
    if not l <= m <= r:
        raise ValueError(f"need rank(f)={l} <= m={m} <= r={r}")
    n, A0, cls = s.n, s._A0, s._cls
    fblocks = list(_blocks_of(f).items())  # (image value, points) in first-occurrence order
    ks = [cls[v] for v, _ in fblocks]  # f_s lies in A_{k_s}
    rest = [j for j in range(r) if j not in set(ks)]
    used, spare = rest[: m - l], rest[m - l:]

    e2 = [0] * n
    for (v, _), k in zip(fblocks, ks):
        for x in s._blocks0[k]:
            e2[x] = v
    for j in used:
        for x in s._blocks0[j]:
            e2[x] = A0[j]
    for j in spare:
        for x in s._blocks0[j]:
            e2[x] = fblocks[0][0]

    # split each F_s into p_s parts, each holding one point of F_s ∩ A
    meets = [[x for x in pts if x in set(A0)] for _, pts in fblocks]
    p = [1] * l
    extra = m - l
    for t in range(l):
        take = min(extra, len(meets[t]) - 1)
        p[t] += take
        extra -= take
    assert extra == 0
    e1 = [0] * n
    for (_, pts), anchors, ps in zip(fblocks, meets, p):
        head, tail = anchors[0], anchors[1:ps]
        for x in pts:
            e1[x] = head
        for x in tail:
            e1[x] = x
    E1, E2 = Transformation._raw(e1), Transformation._raw(e2)
    assert star(star(E1, g, s), E2, s) == f, "factorisation failed"
    return E1, E2


def lift_permutation_generators(r: int) -> list[Transformation]:
    """A transposition and an r-cycle (just the transposition when r = 2)."""
    if r < 2:
        return [Transformation.identity(max(r, 1))]
    swap = Transformation._raw([1, 0] + list(range(2, r)))
    if r == 2:
        return [swap]
    cycle = Transformation._raw([(i + 1) % r for i in range(r)])
    return [swap, cycle]


def elementary_on_A(i: int, j: int, r: int) -> Transformation:
    """The idempotent of T_r sending j to i and fixing everything else (0-based i, j)."""
    if i == j or not (0 <= i < r and 0 <= j < r):
        raise ValueError(f"need distinct indices in 0..{r - 1}, got {i}, {j}")
    img = list(range(r))
    img[j] = i
    return Transformation._raw(img)


def build_top_generators(s, permutations_: bool = True) -> list[Transformation]:
    """r^{n-r} elements of the top D-class hitting every row and column.

    Row t is paired with column t mod Lambda.  With ``permutations_`` the
    first rows carry generators of the symmetric group, so the set
    generates the whole rectangular group; otherwise every element is an
    idempotent and the set generates the rectangular band of idempotents.
    """
    s = as_sandwich(s)
    D = top_rect_group(s)
    ident = Transformation.identity(s.r)
    gens = lift_permutation_generators(s.r) if permutations_ else []
    out = []
    for t in range(len(D.rows)):
        p = gens[t] if t < len(gens) else ident
        out.append(D.encode(t, t % len(D.cols), p))
    return out


def build_reg_generating_set(s) -> list[Transformation]:
    """A generating set of P of size r^{n-r} + 1."""
    s = as_sandwich(s)
    if not 1 < s.r < s.n:
        raise ValueError(f"need 1 < r < n, got r={s.r}, n={s.n}")
    top = build_top_generators(s)
    return top + [phi_lift(elementary_on_A(0, 1, s.r), s)]


def reg_rank_formula(s) -> int:
    s = as_sandwich(s)
    if not 1 < s.r < s.n:
        if s.r == 1:
            return s.n
        raise ValueError("sandwich must be singular")
    return s.r ** (s.n - s.r) + 1


def rank_of_top_class(s) -> int:
    """max(rows, cols, rank of S_r) for the top rectangular group."""
    s = as_sandwich(s)
    sym_rank = 1 if s.r <= 2 else 2
    return max(s.r ** (s.n - s.r), s.Lambda, sym_rank)


def reg_table(s) -> engine.SemigroupTable:
    s = as_sandwich(s)
    return engine.transformation_table(enumerate_reg(s), s.a)


def kernel_classes_of(elements: Sequence[Transformation]) -> set:
    return {kernel_key(f) for f in elements}
