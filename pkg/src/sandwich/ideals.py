"""Ideals of Reg(T_n^a) and idempotent generating sets of the proper ones.

The ideals of P form a chain I_1 < ... < I_r, where I_m holds the elements
of rank at most m.  A proper ideal I_m is generated by idempotents of rank
exactly m; the construction here pulls back a small idempotent generating
set V of the rank-m ideal of T_r and inflates each member to a full set of
kernel representatives.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import comb

from .core import SandwichElement, Transformation, all_transformations, kernel_key, rank, stirling2
from . import engine
from .regular import enumerate_reg
from .variant import as_sandwich, star

log = logging.getLogger(__name__)


@dataclass
class IdealDescriptor:
    m: int
    s: SandwichElement
    elements: list[Transformation] = field(repr=False)

    @property
    def top_class(self) -> list[Transformation]:
        return [f for f in self.elements if rank(f) == self.m]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, f) -> bool:
        return f in set(self.elements)


def ideal(m: int, s) -> IdealDescriptor:
    s = as_sandwich(s)
    if not 1 <= m <= s.r:
        raise ValueError(f"level {m} outside 1..{s.r}")
    P = enumerate_reg(s)
    elems = [f for f in P if rank(f) <= m]
    if m > 1:
        below = {f for f in P if rank(f) <= m - 1}
        assert below < set(elems)
    return IdealDescriptor(m, s, elems)


def ideal_rank_formula(m: int, s) -> int:
    s = as_sandwich(s)
    n, r = s.n, s.r
    if not 1 <= m < r:
        raise ValueError(f"need 1 <= m < r={r}, got m={m}")
    if m == 1:
        return n
    return m ** (n - r) * stirling2(r, m)


def tx_ideal_rank(m: int, r: int) -> int:
    """Rank of the ideal of T_r made of maps of rank at most m."""
    if not 1 <= m < r:
        raise ValueError(f"need 1 <= m < r, got m={m}, r={r}")
    return r if m == 1 else stirling2(r, m)


# --- the T_r baseline ----------------------------------------------------


def _set_partitions(r: int, m: int):
    """Partitions of range(r) into m blocks, as block-label tuples in canonical order."""
    def rec(i, labels, k):
        if i == r:
            if k == m:
                yield tuple(labels)
            return
        for b in range(min(k + 1, m)):
            labels.append(b)
            yield from rec(i + 1, labels, max(k, b + 1))
            labels.pop()

    yield from rec(0, [], 0)


def _idempotent_with(labels: tuple[int, ...], image: tuple[int, ...]) -> Transformation:
    """Idempotent of T_r whose kernel has the given block labels and whose image is a transversal."""
    return Transformation._raw([image[b] for b in labels])


def _generates_ideal(V: list[Transformation], r: int, m: int) -> bool:
    closure = engine.transformation_closure(V)
    return len(closure) == sum(1 for f in all_transformations(r) if rank(f) <= m)


def tr_ideal_idempotent_genset(r: int, m: int) -> list[Transformation]:
    """S(r, m) rank-m idempotents of T_r generating the maps of rank at most m.

    One idempotent per kernel.  For m = r - 1 these are the elementary
    idempotents of the rotational tournament.  Otherwise each kernel
    greedily takes the transversal image used least so far (ties broken
    lexicographically).  The result is checked by closure and replaced by a
    backtracking search if it fails.
    """
    if not 1 < m < r:
        raise ValueError(f"need 1 < m < r, got m={m}, r={r}")
    if m == r - 1:
        from .idemgen import rotational_tournament, singular_idempotent_genset

        V = singular_idempotent_genset(r, rotational_tournament(r))
        key = {kernel_key(v): v for v in V}
        V = [key[k] for k in sorted(key)]
        if _generates_ideal(V, r, m):
            return V
    kernels = list(_set_partitions(r, m))
    options = []
    for labels in kernels:
        blocks = [[x for x in range(r) if labels[x] == b] for b in range(m)]
        options.append(list(itertools.product(*blocks)))
    usage: dict[frozenset, int] = {}
    V = []
    for labels, opts in zip(kernels, options):
        best = min(opts, key=lambda im: (usage.get(frozenset(im), 0), im))
        usage[frozenset(best)] = usage.get(frozenset(best), 0) + 1
        V.append(_idempotent_with(labels, best))
    if _generates_ideal(V, r, m):
        return V
    log.info("greedy choice failed for r=%d, m=%d; searching", r, m)
    n_images = comb(r, m)
    for choice in itertools.product(*options):
        if len({frozenset(c) for c in choice}) < n_images:  # every image must be hit
            continue
        V = [_idempotent_with(lab, im) for lab, im in zip(kernels, choice)]
        if _generates_ideal(V, r, m):
            return V
    raise RuntimeError(f"no idempotent generating set found for r={r}, m={m}")


# --- the inflated generating set -----------------------------------------


def band_members(v: Transformation, s) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Rows and columns of the band of idempotents of P lying over the idempotent v of T_r.

    A row maps each point outside A to an image index of v; a column picks
    one point b_j of A_j for every image index j of v.
    """
    s = as_sandwich(s)
    image = sorted(set(v))
    outside = [x for x in range(s.n) if x not in set(s._A0)]
    rows = list(itertools.product(image, repeat=len(outside)))
    cols = list(itertools.product(*(s._blocks0[j] for j in image)))
    return rows, cols


def band_element(v: Transformation, row, col, s) -> Transformation:
    s = as_sandwich(s)
    image = sorted(set(v))
    pick = dict(zip(image, col))
    out = [0] * s.n
    for i, x in enumerate(s._A0):
        out[x] = pick[v[i]]
    outside = [x for x in range(s.n) if x not in set(s._A0)]
    for x, j in zip(outside, row):
        out[x] = pick[j]
    return Transformation._raw(out)


def build_ideal_generating_set(m: int, s) -> list[Transformation]:
    """Idempotents of rank m generating the ideal I_m of P, of size m^{n-r} S(r, m)."""
    s = as_sandwich(s)
    if m == 1:
        return [Transformation.constant(s.n, v) for v in range(1, s.n + 1)]
    if not 1 < m < s.r:
        raise ValueError(f"need 1 <= m < r={s.r}, got m={m}")
    out = []
    for v in tr_ideal_idempotent_genset(s.r, m):
        rows, cols = band_members(v, s)
        for t, row in enumerate(rows):
            out.append(band_element(v, row, cols[t % len(cols)], s))
    return out


def top_class_r_classes(m: int, s) -> int:
    """Number of distinct kernels among rank-m elements of P."""
    s = as_sandwich(s)
    return len({kernel_key(f) for f in enumerate_reg(s) if rank(f) == m})


def check_ideal_closed(I: IdealDescriptor, P: list[Transformation] | None = None) -> bool:
    """P * I * P lies inside I, checked on all pairs P x I and I x P."""
    s = I.s
    P = enumerate_reg(s) if P is None else P
    members = set(I.elements)
    for f in I.elements:
        for g in P:
            if star(f, g, s) not in members or star(g, f, s) not in members:
                return False
    return True
