"""Formula-versus-oracle checks for a single sandwich element.

Each check computes a value from the closed formulas and the same value by
brute force through :mod:`sandwich.engine`, and reports both.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator

from .core import SandwichElement, kernel_key, rank
from . import engine, idemgen, ideals, regular, variant

log = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class CheckResult:
    tag: str
    expected: object
    actual: object
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.note})" if self.note else ""
        if self.ok:
            return f"{status} {self.tag}: {self.actual}{extra}"
        return f"{status} {self.tag}: formula {self.expected} != oracle {self.actual}{extra}"


def _partition_key(classes) -> frozenset:
    return frozenset(frozenset(c) for c in classes)


def check_green(s: SandwichElement) -> Iterator[CheckResult]:
    S = variant.variant_table(s)
    G = engine.green_classes(S)
    for rel in variant.RELATIONS:
        oracle = _partition_key([[S.elements[x] for x in c] for c in G.classes(rel)])
        formula = _partition_key(variant.variant_green_partition(s, rel))
        yield CheckResult(f"green-{rel}", len(formula), len(oracle) if oracle == formula else f"{len(oracle)} (differs)",
                          "class count; partitions compared")


def check_regular(s: SandwichElement) -> Iterator[CheckResult]:
    S = variant.variant_table(s)
    oracle = {S.elements[x] for x in engine.regular_elements(S)}
    predicate = set(regular.enumerate_reg(s))
    yield CheckResult("regular-set", len(predicate), len(oracle) if oracle == predicate else f"{len(oracle)} (differs)")


def check_reg_size(s: SandwichElement) -> Iterator[CheckResult]:
    yield CheckResult("reg-size", regular.size_reg_formula(s), len(regular.enumerate_reg(s)))


def reg_grid_oracle(s: SandwichElement) -> dict[int, tuple[int, int, int]]:
    """rank -> (rows, cols, H-size) read off the oracle egg-box of P."""
    S = regular.reg_table(s)
    G = engine.green_classes(S)
    out = {}
    for cls in G.classes("D"):
        m = rank(S.elements[cls[0]])
        rows = len({int(G.r_ids[x]) for x in cls})
        cols = len({int(G.l_ids[x]) for x in cls})
        hs = {len(G.class_of(x, "H")) for x in cls}
        out[m] = (rows, cols, hs.pop() if len(hs) == 1 else sorted(hs))
    return out


def check_inflation(s: SandwichElement) -> Iterator[CheckResult]:
    grid = reg_grid_oracle(s)
    for m in range(1, s.r + 1):
        c = regular.hat_class_counts(s, m)
        yield CheckResult(f"inflation-grid-m{m}", (c.d_rows, c.d_cols, c.h_class_size), grid.get(m))


def check_reg_rank(s: SandwichElement) -> Iterator[CheckResult]:
    if not 1 < s.r < s.n:
        return
    U = regular.build_reg_generating_set(s)
    closed = len(engine.transformation_closure(U, s.a))
    yield CheckResult("reg-rank", regular.reg_rank_formula(s), len(U), "size of constructed set")
    yield CheckResult("reg-rank-closure", regular.size_reg_formula(s), closed)


def check_idempotents(s: SandwichElement) -> Iterator[CheckResult]:
    yield CheckResult("idempotent-count", idemgen.idempotent_count_formula(s), len(idemgen.variant_idempotents(s)))


def check_exa(s: SandwichElement) -> Iterator[CheckResult]:
    if s.r < 2:
        return
    closure = set(idemgen.idempotent_closure(s))
    formula = set(idemgen.exa_elements(s))
    yield CheckResult("exa-membership", len(formula), len(closure) if closure == formula else f"{len(closure)} (differs)")
    if s.r < s.n:
        U = idemgen.build_exa_generating_set(s)
        yield CheckResult("exa-rank", idemgen.exa_rank_formula(s), len(U), "size of constructed set")
        yield CheckResult("exa-rank-closure", len(formula), len(engine.transformation_closure(U, s.a)))


def check_genset_count(s: SandwichElement, limit: int = ENUMERATION_LIMIT) -> Iterator[CheckResult]:
    if not 1 < s.r < s.n:
        return
    k = idemgen.exa_rank_formula(s)
    E = idemgen.idempotent_count_formula(s)
    if comb(E, k) > limit:
        log.info("skipping generating-set enumeration for %s: C(%d,%d) too large", s.a, E, k)
        return
    _, found = idemgen.enumerate_min_idempotent_gensets(s, k)
    yield CheckResult("min-idem-gensets", idemgen.count_min_idempotent_gensets(s), len(found))


def check_variant_rank(s: SandwichElement) -> Iterator[CheckResult]:
    if s.r >= s.n:
        return
    M = variant.unique_min_generating_set(s)
    yield CheckResult("variant-rank", variant.rank_variant_formula(s.n, s.r), len(M))
    yield CheckResult("variant-rank-closure", s.n**s.n, len(engine.transformation_closure(M, s.a)))


def check_census(s: SandwichElement) -> Iterator[CheckResult]:
    if s.r >= s.n:
        return
    yield CheckResult("maximal-census", variant.count_maximal_above_top_regular(s),
                      variant.count_maximal_above_top_regular_bruteforce(s))


def check_ideals(s: SandwichElement) -> Iterator[CheckResult]:
    for m in range(2, s.r):
        U = ideals.build_ideal_generating_set(m, s)
        I = ideals.ideal(m, s)
        yield CheckResult(f"ideal-rank-m{m}", ideals.ideal_rank_formula(m, s), len(U), "size of constructed set")
        yield CheckResult(f"ideal-rank-m{m}-lower", ideals.ideal_rank_formula(m, s), ideals.top_class_r_classes(m, s),
                          "R-classes in the top class")
        yield CheckResult(f"ideal-rank-m{m}-closure", len(I), len(engine.transformation_closure(U, s.a)))
        yield CheckResult(f"ideal-rank-m{m}-cover", len(U), len({kernel_key(u) for u in U}), "distinct kernels")


CHECKS: dict[str, Callable[[SandwichElement], Iterator[CheckResult]]] = {
    "green": check_green,
    "regular": check_regular,
    "reg-size": check_reg_size,
    "inflation": check_inflation,
    "reg-rank": check_reg_rank,
    "idempotents": check_idempotents,
    "exa": check_exa,
    "gensets": check_genset_count,
    "variant-rank": check_variant_rank,
    "census": check_census,
    "ideals": check_ideals,
}


def run_checks(s, names=None) -> list[CheckResult]:
    s = variant.as_sandwich(s)
    engine.check_enumerable(s.n)
    out = []
    for name, fn in CHECKS.items():
        if names is not None and name not in names:
            continue
        out.extend(fn(s))
    return out


def sandwiches_up_to_shape(n: int, dedup: bool = True):
    """Idempotents of T_n with 1 < rank < n, one per kernel shape unless ``dedup`` is off."""
    from .core import idempotents_of_degree, kernel_shape_representative, partitions_into

    if dedup:
        for r in range(2, n):
            for lam in partitions_into(n, r):
                yield SandwichElement(kernel_shape_representative(lam))
        return
    for a in idempotents_of_degree(n):
        if 1 < rank(a) < n:
            yield SandwichElement(a)
