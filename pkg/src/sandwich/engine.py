"""Brute-force finite semigroup machinery.

Everything here works from a multiplication table and first principles:
closure under a black-box product, Green's relations from principal ideals,
regular elements, idempotents and exhaustive generating-set search.  It is
deliberately ignorant of transformations so that it can serve as an
independent check on the closed formulas elsewhere in the package.
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .core import Transformation

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**7
DEFAULT_MAX_N = 5
HARD_MAX_N = 7
FULL_ASSOC_LIMIT = 300


class SizeLimitError(RuntimeError):
    """A closure or enumeration grew past its configured cap."""


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search ran out of its time budget."""


class NotAssociativeError(ValueError):
    pass


def max_degree(override: int | None = None) -> int:
    """Largest degree allowed for operations that enumerate all of T_n.

    ``SANDWICH_MAX_N`` in the environment overrides the default of 5; values
    above 5 are honoured up to 7 with a memory warning.
    """
    if override is None:
        override = int(os.environ.get("SANDWICH_MAX_N", DEFAULT_MAX_N))
    if override > HARD_MAX_N:
        raise SizeLimitError(f"enumeration guard {override} exceeds hard limit {HARD_MAX_N}")
    if override > DEFAULT_MAX_N:
        log.warning("enumeration guard raised to n=%d; T_n has %d elements", override, override**override)
    return override


def check_enumerable(n: int, max_n: int | None = None) -> None:
    limit = max_degree(max_n)
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds enumeration guard n<={limit} (set SANDWICH_MAX_N)")


class SemigroupTable:
    """A finite semigroup given by an element list and a full Cayley table.

    ``table[i, j]`` is the index of ``elements[i] * elements[j]``.
    """

    def __init__(self, elements: Sequence[Hashable], table, generators: Sequence[int] | None = None):
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=np.int32)
        N = len(self.elements)
        if self.table.shape != (N, N):
            raise ValueError(f"table shape {self.table.shape} does not match {N} elements")
        if N and (self.table.min() < 0 or self.table.max() >= N):
            raise ValueError("table is not closed")
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.generators = None if generators is None else tuple(generators)
        self._rows: list[list[int]] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"<SemigroupTable of size {len(self)}>"

    @property
    def rows(self) -> list[list[int]]:
        # plain lists beat numpy for the scalar lookups in subset closures
        if self._rows is None:
            self._rows = self.table.tolist()
        return self._rows

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def product(self, x, y):
        return self.elements[self.table[self.index[x], self.index[y]]]

    @classmethod
    def from_product(cls, elements: Sequence[Hashable], product: Callable, generators=None) -> "SemigroupTable":
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        N = len(elements)
        table = np.empty((N, N), dtype=np.int32)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                z = product(x, y)
                try:
                    table[i, j] = index[z]
                except KeyError:
                    raise ValueError(f"{x} * {y} = {z} is outside the element list") from None
        return cls(elements, table, generators)

    def check_associative(self, samples: int = 1000, full: bool = False, seed: int = 0) -> None:
        """Raise NotAssociativeError on a failing triple.

        Samples ``samples`` random triples; ``full=True`` checks all triples
        and is only allowed up to |S| = 300.
        """
        N = len(self)
        if N == 0:
            return
        T = self.table
        if full:
            if N > FULL_ASSOC_LIMIT:
                raise SizeLimitError(f"full associativity check limited to |S|<={FULL_ASSOC_LIMIT}")
            left = T[T, :]  # left[i, j, k] = (ij)k
            right = T[:, T]  # right[i, j, k] = i(jk)
            bad = np.argwhere(left != right)
            if len(bad):
                i, j, k = bad[0]
                raise NotAssociativeError(f"({i}*{j})*{k} != {i}*({j}*{k})")
            return
        rng = np.random.default_rng(seed)
        i, j, k = rng.integers(0, N, size=(3, samples))
        lhs = T[T[i, j], k]
        rhs = T[i, T[j, k]]
        bad = np.nonzero(lhs != rhs)[0]
        if len(bad):
            b = bad[0]
            raise NotAssociativeError(f"({i[b]}*{j[b]})*{k[b]} != {i[b]}*({j[b]}*{k[b]})")

    def generated(self, U: Iterable[int]) -> list[int]:
        """Indices of the subsemigroup generated by the index set ``U``."""
        U = list(dict.fromkeys(U))
        rows = self.rows
        seen = set(U)
        queue = list(U)
        for x in queue:
            row = rows[x]
            for u in U:
                y = row[u]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return queue

    def is_generating(self, U: Iterable[int]) -> bool:
        U = list(dict.fromkeys(U))
        if not U:
            return False
        target = len(self)
        rows = self.rows
        seen = set(U)
        queue = list(U)
        for x in queue:
            row = rows[x]
            for u in U:
                y = row[u]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == target

    def subsemigroup(self, U: Iterable[int]) -> "SemigroupTable":
        """The subsemigroup on the index set ``U`` (which must be closed)."""
        U = sorted(set(U))
        pos = {u: i for i, u in enumerate(U)}
        sub = self.table[np.ix_(U, U)]
        try:
            table = np.vectorize(pos.__getitem__, otypes=[np.int32])(sub) if len(U) else sub
        except KeyError:
            raise ValueError("index set is not closed under the product") from None
        return SemigroupTable([self.elements[u] for u in U], table)


def closure(generators: Sequence[Hashable], product: Callable, cap: int = DEFAULT_CAP,
            assoc_samples: int = 1000) -> SemigroupTable:
    """Breadth-first closure of ``generators`` under ``product``.

    Elements appear in discovery order: the distinct generators in input
    order, then each element right-multiplied by each generator in turn.
    """
    gens = list(dict.fromkeys(generators))
    if not gens:
        raise ValueError("closure needs at least one generator")
    elements = list(gens)
    index = {e: i for i, e in enumerate(elements)}
    queue = deque(range(len(elements)))
    while queue:
        i = queue.popleft()
        x = elements[i]
        for g in gens:
            y = product(x, g)
            if y not in index:
                if len(elements) >= cap:
                    raise SizeLimitError(f"closure exceeded cap of {cap} elements")
                index[y] = len(elements)
                elements.append(y)
                queue.append(index[y])
    S = SemigroupTable.from_product(elements, product, generators=range(len(gens)))
    if assoc_samples:
        S.check_associative(samples=assoc_samples)
    return S


# --- fast paths for transformation semigroups -----------------------------


def _codes(arr: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return arr.astype(np.int64) @ weights


def transformation_table(elements: Sequence[Transformation], sandwich: Transformation | None = None) -> SemigroupTable:
    """Cayley table of a set of transformations under ``f * a * g`` (or plain composition).

    Vectorised with numpy; the element list must be closed under the product.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("empty element list")
    n = len(elements[0])
    E = np.array(elements, dtype=np.int64)
    N = len(elements)
    codes = _codes(E, n)
    lookup = {int(c): i for i, c in enumerate(codes)}
    left = E if sandwich is None else np.asarray(sandwich, dtype=np.int64)[E]
    code_to_idx = None
    if n**n <= 10**7:
        code_to_idx = np.full(n**n, -1, dtype=np.int64)
        code_to_idx[codes] = np.arange(N)
    table = np.empty((N, N), dtype=np.int32)
    for i in range(N):
        # row i: x -> g[left_i[x]] for every g
        prods = E[:, left[i]]
        pc = _codes(prods, n)
        if code_to_idx is not None:
            idx = code_to_idx[pc]
        else:
            idx = np.array([lookup.get(int(c), -1) for c in pc])
        if (idx < 0).any():
            raise ValueError("element list is not closed under the product")
        table[i] = idx
    return SemigroupTable(elements, table)


def transformation_closure(generators: Sequence[Transformation], sandwich: Transformation | None = None,
                           cap: int = DEFAULT_CAP) -> list[Transformation]:
    """Elements of the semigroup generated under ``f * a * g``, in BFS order."""
    gens = list(dict.fromkeys(generators))
    if not gens:
        raise ValueError("closure needs at least one generator")
    n = len(gens[0])
    G = np.array(gens, dtype=np.int64)
    a = None if sandwich is None else np.asarray(sandwich, dtype=np.int64)
    seen = {tuple(g) for g in gens}
    out = list(gens)
    frontier = G
    while len(frontier):
        left = frontier if a is None else a[frontier]
        # prods[k, j] = gens[j] o left[k]
        prods = G[:, left].transpose(1, 0, 2).reshape(-1, n)
        new = []
        for row in map(tuple, prods.tolist()):
            if row not in seen:
                seen.add(row)
                new.append(row)
                if len(seen) > cap:
                    raise SizeLimitError(f"closure exceeded cap of {cap} elements")
        out.extend(Transformation._raw(t) for t in new)
        frontier = np.array(new, dtype=np.int64).reshape(-1, n)
    return out


# --- Green's relations -----------------------------------------------------


@dataclass
class GreenData:
    """Green's classes of a finite semigroup, by element index.

    Class ids are numbered by first occurrence in element order.
    ``d_leq`` is the partial order on D-class ids as a boolean matrix,
    ``d_leq[i, j]`` meaning D_i <= D_j.
    """

    r_ids: np.ndarray
    l_ids: np.ndarray
    h_ids: np.ndarray
    d_ids: np.ndarray
    h_is_group: np.ndarray
    d_leq: np.ndarray
    idempotent: np.ndarray = field(repr=False)

    @property
    def n_d(self) -> int:
        return int(self.d_ids.max()) + 1 if len(self.d_ids) else 0

    def classes(self, kind: str) -> list[list[int]]:
        ids = {"R": self.r_ids, "L": self.l_ids, "H": self.h_ids, "D": self.d_ids}[kind]
        out: list[list[int]] = [[] for _ in range(int(ids.max()) + 1)] if len(ids) else []
        for x, c in enumerate(ids.tolist()):
            out[c].append(x)
        return out

    def class_of(self, x: int, kind: str) -> list[int]:
        ids = {"R": self.r_ids, "L": self.l_ids, "H": self.h_ids, "D": self.d_ids}[kind]
        return np.nonzero(ids == ids[x])[0].tolist()

    def maximal_d_classes(self) -> list[int]:
        M = self.d_leq
        k = self.n_d
        return [j for j in range(k) if not any(M[j, i] and i != j for i in range(k))]

    def is_regular_d(self, d: int) -> bool:
        return bool(self.idempotent[self.d_ids == d].any())

    def d_covers(self) -> list[tuple[int, int]]:
        """Covering pairs (lower, upper) of the D-order."""
        M = self.d_leq.copy()
        k = self.n_d
        np.fill_diagonal(M, False)
        out = []
        for i in range(k):
            for j in range(k):
                if M[i, j] and not any(M[i, z] and M[z, j] for z in range(k)):
                    out.append((i, j))
        return out


def _relabel(keys) -> np.ndarray:
    ids: dict = {}
    return np.array([ids.setdefault(k, len(ids)) for k in keys], dtype=np.int64)


def idempotents(S: SemigroupTable) -> list[int]:
    T = S.table
    idx = np.arange(len(S))
    return np.nonzero(T[idx, idx] == idx)[0].tolist()


def regular_elements(S: SemigroupTable) -> list[int]:
    """All x with x*y*x = x for some y."""
    T = S.table
    out = []
    for x in range(len(S)):
        if (T[T[x, :], x] == x).any():
            out.append(x)
    return out


def green_classes(S: SemigroupTable) -> GreenData:
    """Green's R, L, H, D classes and the D-order from principal ideals.

    The identity of S^1 is virtual: each principal ideal is seeded with its
    generating element.  D is formed as R∘L and checked to be transitive and
    to agree with J computed from two-sided ideals.
    """
    T = S.table
    N = len(S)
    idx = np.arange(N)
    right = np.zeros((N, N), dtype=bool)  # right[x] = x S^1
    right[idx[:, None], T] = True
    right[idx, idx] = True
    left = np.zeros((N, N), dtype=bool)  # left[x] = S^1 x
    left[idx[:, None], T.T] = True
    left[idx, idx] = True

    r_ids = _relabel(row.tobytes() for row in np.packbits(right, axis=1))
    l_ids = _relabel(row.tobytes() for row in np.packbits(left, axis=1))
    h_ids = _relabel(zip(r_ids.tolist(), l_ids.tolist()))

    # D = R∘L: x D y iff R_x meets L_y
    pairs = set(zip(r_ids.tolist(), l_ids.tolist()))
    parent = {}

    def find(u):
        while parent.setdefault(u, u) != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for rr, ll in pairs:
        parent[find(("R", rr))] = find(("L", ll))
    comp = [find(("R", rr)) for rr in r_ids.tolist()]
    d_ids = _relabel(comp)
    rs_in: dict[int, set] = {}
    ls_in: dict[int, set] = {}
    for x in range(N):
        rs_in.setdefault(int(d_ids[x]), set()).add(int(r_ids[x]))
        ls_in.setdefault(int(d_ids[x]), set()).add(int(l_ids[x]))
    for d in rs_in:
        for rr in rs_in[d]:
            for ll in ls_in[d]:
                if (rr, ll) not in pairs:
                    raise AssertionError("R∘L is not transitive; product is not a semigroup")

    # two-sided ideals S^1 x S^1 = union of y S^1 over y in S^1 x
    two = (left.astype(np.float32) @ right.astype(np.float32)) > 0
    j_ids = _relabel(row.tobytes() for row in np.packbits(two, axis=1))
    if len(set(zip(j_ids.tolist(), d_ids.tolist()))) != len(set(j_ids.tolist())) or \
            len(set(j_ids.tolist())) != len(set(d_ids.tolist())):
        raise AssertionError("J != D in a finite semigroup")

    k = int(d_ids.max()) + 1 if N else 0
    reps = [int(np.argmax(d_ids == d)) for d in range(k)]
    d_leq = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            d_leq[i, j] = two[reps[j], reps[i]]

    idem = T[idx, idx] == idx
    n_h = int(h_ids.max()) + 1 if N else 0
    h_is_group = np.zeros(n_h, dtype=bool)
    h_is_group[h_ids[idem]] = True
    return GreenData(r_ids, l_ids, h_ids, d_ids, h_is_group, d_leq, idem)


# --- generating sets -----------------------------------------------------


def maximal_class_constraints(S: SemigroupTable, green: GreenData | None = None) -> list[frozenset[int]]:
    """R- and L-classes of maximal D-classes; every generating set meets each of them."""
    if green is None:
        green = green_classes(S)
    out = []
    for d in green.maximal_d_classes():
        members = np.nonzero(green.d_ids == d)[0]
        for ids in (green.r_ids, green.l_ids):
            groups: dict[int, list[int]] = {}
            for x in members.tolist():
                groups.setdefault(int(ids[x]), []).append(x)
            out.extend(frozenset(g) for g in groups.values())
    # dedupe, keep order
    return list(dict.fromkeys(out))


def generating_subsets(S: SemigroupTable, k: int, candidates: Sequence[int] | None = None,
                       green: GreenData | None = None, prune: bool = True,
                       time_budget: float | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every k-subset of ``candidates`` (default: all of S) that generates S.

    Subsets are produced in lexicographic order.  With ``prune`` a subset is
    only closed when it meets every R- and L-class of every maximal D-class.
    """
    cand = list(range(len(S))) if candidates is None else sorted(set(candidates))
    constraints = maximal_class_constraints(S, green) if prune else []
    if any(not (c & set(cand)) for c in constraints):
        return
    deadline = None if time_budget is None else time.monotonic() + time_budget
    # map every candidate to the constraints it satisfies as a bitmask
    masks = {x: sum(1 << i for i, c in enumerate(constraints) if x in c) for x in cand}
    full = (1 << len(constraints)) - 1
    count = 0
    for U in itertools.combinations(cand, k):
        if full:
            m = 0
            for x in U:
                m |= masks[x]
            if m != full:
                continue
        count += 1
        if deadline is not None and count % 1024 == 0 and time.monotonic() > deadline:
            raise SearchBudgetExceeded(f"generating-set search exceeded {time_budget}s")
        if S.is_generating(U):
            yield U


def is_generating(S: SemigroupTable, U: Iterable[int]) -> bool:
    return S.is_generating(U)


def min_rank_exhaustive(S: SemigroupTable, upper_bound: int, candidates: Sequence[int] | None = None,
                        max_subsets: int = 5 * 10**7, time_budget: float | None = None) -> int:
    """Least k <= upper_bound such that some k-subset generates S.

    ``upper_bound`` must come from a known generating set; it is returned
    unchanged when no smaller generating set exists, without re-checking it.
    """
    cand = list(range(len(S))) if candidates is None else sorted(set(candidates))
    from math import comb

    green = green_classes(S)
    lower = max(1, *_class_counts(S, green))
    for k in range(lower, upper_bound):
        if comb(len(cand), k) > max_subsets:
            raise SizeLimitError(f"C({len(cand)},{k}) subsets exceeds search limit {max_subsets}")
        for _ in generating_subsets(S, k, cand, green=green, time_budget=time_budget):
            return k
    return upper_bound


def _class_counts(S: SemigroupTable, green: GreenData) -> tuple[int, int]:
    """Numbers of R- and L-classes in maximal D-classes; each is a lower bound on the rank."""
    maxd = set(green.maximal_d_classes())
    inside = [x for x in range(len(S)) if int(green.d_ids[x]) in maxd]
    return len({int(green.r_ids[x]) for x in inside}), len({int(green.l_ids[x]) for x in inside})


def right_zero(k: int) -> SemigroupTable:
    """The k-element right-zero semigroup (xy = y)."""
    return SemigroupTable(list(range(k)), np.tile(np.arange(k, dtype=np.int32), (k, 1)))
