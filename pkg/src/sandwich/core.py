"""Transformations of a finite set and the exact combinatorics built on them.

A transformation of ``{1..n}`` is written in one-line notation
``[1f, 2f, ..., nf]`` and composed left to right: ``f * g`` applies ``f``
first.  Internally images are stored 0-indexed; every public constructor,
``repr`` and text format is 1-indexed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

MAX_DEGREE = 255


class Transformation(tuple):
    """A total map ``{1..n} -> {1..n}``.

    ``Transformation([2, 3, 1])`` takes 1-indexed images.  The object itself
    is a tuple of 0-indexed images, so ``f[x]`` is the 0-based image of the
    0-based point ``x``; use :attr:`images` for the 1-indexed view.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        imgs = tuple(int(v) for v in images)
        n = len(imgs)
        if n == 0:
            raise ValueError("a transformation needs degree n >= 1")
        if n > MAX_DEGREE:
            raise ValueError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
        for v in imgs:
            if not 1 <= v <= n:
                raise ValueError(f"image {v} outside 1..{n} in {list(imgs)}")
        return tuple.__new__(cls, [v - 1 for v in imgs])

    @classmethod
    def _raw(cls, zero_based: Iterable[int]) -> "Transformation":
        return tuple.__new__(cls, zero_based)

    def __reduce__(self):
        return (Transformation, (self.images,))

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls._raw(range(n))

    @classmethod
    def constant(cls, n: int, value: int) -> "Transformation":
        """The constant map onto the 1-indexed point ``value``."""
        if not 1 <= value <= n:
            raise ValueError(f"value {value} outside 1..{n}")
        return cls._raw([value - 1] * n)

    @classmethod
    def parse(cls, text: str) -> "Transformation":
        return parse_transformation(text)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self)

    def __mul__(self, other):
        if isinstance(other, Transformation):
            return compose(self, other)
        return NotImplemented

    def __rmul__(self, other):
        return NotImplemented

    def __add__(self, other):
        return NotImplemented

    def __repr__(self) -> str:
        return "[" + ",".join(str(v + 1) for v in self) + "]"

    __str__ = __repr__

    def rank(self) -> int:
        return len(set(self))

    def kernel(self) -> "KernelPartition":
        return kernel(self)

    def image_set(self) -> tuple[int, ...]:
        return image_set(self)

    def is_idempotent(self) -> bool:
        return all(self[v] == v for v in self)

    def is_permutation(self) -> bool:
        return len(set(self)) == len(self)

    def code(self) -> int:
        """Base-``n`` integer code; lexicographic order on images agrees with code order."""
        n = len(self)
        c = 0
        for v in self:
            c = c * n + v
        return c

    @classmethod
    def from_code(cls, code: int, n: int) -> "Transformation":
        digits = []
        for _ in range(n):
            code, d = divmod(code, n)
            digits.append(d)
        return cls._raw(reversed(digits))


def compose(f: Transformation, g: Transformation) -> Transformation:
    """Left-to-right product: ``x(fg) = (xf)g``."""
    if len(f) != len(g):
        raise ValueError(f"degree mismatch: {len(f)} vs {len(g)}")
    return Transformation._raw(map(g.__getitem__, f))


@dataclass(frozen=True)
class KernelPartition:
    """A set partition of ``{1..n}`` in canonical form.

    Blocks are sorted internally and ordered by least element, so two equal
    partitions are equal as values.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(x for b in self.blocks for x in b)
        if seen != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {self.blocks} do not partition 1..{self.n}")
        if any(len(b) == 0 for b in self.blocks):
            raise ValueError("empty block")
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "KernelPartition":
        blocks = [tuple(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, tuple(blocks))

    @classmethod
    def parse(cls, text: str) -> "KernelPartition":
        return parse_partition(text)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def refines(self, other: "KernelPartition") -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        owner = {x: i for i, b in enumerate(other.blocks) for x in b}
        return all(len({owner[x] for x in b}) == 1 for b in self.blocks)

    def __str__(self) -> str:
        return "(" + "|".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"


def kernel(f: Transformation) -> KernelPartition:
    classes: dict[int, list[int]] = {}
    for x, v in enumerate(f):
        classes.setdefault(v, []).append(x + 1)
    return KernelPartition(len(f), tuple(tuple(b) for b in classes.values()))


def kernel_key(f: Sequence[int]) -> tuple[int, ...]:
    """Cheap canonical kernel label: block number of each point, blocks numbered by first point."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in f)


def image_set(f: Transformation) -> tuple[int, ...]:
    """Sorted 1-indexed image."""
    return tuple(v + 1 for v in sorted(set(f)))


def rank(f: Sequence[int]) -> int:
    return len(set(f))


_T_RE = re.compile(r"^\s*(\[)?\s*(\d+(?:\s*[,\s]\s*\d+)*)\s*(\])?\s*$")


def parse_transformation(text: str) -> Transformation:
    """Parse ``[1,2,3,3]``; brackets are optional and spaces ignored."""
    m = _T_RE.match(text)
    if not m or bool(m.group(1)) != bool(m.group(3)):
        raise ValueError(f"not a transformation literal: {text!r}")
    parts = re.split(r"[\s,]+", m.group(2))
    return Transformation(int(p) for p in parts)


def parse_partition(text: str) -> KernelPartition:
    """Parse ``({1}|{2}|{3,4})``."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"not a partition literal: {text!r}")
    blocks = []
    for chunk in body[1:-1].split("|"):
        chunk = chunk.strip()
        if not (chunk.startswith("{") and chunk.endswith("}")):
            raise ValueError(f"bad block {chunk!r} in {text!r}")
        blocks.append(tuple(int(p) for p in chunk[1:-1].split(",") if p.strip()))
    return KernelPartition.from_blocks(blocks)


def all_transformations(n: int) -> Iterator[Transformation]:
    """Every element of T_n in lexicographic order of one-line notation."""
    for imgs in itertools.product(range(n), repeat=n):
        yield Transformation._raw(imgs)


def permutations(n: int) -> Iterator[Transformation]:
    for p in itertools.permutations(range(n)):
        yield Transformation._raw(p)


# --- counting -------------------------------------------------------------


@lru_cache(maxsize=None)
def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m)."""
    if n < 0 or m < 0:
        raise ValueError("stirling2 takes non-negative arguments")
    if n == 0 and m == 0:
        return 1
    if n == 0 or m == 0 or m > n:
        return 0
    # iterative row build keeps recursion depth flat for large n
    row = [1] + [0] * m
    for i in range(1, n + 1):
        for j in range(min(i, m), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[m]


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def rho(n: int) -> int:
    """Rank (and idempotent rank) of the singular part of T_n."""
    if n < 2:
        raise ValueError("rho is defined for n >= 2")
    return 2 if n == 2 else n * (n - 1) // 2


def surjections(x: int, y: int) -> int:
    """Number of surjections from an x-set onto a y-set."""
    return factorial(y) * stirling2(x, y)


def rank_class_size(n: int, m: int) -> int:
    """|D_m| in T_n: transformations of rank exactly m."""
    return stirling2(n, m) * comb(n, m) * factorial(m)


def lambda_product(s, I: Iterable[int]) -> int:
    """Product of kernel-class sizes of the sandwich ``s`` over 1-indexed ``I``."""
    lams = s.lambdas
    out = 1
    for i in I:
        if not 1 <= i <= len(lams):
            raise IndexError(f"index {i} outside 1..{len(lams)}")
        out *= lams[i - 1]
    return out


def lambda_sum(lambdas: Sequence[int], m: int) -> int:
    """Sum of products of ``lambdas`` over all m-element index subsets."""
    return sum(prod(c) for c in itertools.combinations(lambdas, m))


# --- the sandwich element ------------------------------------------------


class SandwichElement:
    """An idempotent ``a`` of T_n with its image, kernel and class sizes cached.

    Indexing follows the sorted image: ``a_1 < ... < a_r`` and ``A_i`` is the
    kernel class of ``a`` containing ``a_i``.  All exposed labels are
    1-indexed.
    """

    __slots__ = ("a", "n", "r", "A", "blocks", "lambdas", "alpha", "_A0", "_cls", "_blocks0")

    def __init__(self, a: Transformation | Sequence[int] | str):
        if isinstance(a, str):
            a = parse_transformation(a)
        elif not isinstance(a, Transformation):
            a = Transformation(a)
        if not a.is_idempotent():
            raise ValueError(f"sandwich {a} is not idempotent; use normalize_sandwich")
        self.a = a
        self.n = len(a)
        A0 = tuple(sorted(set(a)))
        self._A0 = A0
        pos = {v: i for i, v in enumerate(A0)}
        # _cls[x]: 0-based index i with x in A_{i+1}
        self._cls = tuple(pos[a[x]] for x in range(self.n))
        blocks0 = [[] for _ in A0]
        for x, i in enumerate(self._cls):
            blocks0[i].append(x)
        self._blocks0 = tuple(tuple(b) for b in blocks0)
        self.r = len(A0)
        self.A = tuple(v + 1 for v in A0)
        self.blocks = tuple(tuple(x + 1 for x in b) for b in blocks0)
        self.lambdas = tuple(len(b) for b in blocks0)
        self.alpha = kernel(a)

    @property
    def Lambda(self) -> int:
        return prod(self.lambdas)

    def __repr__(self) -> str:
        return f"SandwichElement({self.a})"

    def __eq__(self, other):
        return isinstance(other, SandwichElement) and other.a == self.a

    def __hash__(self):
        return hash(("sandwich", self.a))

    def separates(self, points: Iterable[int]) -> bool:
        """Whether ker(a) holds at most one of the 0-based ``points`` per class."""
        cls = self._cls
        seen = set()
        for p in points:
            c = cls[p]
            if c in seen:
                return False
            seen.add(c)
        return True


def idempotents_of_degree(n: int) -> Iterator[Transformation]:
    for f in all_transformations(n):
        if f.is_idempotent():
            yield f


def kernel_shape_representative(lambdas: Sequence[int]) -> Transformation:
    """Idempotent whose kernel classes are consecutive intervals of the given sizes."""
    imgs = []
    start = 0
    for lam in lambdas:
        imgs.extend([start] * lam)
        start += lam
    return Transformation._raw(imgs)


def compositions_into(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of r positive integers summing to n."""
    for cuts in itertools.combinations(range(1, n), r - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(r))


def partitions_into(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n into exactly r parts, each in ascending order."""
    seen = set()
    for c in compositions_into(n, r):
        key = tuple(sorted(c))
        if key not in seen:
            seen.add(key)
            yield key
