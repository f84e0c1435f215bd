"""Symmetric tensors stored once per sorted multi-index.

A symmetric tensor of order ``m`` and dimension ``n`` has exactly
``C(n+m-1, m)`` independent entries, one for every non-decreasing
m-tuple over ``1..n``.  Entries are kept in a flat tuple indexed by the
colex rank of that tuple, so the storage of an ``n``-dimensional tensor
is a prefix of the storage of the ``(n+1)``-dimensional one.

All values are exact :class:`fractions.Fraction` instances.  Indices are
1-based throughout, matching the usual mathematical notation.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DomainError,
    IndexOutOfRange,
    NegativeFactor,
    OrderMismatch,
)

BINARY = "binary"
INTEGER = "integer"
RATIONAL = "rational"
DOMAINS = (BINARY, INTEGER, RATIONAL)

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact rational; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__} {value!r}")


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


# -- multi-index arithmetic -------------------------------------------------

def colex_rank(entries: Sequence[int]) -> int:
    """Rank of a sorted 1-based tuple among non-decreasing tuples of its length."""
    # i_1 <= ... <= i_m maps to the strictly increasing c_k = (i_k - 1) + (k - 1)
    return sum(math.comb(i + k - 2, k) for k, i in enumerate(entries, start=1))


@lru_cache(maxsize=None)
def canonical_indices(order: int, dim: int) -> tuple[tuple[int, ...], ...]:
    """All sorted index tuples of the given order and dimension, in colex order."""
    idx = itertools.combinations_with_replacement(range(1, dim + 1), order)
    return tuple(sorted(idx, key=lambda t: t[::-1]))


def storage_size(order: int, dim: int) -> int:
    if dim == 0:
        return 0
    return math.comb(dim + order - 1, order)


def base_set(entries: Iterable[int]) -> frozenset[int]:
    return frozenset(entries)


def multiplicity(entries: Sequence[int]) -> int:
    """Number of raw index tuples that sort to ``entries``: m!/(k_1!...k_n!)."""
    count = math.factorial(len(entries))
    for k in Counter(entries).values():
        count //= math.factorial(k)
    return count


@dataclass(frozen=True, order=True)
class MultiIndex:
    """A sorted m-tuple over ``1..dim``."""

    entries: tuple[int, ...]
    dim: int

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValueError("a multi-index needs order m >= 2")
        if self.dim < 1:
            raise ValueError("a multi-index needs dimension n >= 1")
        if any(a > b for a, b in zip(self.entries, self.entries[1:])):
            raise ValueError(f"entries {self.entries} are not sorted")
        for i in self.entries:
            if not 1 <= i <= self.dim:
                raise IndexOutOfRange(f"index {i} outside [1..{self.dim}]")

    @property
    def order(self) -> int:
        return len(self.entries)

    @property
    def base_set(self) -> frozenset[int]:
        return frozenset(self.entries)

    @property
    def level(self) -> int:
        return sum(self.entries) - self.order

    @property
    def rank(self) -> int:
        return colex_rank(self.entries)

    @property
    def multiplicity(self) -> int:
        return multiplicity(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return ",".join(map(str, self.entries))


def canonicalize(raw_index: Sequence[int] | MultiIndex, dim: int) -> MultiIndex:
    """Sort a raw subscript tuple after checking every entry lies in ``1..dim``."""
    if isinstance(raw_index, MultiIndex):
        raw_index = raw_index.entries
    for i in raw_index:
        if not isinstance(i, int) or not 1 <= i <= dim:
            raise IndexOutOfRange(f"index {i!r} outside [1..{dim}]")
    return MultiIndex(tuple(sorted(raw_index)), dim)


def _sorted_checked(raw_index, order: int, dim: int) -> tuple[int, ...]:
    if isinstance(raw_index, MultiIndex):
        raw_index = raw_index.entries
    if isinstance(raw_index, int):
        raw_index = (raw_index,)
    if len(raw_index) != order:
        raise IndexOutOfRange(f"expected {order} subscripts, got {len(raw_index)}")
    for i in raw_index:
        if not isinstance(i, int) or not 1 <= i <= dim:
            raise IndexOutOfRange(f"index {i!r} outside [1..{dim}]")
    return tuple(sorted(raw_index))


# -- tensors ------------------------------------------------------------------

def infer_domain(values: Iterable[Fraction]) -> str:
    domain = BINARY
    for v in values:
        if v.denominator != 1 or v < 0:
            return RATIONAL
        if v > 1:
            domain = INTEGER
    return domain


def _domain_admits(domain: str, values: Iterable[Fraction]) -> bool:
    narrowest = infer_domain(values)
    return DOMAINS.index(narrowest) <= DOMAINS.index(domain)


class SymmetricTensor:
    """An order-m, dimension-n symmetric tensor with exact rational entries.

    ``A[i1, ..., im]`` accepts subscripts in any order.  The ``domain``
    flag is ``"binary"``, ``"integer"`` (nonnegative integers) or
    ``"rational"``; when omitted it is inferred as the narrowest domain
    containing every value, and when given it is checked.
    """

    __slots__ = ("order", "dim", "domain", "_values")

    def __init__(self, order: int, dim: int, values: Iterable, domain: str | None = None):
        if order < 2:
            raise ValueError("tensor order must be at least 2")
        if dim < 0:
            raise ValueError("tensor dimension must be nonnegative")
        vals = as_vector(values)
        if len(vals) != storage_size(order, dim):
            raise DimensionMismatch(
                f"order {order} dim {dim} needs {storage_size(order, dim)} values, got {len(vals)}")
        if domain is None:
            domain = infer_domain(vals)
        elif domain not in DOMAINS:
            raise ValueError(f"unknown domain {domain!r}")
        elif not _domain_admits(domain, vals):
            raise DomainError(f"values are not all in the {domain} domain")
        self.order = order
        self.dim = dim
        self.domain = domain
        self._values = vals

    # construction helpers
    @classmethod
    def zeros(cls, order: int, dim: int) -> "SymmetricTensor":
        return cls(order, dim, (ZERO,) * storage_size(order, dim))

    @classmethod
    def ones(cls, order: int, dim: int) -> "SymmetricTensor":
        """The all-ones tensor."""
        return cls(order, dim, (ONE,) * storage_size(order, dim))

    @classmethod
    def diagonal(cls, order: int, diag: Sequence) -> "SymmetricTensor":
        diag = as_vector(diag)
        dim = len(diag)
        vals = [diag[idx[0] - 1] if idx[0] == idx[-1] else ZERO
                for idx in canonical_indices(order, dim)]
        return cls(order, dim, vals)

    @classmethod
    def from_entries(cls, order: int, dim: int, entries: Mapping, domain: str | None = None):
        """Build from a mapping of subscript tuples to values; missing entries are zero.

        Permuted copies of the same subscript may appear but must agree.
        """
        vals = [ZERO] * storage_size(order, dim)
        seen = {}
        for raw, value in entries.items():
            key = _sorted_checked(raw, order, dim)
            value = as_fraction(value)
            if key in seen and seen[key] != value:
                raise ValueError(f"conflicting values for symmetric index {key}")
            seen[key] = value
            vals[colex_rank(key)] = value
        return cls(order, dim, vals, domain)

    @classmethod
    def from_function(cls, order: int, dim: int, fn) -> "SymmetricTensor":
        return cls(order, dim, [fn(idx) for idx in canonical_indices(order, dim)])

    # access
    @property
    def values(self) -> tuple[Fraction, ...]:
        """Stored values in colex order of :meth:`indices`."""
        return self._values

    def indices(self) -> tuple[tuple[int, ...], ...]:
        return canonical_indices(self.order, self.dim)

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return zip(self.indices(), self._values)

    def __getitem__(self, raw_index) -> Fraction:
        return self._values[colex_rank(_sorted_checked(raw_index, self.order, self.dim))]

    def diagonal_values(self) -> tuple[Fraction, ...]:
        return tuple(self[(i,) * self.order] for i in range(1, self.dim + 1))

    def is_diagonal(self) -> bool:
        return all(v == 0 for idx, v in self.items() if idx[0] != idx[-1])

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._values)

    def is_integral(self) -> bool:
        """True when every entry is a nonnegative integer."""
        return self.domain != RATIONAL

    def is_binary(self) -> bool:
        return self.domain == BINARY

    def is_zero(self) -> bool:
        return not any(self._values)

    def principal(self, vertices: Sequence[int]) -> "SymmetricTensor":
        """Principal subtensor on ``vertices``; the k-th listed vertex becomes index k."""
        vertices = list(vertices)
        for v in vertices:
            if not 1 <= v <= self.dim:
                raise IndexOutOfRange(f"vertex {v} outside [1..{self.dim}]")
        return SymmetricTensor(
            self.order, len(vertices),
            [self[tuple(vertices[i - 1] for i in idx)]
             for idx in canonical_indices(self.order, len(vertices))])

    def __eq__(self, other):
        if not isinstance(other, SymmetricTensor):
            return NotImplemented
        return (self.order, self.dim, self._values) == (other.order, other.dim, other._values)

    def __hash__(self):
        return hash((self.order, self.dim, self._values))

    def __add__(self, other: "SymmetricTensor") -> "SymmetricTensor":
        _check_same_shape(self, other)
        return SymmetricTensor(self.order, self.dim,
                               [a + b for a, b in zip(self._values, other._values)])

    def __sub__(self, other: "SymmetricTensor") -> "SymmetricTensor":
        _check_same_shape(self, other)
        return SymmetricTensor(self.order, self.dim,
                               [a - b for a, b in zip(self._values, other._values)])

    def scale(self, c) -> "SymmetricTensor":
        c = as_fraction(c)
        return SymmetricTensor(self.order, self.dim, [c * v for v in self._values])

    def __repr__(self):
        nz = {idx: str(v) for idx, v in self.items() if v}
        return f"SymmetricTensor(order={self.order}, dim={self.dim}, domain={self.domain!r}, nonzero={nz})"


def _check_same_shape(a: SymmetricTensor, b: SymmetricTensor):
    if a.order != b.order:
        raise OrderMismatch(f"orders {a.order} and {b.order} differ")
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")


def lookup(A: SymmetricTensor, raw_index) -> Fraction:
    return A[raw_index]


# -- rank-one constructions ---------------------------------------------------

def _nonnegative_vector(beta) -> tuple[Fraction, ...]:
    beta = as_vector(beta)
    for i, b in enumerate(beta, start=1):
        if b < 0:
            raise NegativeFactor(f"coordinate {i} of factor is {b}")
    return beta


def rank_one_power(beta: Sequence, order: int) -> SymmetricTensor:
    """The symmetric power ``beta^m``: entry ``beta[i1] * ... * beta[im]``."""
    if order < 2:
        raise ValueError("order must be at least 2")
    beta = _nonnegative_vector(beta)
    return SymmetricTensor(
        order, len(beta),
        [math.prod((beta[i - 1] for i in idx), start=ONE)
         for idx in canonical_indices(order, len(beta))])


def sum_rank_one(factors: Sequence[Sequence], order: int, dim: int | None = None) -> SymmetricTensor:
    """Entrywise sum of ``beta^m`` over ``factors``.

    ``dim`` is required only when ``factors`` is empty.
    """
    vectors = [_nonnegative_vector(f) for f in factors]
    dims = {len(v) for v in vectors}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise DimensionMismatch(f"factors have mixed dimensions {sorted(dims)}")
    if not dims:
        raise DimensionMismatch("dimension of an empty factor list must be given")
    n = dims.pop()
    total = [ZERO] * storage_size(order, n)
    for beta in vectors:
        support = [i for i, b in enumerate(beta, start=1) if b]
        # only entries whose base set lies in supp(beta) receive mass
        for idx in itertools.combinations_with_replacement(support, order):
            total[colex_rank(idx)] += math.prod((beta[i - 1] for i in idx), start=ONE)
    return SymmetricTensor(order, n, total)


def evaluate(A: SymmetricTensor, x: Sequence) -> Fraction:
    """The homogeneous form ``A x^m`` summed over all n^m raw subscripts."""
    x = as_vector(x)
    if len(x) != A.dim:
        raise DimensionMismatch(f"point has dimension {len(x)}, tensor has {A.dim}")
    total = ZERO
    for idx, v in A.items():
        if v:
            total += v * multiplicity(idx) * math.prod((x[i - 1] for i in idx), start=ONE)
    return total


def direct_sum(*tensors: SymmetricTensor) -> SymmetricTensor:
    """Block-diagonal combination; all cross-block entries are zero."""
    if not tensors:
        raise ValueError("direct_sum needs at least one tensor")
    order = tensors[0].order
    for t in tensors:
        if t.order != order:
            raise OrderMismatch(f"orders {order} and {t.order} differ")
    offsets = list(itertools.accumulate((t.dim for t in tensors), initial=0))
    n = offsets[-1]
    vals = [ZERO] * storage_size(order, n)
    for t, off in zip(tensors, offsets):
        for idx, v in t.items():
            if v:
                vals[colex_rank(tuple(i + off for i in idx))] = v
    return SymmetricTensor(order, n, vals)


def is_strong_symmetric(A: SymmetricTensor) -> bool:
    """True when every entry depends only on the base set of its index."""
    by_base: dict[frozenset, Fraction] = {}
    for idx, v in A.items():
        b = frozenset(idx)
        if by_base.setdefault(b, v) != v:
            return False
    return True


# -- permutations ---------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A bijection of ``1..n``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        if len(other) != len(self):
            raise DimensionMismatch("permutations act on different sets")
        return Permutation(tuple(self(other(i)) for i in range(1, len(self) + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))


def compose(p: Permutation, q: Permutation) -> Permutation:
    return p.compose(q)


def permute(A: SymmetricTensor, p: Permutation) -> SymmetricTensor:
    """Relabel every mode by ``p``: ``result[p(i1),...,p(im)] = A[i1,...,im]``."""
    if len(p) != A.dim:
        raise DimensionMismatch(f"permutation of {len(p)} points, tensor dimension {A.dim}")
    inv = p.inverse()
    return SymmetricTensor(
        A.order, A.dim,
        [A[tuple(inv(i) for i in idx)] for idx in A.indices()],
        A.domain)


# -- Khatri-Rao -------------------------------------------------------------------

def khatri_rao(left: Sequence[Sequence], right: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Columnwise Kronecker product of two matrices given as row lists.

    Row ``(a, b)`` of the result (row-major over ``a`` then ``b``) is the
    Hadamard product of row ``a`` of ``left`` and row ``b`` of ``right``.
    """
    left = [as_vector(r) for r in left]
    right = [as_vector(r) for r in right]
    widths = {len(r) for r in left} | {len(r) for r in right}
    if len(widths) > 1:
        raise DimensionMismatch("Khatri-Rao factors need the same number of columns")
    return [tuple(x * y for x, y in zip(a, b)) for a in left for b in right]


def khatri_rao_power(W: Sequence[Sequence], order: int) -> SymmetricTensor:
    """Tensor of row sums of the m-fold Khatri-Rao power of ``W`` (rows = vertices).

    The full ``n^m x r`` product is formed and every raw row sum is
    checked to agree with its sorted representative, so the result is
    symmetric by verification rather than by construction.
    """
    rows = [_nonnegative_vector(r) for r in W]
    n = len(rows)
    if len({len(r) for r in rows}) > 1:
        raise DimensionMismatch("rows of W have different lengths")
    kr = rows
    for _ in range(order - 1):
        kr = khatri_rao(kr, rows)
    sums = {}
    for raw, row in zip(itertools.product(range(1, n + 1), repeat=order), kr):
        total = sum(row, ZERO)
        key = tuple(sorted(raw))
        if sums.setdefault(key, total) != total:
            raise AssertionError(f"Khatri-Rao power not symmetric at {raw}")
    return SymmetricTensor(order, n, [sums[idx] for idx in canonical_indices(order, n)])
