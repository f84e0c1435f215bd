"""m-inner products, Gramian tensors and exact verification of CP decompositions.

The Gramian tensor of columns ``alpha_1..alpha_n`` (each of length d)
has entry ``(alpha_i1, ..., alpha_im)`` at ``(i1..im)``: the sum of the
coordinates of their Hadamard product.  Reading the same d x n matrix
by rows gives d vectors ``beta_j`` of length n with
``Gram(B) = sum_j beta_j^m``; this is how a nonnegative Gramian
representation and a CP decomposition are traded for one another.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import gmpy2

from .certificate import NEGATIVE, POSITIVE, Certificate, Witness, fmt, fmt_index
from .errors import DimensionMismatch, EmptyFamily, NegativeFactor, UndefinedNorm
from .tensor import (
    ONE,
    ZERO,
    SymmetricTensor,
    as_fraction,
    as_vector,
    canonical_indices,
    colex_rank,
    sum_rank_one,
)

ENCLOSURE_BITS = 50


def _common_dim(vectors) -> int:
    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors have mixed dimensions {sorted(dims)}")
    return dims.pop()


def hadamard(vectors: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Coordinatewise product of a nonempty family of equal-length vectors."""
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        raise EmptyFamily("Hadamard product of an empty family")
    d = _common_dim(vectors)
    return tuple(math.prod((v[k] for v in vectors), start=ONE) for k in range(d))


def m_inner_product(vectors: Sequence[Sequence]) -> Fraction:
    """Sum of the coordinates of the Hadamard product of ``vectors``."""
    return sum(hadamard(vectors), ZERO)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= as_fraction(value) <= self.hi

    def __str__(self):
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


def _exact_root(value: Fraction, m: int) -> Fraction | None:
    p, p_exact = gmpy2.iroot(value.numerator, m)
    q, q_exact = gmpy2.iroot(value.denominator, m)
    if p_exact and q_exact:
        return Fraction(int(p), int(q))
    return None


def root_enclosure(value: Fraction, m: int, bits: int = ENCLOSURE_BITS) -> Enclosure:
    """Interval of width ``2**-bits`` containing the real m-th root of ``value >= 0``."""
    scale = 1 << bits
    # floor(value * 2^(bits*m)) bracketed by consecutive m-th powers
    n = (value.numerator << (bits * m)) // value.denominator
    r = int(gmpy2.iroot(n, m)[0])
    return Enclosure(Fraction(r, scale), Fraction(r + 1, scale))


def m_norm(alpha: Sequence, m: int) -> Fraction | Enclosure:
    """m-th root of the m-inner product of ``m`` copies of ``alpha``.

    Exact when that power is a perfect m-th power of a rational,
    otherwise an :class:`Enclosure` of width ``2**-50``.
    """
    alpha = as_vector(alpha)
    if m < 1:
        raise ValueError("m must be positive")
    if m % 2 and any(a < 0 for a in alpha):
        raise UndefinedNorm("odd m-norm of a vector with negative coordinates")
    power = sum((a ** m for a in alpha), ZERO)
    exact = _exact_root(power, m)
    if exact is not None:
        return exact
    return root_enclosure(power, m)


# -- Gramian tensors -------------------------------------------------------------

@dataclass(frozen=True)
class FactorMatrix:
    """A d x n matrix held as its n columns ``alpha_1..alpha_n``.

    The columns generate a Gramian tensor; the rows (see :attr:`rows`)
    are the factors ``beta_1..beta_d`` of the matching CP decomposition.
    """

    columns: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cols = tuple(as_vector(c) for c in self.columns)
        if cols:
            _common_dim(cols)
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "FactorMatrix":
        rows = [as_vector(r) for r in rows]
        n = _common_dim(rows)
        return cls(tuple(tuple(r[i] for r in rows) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def d(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(c[k] for c in self.columns) for k in range(self.d))

    @property
    def nonnegative(self) -> bool:
        return all(x >= 0 for c in self.columns for x in c)


def gram_tensor(B: FactorMatrix, m: int) -> SymmetricTensor:
    """Order-m Gramian tensor of the columns of ``B``."""
    if m < 2:
        raise ValueError("order must be at least 2")
    if B.n < 1:
        raise ValueError("a Gramian tensor needs at least one column")
    cols = B.columns
    return SymmetricTensor(
        m, B.n,
        [m_inner_product([cols[i - 1] for i in idx]) for idx in canonical_indices(m, B.n)])


# -- decompositions ----------------------------------------------------------------

@dataclass(frozen=True)
class CpDecomposition:
    """A sum of symmetric rank-one terms.

    ``factors`` holds explicit nonnegative vectors ``beta`` (term
    ``beta^m``).  ``weight_form`` holds pairs ``(pattern, w)`` with a
    (0,1) ``pattern`` and a rational weight ``w >= 0``, standing for the
    factor ``w^(1/m) * pattern`` whose m-th power is ``w * pattern^m``;
    this keeps irrational factors verifiable exactly.
    """

    factors: tuple[tuple[Fraction, ...], ...] = ()
    weight_form: tuple[tuple[tuple[int, ...], Fraction], ...] = field(default=())

    def __post_init__(self):
        factors = tuple(as_vector(f) for f in self.factors)
        for f in factors:
            if any(x < 0 for x in f):
                raise NegativeFactor(f"factor {f} has a negative coordinate")
        weighted = []
        for pattern, w in self.weight_form:
            pattern = tuple(int(x) for x in pattern)
            w = as_fraction(w)
            if any(x not in (0, 1) for x in pattern):
                raise ValueError(f"weight pattern {pattern} is not a (0,1) vector")
            if w < 0:
                raise NegativeFactor(f"negative weight {w}")
            weighted.append((pattern, w))
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "weight_form", tuple(weighted))
        dims = {len(f) for f in factors} | {len(p) for p, _ in weighted}
        if len(dims) > 1:
            raise DimensionMismatch(f"decomposition terms have mixed dimensions {sorted(dims)}")

    def __len__(self):
        return len(self.factors) + len(self.weight_form)

    @property
    def dim(self) -> int | None:
        if self.factors:
            return len(self.factors[0])
        if self.weight_form:
            return len(self.weight_form[0][0])
        return None

    def to_tensor(self, m: int, dim: int | None = None) -> SymmetricTensor:
        n = self.dim if self.dim is not None else dim
        total = list(sum_rank_one(self.factors, m, n).values)
        for pattern, w in self.weight_form:
            support = [i + 1 for i, x in enumerate(pattern) if x]
            for idx in canonical_indices(m, n):
                if set(idx) <= set(support):
                    total[colex_rank(idx)] += w
        return SymmetricTensor(m, n, total)


def verify_cp_decomposition(A: SymmetricTensor, D: CpDecomposition) -> Certificate:
    """Check ``A == sum of the terms of D`` exactly.

    A negative certificate names the first differing index in storage order.
    """
    if D.dim is not None and D.dim != A.dim:
        raise DimensionMismatch(f"decomposition has dimension {D.dim}, tensor has {A.dim}")
    rebuilt = D.to_tensor(A.order, A.dim)
    for (idx, want), got in zip(A.items(), rebuilt.values):
        if want != got:
            text = f"A({fmt_index(idx)}) = {fmt(want)} but decomposition gives {fmt(got)}"
            return Certificate(NEGATIVE, D, Witness(idx, want, got, text))
    return Certificate(POSITIVE, D)


class HolderResult(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool


def holder_check(vectors: Sequence[Sequence]) -> HolderResult:
    """Compare ``(a_1,...,a_m)^m`` with ``prod_j (a_j,...,a_j)`` for nonnegative vectors."""
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        raise EmptyFamily("Hölder check of an empty family")
    _common_dim(vectors)
    for v in vectors:
        if any(x < 0 for x in v):
            raise NegativeFactor(f"vector {v} has a negative coordinate")
    m = len(vectors)
    lhs = m_inner_product(vectors) ** m
    rhs = math.prod((sum((x ** m for x in v), ZERO) for v in vectors), start=ONE)
    return HolderResult(lhs, rhs, lhs <= rhs)


def decomposition_from_rows(B: FactorMatrix) -> CpDecomposition:
    """Rows of a nonnegative factor matrix as CP factors of ``gram_tensor(B, m)``."""
    return CpDecomposition(B.rows)

