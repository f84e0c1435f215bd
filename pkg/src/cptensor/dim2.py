"""Exact certification of symmetric tensors of dimension two.

A 2-dimensional order-m tensor is symmetric exactly when its entry is
constant on each class ``S^r`` of subscripts containing ``r`` ones, so
it is described by ``m + 1`` numbers.  For strong symmetric tensors
(entries depending only on the base set) this collapses to the two
diagonal values and one common off-diagonal value, and both the
{0,1}-CP question and a three-term CP construction become closed form.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .certificate import (
    INCONCLUSIVE,
    NEGATIVE,
    PASSES,
    Certificate,
    Witness,
    fmt,
    fmt_index,
)
from .errors import NotApplicable, WrongDimension
from .gramian import CpDecomposition, verify_cp_decomposition
from .tensor import ZERO, SymmetricTensor, as_fraction, is_strong_symmetric

BINARY_CP = "binary_cp"
NOT_BINARY_CP = "not_binary_cp"


@dataclass(frozen=True)
class Dim2Profile:
    """Value ``a[r]`` taken on the subscripts with exactly ``r`` ones.

    ``a[m]`` is ``A(1,...,1)`` and ``a[0]`` is ``A(2,...,2)``.  When the
    source is not constant on some class, ``valid`` is false,
    ``a`` holds ``None`` there and ``offending`` names two subscripts of
    that class with different values.
    """

    m: int
    a: tuple[Fraction | None, ...]
    valid: bool
    strong_symmetric: bool
    offending: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def profile_dim2(A: SymmetricTensor | Mapping) -> Dim2Profile:
    """Profile a 2-dimensional tensor.

    ``A`` is a :class:`SymmetricTensor` or a mapping from raw subscript
    tuples to values (missing subscripts are zero), the latter allowing
    a possibly non-symmetric tensor to be tested for symmetry.
    """
    if isinstance(A, SymmetricTensor):
        if A.dim != 2:
            raise WrongDimension(f"dimension is {A.dim}, not 2")
        m = A.order
        lookup = A.__getitem__
    else:
        keys = list(A)
        if not keys:
            raise ValueError("cannot infer the order of an empty mapping")
        m = len(keys[0])
        for k in keys:
            if len(k) != m:
                raise ValueError("subscripts of different lengths")
            if any(i not in (1, 2) for i in k):
                raise WrongDimension(f"subscript {k} is outside a 2-dimensional tensor")
        entries = {tuple(k): as_fraction(v) for k, v in A.items()}
        lookup = lambda k: entries.get(k, ZERO)  # noqa: E731

    a: list[Fraction | None] = [None] * (m + 1)
    first: list[tuple[int, ...] | None] = [None] * (m + 1)
    offending = None
    for raw in itertools.product((1, 2), repeat=m):
        r = raw.count(1)
        v = lookup(raw)
        if first[r] is None:
            first[r], a[r] = raw, v
        elif a[r] is not None and v != a[r]:
            if offending is None:
                offending = (first[r], raw)
            a[r] = None
    valid = offending is None
    strong = valid and len(set(a[1:m])) <= 1
    return Dim2Profile(m, tuple(a), valid, strong, offending)


@dataclass(frozen=True)
class BcpCertificate:
    outcome: str
    decomposition: tuple[tuple[int, ...], ...] | None = None
    bcprank: int | None = None
    witness: Witness | None = None

    @property
    def positive(self) -> bool:
        return self.outcome == BINARY_CP


def _require_strong_dim2(A: SymmetricTensor) -> tuple[Fraction, Fraction, Fraction]:
    if A.dim != 2:
        raise WrongDimension(f"dimension is {A.dim}, not 2")
    if not is_strong_symmetric(A):
        raise NotApplicable("tensor is not strong symmetric")
    m = A.order
    return A[(1,) * m], A[(2,) * m], A[(1,) * (m - 1) + (2,)]


def certify_binary_cp_dim2(A: SymmetricTensor) -> BcpCertificate:
    """Decide whether a strong symmetric integral 2-dim tensor is {0,1}-CP.

    It is exactly when the off-diagonal value ``n12`` is at most both
    diagonal values ``n1, n2``; the binary cprank is then
    ``n1 + n2 - n12``, realised by ``n12`` copies of ``(1,1)``,
    ``n1 - n12`` of ``(1,0)`` and ``n2 - n12`` of ``(0,1)``.
    """
    n1, n2, n12 = _require_strong_dim2(A)
    if not A.is_integral():
        raise NotApplicable("tensor has entries that are not nonnegative integers")
    m = A.order
    off = (1,) * (m - 1) + (2,)
    for diag_index, d in (((1,) * m, n1), ((2,) * m, n2)):
        if n12 > d:
            text = (f"A({fmt_index(off)}) = {fmt(n12)} > "
                    f"A({fmt_index(diag_index)}) = {fmt(d)}")
            return BcpCertificate(NOT_BINARY_CP, witness=Witness(off, n12, d, text))
    n1, n2, n12 = int(n1), int(n2), int(n12)
    p = n1 + n2 - n12
    # supports S1 = [1..n1], S2 = [1..n12] + [n1+1 .. n1+n2-n12]; factor j carries
    # coordinate i exactly when j is in S_i
    s1 = set(range(1, n1 + 1))
    s2 = set(range(1, n12 + 1)) | set(range(n1 + 1, p + 1))
    factors = tuple((int(j in s1), int(j in s2)) for j in range(1, p + 1))
    cert = verify_cp_decomposition(A, CpDecomposition(factors))
    if not cert.positive:
        raise AssertionError(f"binary construction failed to verify: {cert.witness}")
    return BcpCertificate(BINARY_CP, factors, p)


def construct_cp_dim2(A: SymmetricTensor) -> Certificate:
    """Three-term CP decomposition of a nonnegative strong symmetric 2-dim tensor.

    With diagonal values ``a1, a2`` and off-diagonal value ``a3``, the
    condition ``0 <= a3 <= min(a1, a2)`` gives
    ``A = (a1-a3) e1^m + (a2-a3) e2^m + a3 (1,1)^m``; terms of weight
    zero are dropped.  The condition is sufficient only, so failing it
    yields ``inconclusive``.
    """
    a1, a2, a3 = _require_strong_dim2(A)
    if not A.is_nonnegative():
        raise NotApplicable("tensor has negative entries")
    if a3 > min(a1, a2):
        return Certificate(
            INCONCLUSIVE,
            reason=f"off-diagonal value {fmt(a3)} exceeds min diagonal {fmt(min(a1, a2))}")
    terms = [((1, 0), a1 - a3), ((0, 1), a2 - a3), ((1, 1), a3)]
    D = CpDecomposition(weight_form=tuple((p, w) for p, w in terms if w))
    cert = verify_cp_decomposition(A, D)
    if not cert.positive:
        raise AssertionError(f"dim-2 construction failed to verify: {cert.witness}")
    return cert


def pairwise_necessary_check(A: SymmetricTensor) -> Certificate:
    """Check ``A(s)^2 <= A(i..i) * A(j..j)`` whenever ``s`` has base set ``{i, j}``.

    A violation proves the tensor is not CP.  ``passes`` is a necessary
    condition only.
    """
    if not is_strong_symmetric(A):
        raise NotApplicable("tensor is not strong symmetric")
    if not A.is_nonnegative():
        raise NotApplicable("tensor has negative entries")
    diag = A.diagonal_values()
    m = A.order
    for idx, v in A.items():
        b = sorted(set(idx))
        if len(b) != 2:
            continue
        i, j = b
        rhs = diag[i - 1] * diag[j - 1]
        if v * v > rhs:
            text = (f"A({fmt_index(idx)})^2 = {fmt(v * v)} > "
                    f"A({fmt_index((i,) * m)})*A({fmt_index((j,) * m)}) = {fmt(rhs)}")
            return Certificate(NEGATIVE, witness=Witness(idx, v * v, rhs, text))
    return Certificate(PASSES)


def dominance_necessary_check(A: SymmetricTensor) -> Certificate:
    """Check every entry is at most each diagonal entry on its base set.

    A violation proves the tensor is not {0,1}-CP.
    """
    if not A.is_integral():
        raise NotApplicable("tensor has entries that are not nonnegative integers")
    diag = A.diagonal_values()
    m = A.order
    for idx, v in A.items():
        for k in sorted(set(idx)):
            if v > diag[k - 1]:
                text = (f"A({fmt_index(idx)}) = {fmt(v)} > "
                        f"A({fmt_index((k,) * m)}) = {fmt(diag[k - 1])}")
                return Certificate(NEGATIVE, witness=Witness(idx, v, diag[k - 1], text))
    return Certificate(PASSES)
