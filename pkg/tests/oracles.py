"""Independent reference computations used by the tests.

Expected values are built on all n^m raw subscripts with plain
dictionaries and direct products, never through canonical storage,
multinomial weights or the package's own constructors.
"""
import itertools
import math
from fractions import Fraction


def raw_power_sum(factors, m, n):
    """Raw entries of sum_j beta_j^m, by direct products."""
    out = {}
    for t in itertools.product(range(1, n + 1), repeat=m):
        out[t] = sum((math.prod((Fraction(b[i - 1]) for i in t), start=Fraction(1))
                      for b in factors), Fraction(0))
    return out


def raw_entries(A):
    return {t: A[t] for t in itertools.product(range(1, A.dim + 1), repeat=A.order)}


def raw_form(raw, x):
    """sum over all raw subscripts of A(t) x_t1 ... x_tm."""
    total = Fraction(0)
    for t, v in raw.items():
        if v:
            total += v * math.prod((Fraction(x[i - 1]) for i in t), start=Fraction(1))
    return total


def naive_binary_cprank(A, k_max):
    """Smallest K such that some multiset of K nonzero (0,1) vectors reproduces A.

    Unpruned: every multiset is expanded in raw coordinates.
    """
    m, n = A.order, A.dim
    target = raw_entries(A)
    cands = [v for v in itertools.product((0, 1), repeat=n) if any(v)]
    for K in range(k_max + 1):
        for combo in itertools.combinations_with_replacement(cands, K):
            if raw_power_sum(combo, m, n) == target:
                return K
    return None

