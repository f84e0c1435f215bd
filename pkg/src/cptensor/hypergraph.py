"""Multi-hypergraphs whose edges are m-multisets of ``1..n``.

The adjacency tensor of such a graph is the (0,1) symmetric tensor
with a one at every edge, and every (0,1) symmetric tensor arises this
way.  Property R (downward closure of edges under inclusion of base
sets) plus a single maximal base set makes the adjacency tensor a
single rank-one power.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .certificate import NOT_APPLICABLE, POSITIVE, Certificate, fmt_index
from .errors import DomainError
from .gramian import CpDecomposition, verify_cp_decomposition
from .tensor import ONE, SymmetricTensor, canonicalize, colex_rank, storage_size


@dataclass(frozen=True)
class MultiHypergraph:
    n: int
    order: int
    edges: frozenset[tuple[int, ...]]

    def __init__(self, n: int, order: int, edges: Iterable[Iterable[int]] = ()):
        if order < 2:
            raise ValueError("edge order must be at least 2")
        canon = set()
        for e in edges:
            e = tuple(e)
            if len(e) != order:
                raise ValueError(f"edge {e} does not have {order} vertices")
            canon.add(canonicalize(e, n).entries)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "edges", frozenset(canon))

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def __len__(self):
        return len(self.edges)


def adjacency_tensor(G: MultiHypergraph) -> SymmetricTensor:
    vals = [Fraction(0)] * storage_size(G.order, G.n)
    for e in G.edges:
        vals[colex_rank(e)] = ONE
    return SymmetricTensor(G.order, G.n, vals, "binary")


def tensor_to_multihypergraph(A: SymmetricTensor) -> MultiHypergraph:
    if not A.is_binary():
        raise DomainError("only (0,1) tensors are adjacency tensors")
    return MultiHypergraph(A.dim, A.order, (idx for idx, v in A.items() if v))


def maximal_edges(G: MultiHypergraph) -> list[tuple[int, ...]]:
    """Edges whose base set is not strictly inside another edge's base set."""
    bases = {frozenset(e) for e in G.edges}
    return [e for e in G.sorted_edges()
            if not any(frozenset(e) < b for b in bases)]


def maximal_base_sets(G: MultiHypergraph) -> list[tuple[int, ...]]:
    return sorted({tuple(sorted(set(e))) for e in maximal_edges(G)})


def edges_with_k_distinct(G: MultiHypergraph, k: int) -> list[tuple[int, ...]]:
    """Edges having exactly ``k`` distinct vertices."""
    return [e for e in G.sorted_edges() if len(set(e)) == k]


@dataclass(frozen=True)
class PropertyR:
    holds: bool
    edge: tuple[int, ...] | None = None
    missing: tuple[int, ...] | None = None


def property_R_check(G: MultiHypergraph) -> PropertyR:
    """Every multiset supported inside an edge's base set must be an edge.

    Only maximal edges need checking.  The reported violation is the
    first missing multiset of the first offending maximal edge.
    """
    for e in maximal_edges(G):
        for sigma in itertools.combinations_with_replacement(sorted(set(e)), G.order):
            if sigma not in G.edges:
                return PropertyR(False, e, sigma)
    return PropertyR(True)


def certify_unique_maximal(G: MultiHypergraph) -> Certificate:
    """Rank-one {0,1}-CP certificate when Property R holds and one base set is maximal.

    Uniqueness is judged on base sets: for m >= 3 several edges share
    a maximal base set of size below m.
    """
    prop = property_R_check(G)
    if not prop.holds:
        return Certificate(
            NOT_APPLICABLE,
            reason=f"property R fails: edge {fmt_index(prop.edge)} lacks {fmt_index(prop.missing)}")
    bases = maximal_base_sets(G)
    if len(bases) != 1:
        return Certificate(NOT_APPLICABLE, reason=f"{len(bases)} maximal base sets, need exactly 1")
    alpha = tuple(int(i in bases[0]) for i in range(1, G.n + 1))
    cert = verify_cp_decomposition(adjacency_tensor(G), CpDecomposition((alpha,)))
    if not cert.positive:
        raise AssertionError(f"unique maximal edge certificate failed: {cert.witness}")
    return Certificate(POSITIVE, cert.decomposition)


@dataclass(frozen=True)
class IndicatorMatrix:
    """n x N matrix whose column j counts vertex frequencies in edge j."""

    n: int
    columns: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.n)]


def indicator_matrix(G: MultiHypergraph) -> IndicatorMatrix:
    cols = tuple(tuple(e.count(i) for i in range(1, G.n + 1)) for e in G.sorted_edges())
    return IndicatorMatrix(G.n, cols)


def associated_matrix(G: MultiHypergraph) -> list[list[int]]:
    """``W W^T`` for the indicator matrix ``W``."""
    W = indicator_matrix(G).rows
    return [[sum(a * b for a, b in zip(W[i], W[j])) for j in range(G.n)] for i in range(G.n)]


def normal_edge_ratio(m: int, n: int) -> Fraction:
    """``C(n, m) / n^m``: share of m-multisets over n vertices with distinct entries."""
    return Fraction(math.comb(n, m), n ** m)
