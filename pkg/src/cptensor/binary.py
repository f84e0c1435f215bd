"""Structure of (0,1) symmetric tensors and an exhaustive {0,1}-CP oracle.

A (0,1) symmetric tensor splits, after relabelling the vertices, into a
direct sum of irreducible blocks and a zero block.  It is {0,1}-CP
exactly when every nonzero block is all ones, in which case the block
indicator vectors are the factors and have pairwise disjoint supports.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    BadSubset,
    DomainError,
    InvalidDecomposition,
    NotDiagonal,
    SearchSpaceTooLarge,
)
from .gramian import CpDecomposition, verify_cp_decomposition
from .tensor import (
    Permutation,
    SymmetricTensor,
    colex_rank,
    direct_sum,
    khatri_rao_power,
)

BINARY_CP = "binary_cp"
NOT_BINARY_CP = "not_binary_cp"

DEFAULT_NODE_CAP = 2_000_000


def _check_subset(A: SymmetricTensor, I: Iterable[int]) -> frozenset[int]:
    I = frozenset(I)
    if not I or len(I) >= A.dim or not I <= set(range(1, A.dim + 1)):
        raise BadSubset(f"{sorted(I)} is not a proper nonempty subset of [1..{A.dim}]")
    return I


def is_reducible(A: SymmetricTensor, I: Iterable[int], mixed: bool = False) -> bool:
    """Whether ``A`` vanishes on ``i1 in I, i2..im not in I``.

    With ``mixed=True`` the stronger test is used: every entry whose
    base set meets both ``I`` and its complement is zero.  Only the
    stronger test makes ``A`` a direct sum along ``I``; the two agree
    for matrices but not for m >= 3.
    """
    I = _check_subset(A, I)
    for idx, v in A.items():
        if not v:
            continue
        inside = sum(1 for i in idx if i in I)
        if mixed:
            if 0 < inside < len(idx):
                return False
        elif inside == 1:
            return False
    return True


@dataclass(frozen=True)
class BlockDecomposition:
    """``permute(A, perm) == direct_sum(*blocks, zeros(zero_dim))``.

    ``vertex_sets[k]`` lists the original vertices of ``blocks[k]`` in
    the order they occupy inside the block.
    """

    perm: Permutation
    blocks: tuple[SymmetricTensor, ...]
    vertex_sets: tuple[tuple[int, ...], ...]
    zero_dim: int
    zero_vertices: tuple[int, ...] = ()

    def reassemble(self, order: int) -> SymmetricTensor:
        return direct_sum(*self.blocks, SymmetricTensor.zeros(order, self.zero_dim))


def support_graph(A: SymmetricTensor) -> nx.Graph:
    """Vertices ``1..n``; ``i ~ j`` when some nonzero entry has both in its base set."""
    g = nx.Graph()
    g.add_nodes_from(range(1, A.dim + 1))
    for idx, v in A.items():
        if v:
            b = sorted(set(idx))
            g.add_edges_from(zip(b, b[1:]))
    return g


def irreducible_components(A: SymmetricTensor) -> BlockDecomposition:
    """Split ``A`` into blocks on the connected components of its support graph.

    Blocks are ordered by their smallest original vertex; vertices that
    touch no nonzero entry form the trailing zero block.
    """
    g = support_graph(A)
    diag = A.diagonal_values()
    comps, zeros = [], []
    for comp in nx.connected_components(g):
        comp = sorted(comp)
        if len(comp) == 1 and not diag[comp[0] - 1]:
            zeros.append(comp[0])
        else:
            comps.append(tuple(comp))
    comps.sort()
    zeros.sort()
    order = [v for c in comps for v in c] + zeros
    images = [0] * A.dim
    for pos, v in enumerate(order, start=1):
        images[v - 1] = pos
    return BlockDecomposition(
        Permutation(tuple(images)),
        tuple(A.principal(c) for c in comps),
        tuple(comps),
        len(zeros),
        tuple(zeros),
    )


@dataclass(frozen=True)
class BinaryCpResult:
    """Outcome of the all-ones-block test.

    On success ``U`` holds the q indicator columns (as tuples of length
    n) and ``block_sizes`` their support sizes, so that ``U^T U`` is
    ``diag(block_sizes)``.  On failure ``witness_block`` is the first
    block that is not all ones and ``witness_index`` a zero entry in it,
    in original vertex labels.
    """

    outcome: str
    U: tuple[tuple[int, ...], ...] | None = None
    block_sizes: tuple[int, ...] | None = None
    witness_block: tuple[int, ...] | None = None
    witness_index: tuple[int, ...] | None = None

    @property
    def positive(self) -> bool:
        return self.outcome == BINARY_CP

    @property
    def bcprank(self) -> int | None:
        return len(self.U) if self.U is not None else None

    def gram(self) -> list[list[int]]:
        """``U^T U``."""
        return [[sum(a * b for a, b in zip(u, v)) for v in self.U] for u in self.U]


def certify_binary_cp_01(A: SymmetricTensor) -> BinaryCpResult:
    if not A.is_binary():
        raise DomainError("certify_binary_cp_01 needs a (0,1) tensor")
    blocks = irreducible_components(A)
    columns = []
    for verts, block in zip(blocks.vertex_sets, blocks.blocks):
        for idx, v in block.items():
            if not v:
                original = tuple(sorted(verts[i - 1] for i in idx))
                return BinaryCpResult(NOT_BINARY_CP, witness_block=verts, witness_index=original)
        columns.append(tuple(int(i in verts) for i in range(1, A.dim + 1)))
    U = tuple(columns)
    result = BinaryCpResult(BINARY_CP, U, tuple(len(v) for v in blocks.vertex_sets))
    rows = [[u[i] for u in U] for i in range(A.dim)]
    if U and khatri_rao_power(rows, A.order) != A:
        raise AssertionError("indicator columns do not reproduce the tensor")
    return result


def diagonal_bcprank(D: SymmetricTensor) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Binary cprank ``d_1 + ... + d_n`` of a nonnegative integral diagonal tensor."""
    if not D.is_integral():
        raise DomainError("diagonal_bcprank needs nonnegative integer entries")
    if not D.is_diagonal():
        raise NotDiagonal("tensor has a nonzero off-diagonal entry")
    n = D.dim
    factors = []
    for i, d in enumerate(D.diagonal_values()):
        e = tuple(int(k == i) for k in range(n))
        factors.extend([e] * int(d))
    factors = tuple(factors)
    if not verify_cp_decomposition(D, CpDecomposition(factors)).positive:
        raise AssertionError("diagonal decomposition failed to verify")
    return len(factors), factors


# -- uniform decompositions ------------------------------------------------------------

@dataclass(frozen=True)
class UniformReport:
    """Facts about a verified decomposition whose factors share a support size.

    ``essential_01`` means every off-diagonal entry is 0 or 1 (diagonal
    unconstrained).  ``n_equals_m_r`` is ``None`` unless the supports
    are pairwise disjoint and of size m.  ``size_bound`` is
    ``ceil(n / (k - 1))`` for support size k > 1, informational only.
    """

    support_size: int | None
    num_factors: int
    is_01: bool
    essential_01: bool
    pairwise_disjoint: bool
    intersections_at_most_one: bool
    n_equals_m_r: bool | None
    overlap_witness: tuple | None
    size_bound: int | None


def uniform_bounds_check(A: SymmetricTensor, decomposition: Sequence[Sequence[int]]) -> UniformReport:
    factors = tuple(tuple(int(x) for x in f) for f in decomposition)
    if any(x not in (0, 1) for f in factors for x in f):
        raise InvalidDecomposition("factors must be (0,1) vectors")
    if not verify_cp_decomposition(A, CpDecomposition(factors)).positive:
        raise InvalidDecomposition("decomposition does not reproduce the tensor")
    supports = [frozenset(i for i, x in enumerate(f, start=1) if x) for f in factors]
    sizes = {len(s) for s in supports}
    if len(sizes) > 1:
        raise InvalidDecomposition(f"factor supports have different sizes {sorted(sizes)}")
    k = sizes.pop() if sizes else None
    m, n = A.order, A.dim

    disjoint, at_most_one, witness = True, True, None
    for (p, sp), (q, sq) in itertools.combinations(enumerate(supports, start=1), 2):
        common = sorted(sp & sq)
        if common:
            disjoint = False
        if len(common) >= 2:
            at_most_one = False
            if witness is None:
                s, t = common[:2]
                sigma = (s,) + (t,) * (m - 1)
                witness = (p, q, sigma, A[sigma])
    essential = all(v in (0, 1) for idx, v in A.items() if idx[0] != idx[-1])
    return UniformReport(
        support_size=k,
        num_factors=len(factors),
        is_01=A.is_binary(),
        essential_01=essential,
        pairwise_disjoint=disjoint,
        intersections_at_most_one=at_most_one,
        n_equals_m_r=(n == m * len(factors)) if disjoint and k == m else None,
        overlap_witness=witness,
        size_bound=math.ceil(n / (k - 1)) if k and k > 1 else None,
    )


# -- exhaustive oracle -------------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    """``found`` with the lexicographically first decomposition of minimal
    size ``K``, or exhausted with no decomposition of size ``<= k_max``."""

    found: bool
    K: int | None
    factors: tuple[tuple[int, ...], ...] | None
    k_max: int
    nodes: int


def oracle_binary_cp_search(A: SymmetricTensor, k_max: int,
                            node_cap: int = DEFAULT_NODE_CAP) -> OracleResult:
    """Search multisets of nonzero (0,1) vectors for a {0,1}-CP decomposition.

    Sizes ``K = 0, 1, ..., k_max`` are tried in turn.  A vector may be
    added only while every entry it touches keeps a positive residual,
    and a branch is cut when some diagonal residual exceeds the number
    of factors still to place.
    """
    if not A.is_integral():
        raise DomainError("oracle needs nonnegative integer entries")
    m, n = A.order, A.dim
    target = [int(v) for v in A.values]
    cands = [v for v in itertools.product((0, 1), repeat=n) if any(v)]
    touched = []
    for v in cands:
        supp = [i for i in range(1, n + 1) if v[i - 1]]
        touched.append([colex_rank(idx) for idx in itertools.combinations_with_replacement(supp, m)])
    diag_pos = [colex_rank((i,) * m) for i in range(1, n + 1)]

    nodes = 0
    residual = list(target)
    chosen: list[int] = []

    def dfs(start: int, left: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SearchSpaceTooLarge(nodes, node_cap)
        if left == 0:
            return not any(residual)
        if max((residual[p] for p in diag_pos), default=0) > left:
            return False
        for c in range(start, len(cands)):
            pos = touched[c]
            if all(residual[p] >= 1 for p in pos):
                for p in pos:
                    residual[p] -= 1
                chosen.append(c)
                if dfs(c, left - 1):
                    return True
                chosen.pop()
                for p in pos:
                    residual[p] += 1
        return False

    for K in range(k_max + 1):
        if dfs(0, K):
            return OracleResult(True, K, tuple(cands[c] for c in chosen), k_max, nodes)
    return OracleResult(False, None, None, k_max, nodes)


def minimal_bcprank(A: SymmetricTensor, node_cap: int = DEFAULT_NODE_CAP) -> int | None:
    """Exact binary cprank via the oracle, bounded by the diagonal trace."""
    res = oracle_binary_cp_search(A, int(sum(A.diagonal_values(), Fraction(0))), node_cap)
    return res.K
