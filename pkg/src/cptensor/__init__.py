"""Completely positive and {0,1}-CP symmetric tensors with exact certificates."""

from .binary import (
    BinaryCpResult,
    BlockDecomposition,
    OracleResult,
    UniformReport,
    certify_binary_cp_01,
    diagonal_bcprank,
    irreducible_components,
    is_reducible,
    oracle_binary_cp_search,
    uniform_bounds_check,
)
from .certificate import Certificate, Witness
from .dim2 import (
    BcpCertificate,
    Dim2Profile,
    certify_binary_cp_dim2,
    construct_cp_dim2,
    dominance_necessary_check,
    pairwise_necessary_check,
    profile_dim2,
)
from .gramian import (
    CpDecomposition,
    Enclosure,
    FactorMatrix,
    gram_tensor,
    hadamard,
    holder_check,
    m_inner_product,
    m_norm,
    verify_cp_decomposition,
)
from .hypergraph import (
    IndicatorMatrix,
    MultiHypergraph,
    adjacency_tensor,
    associated_matrix,
    certify_unique_maximal,
    indicator_matrix,
    maximal_edges,
    property_R_check,
    tensor_to_multihypergraph,
)
from .tensor import (
    MultiIndex,
    Permutation,
    SymmetricTensor,
    canonicalize,
    direct_sum,
    evaluate,
    is_strong_symmetric,
    khatri_rao_power,
    permute,
    rank_one_power,
    sum_rank_one,
)

__version__ = "0.1.0"
