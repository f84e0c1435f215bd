import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cptensor import (
    FactorMatrix,
    MultiHypergraph,
    SymmetricTensor,
    adjacency_tensor,
    associated_matrix,
    certify_binary_cp_01,
    certify_unique_maximal,
    gram_tensor,
    indicator_matrix,
    maximal_edges,
    property_R_check,
    rank_one_power,
    tensor_to_multihypergraph,
)
from cptensor.errors import DomainError, IndexOutOfRange
from cptensor.hypergraph import edges_with_k_distinct, maximal_base_sets, normal_edge_ratio

FOUR_VERTEX_EDGES = [
    (1, 3, 4), (1, 1, 3), (1, 3, 3), (1, 1, 4), (1, 4, 4),
    (3, 3, 4), (3, 4, 4), (1, 1, 1), (3, 3, 3), (4, 4, 4),
]
G31 = MultiHypergraph(4, 3, FOUR_VERTEX_EDGES)


@st.composite
def hypergraphs(draw, max_order=4, max_n=5):
    m = draw(st.integers(2, max_order))
    n = draw(st.integers(1, max_n))
    pool = list(itertools.combinations_with_replacement(range(1, n + 1), m))
    return MultiHypergraph(n, m, draw(st.sets(st.sampled_from(pool))))


def complete(n, m):
    return MultiHypergraph(n, m, itertools.combinations_with_replacement(range(1, n + 1), m))


def test_edges_are_canonical_and_deduplicated():
    G = MultiHypergraph(3, 3, [(3, 1, 1), (1, 3, 1), (2, 2, 2)])
    assert G.sorted_edges() == [(1, 1, 3), (2, 2, 2)]
    assert len(G) == 2
    with pytest.raises(IndexOutOfRange):
        MultiHypergraph(3, 3, [(1, 1, 4)])
    with pytest.raises(ValueError):
        MultiHypergraph(3, 3, [(1, 1)])


def test_adjacency_tensor_of_four_vertex_example():
    A = adjacency_tensor(G31)
    assert A == rank_one_power((1, 0, 1, 1), 3)
    assert A.domain == "binary"
    block = [[1, 0, 1, 1], [0, 0, 0, 0], [1, 0, 1, 1], [1, 0, 1, 1]]
    for k in (1, 3, 4):
        assert [[A[i, j, k] for j in range(1, 5)] for i in range(1, 5)] == block


def test_adjacency_trivial_cases():
    assert adjacency_tensor(MultiHypergraph(3, 2)) == SymmetricTensor.zeros(2, 3)
    assert adjacency_tensor(complete(3, 3)) == SymmetricTensor.ones(3, 3)


def test_inverse_map():
    assert tensor_to_multihypergraph(rank_one_power((1, 0, 1, 1), 3)) == G31
    assert len(tensor_to_multihypergraph(SymmetricTensor.zeros(3, 2))) == 0
    assert tensor_to_multihypergraph(SymmetricTensor.ones(2, 3)) == complete(3, 2)
    with pytest.raises(DomainError):
        tensor_to_multihypergraph(SymmetricTensor.diagonal(2, [2, 1]))


@settings(max_examples=150)
@given(hypergraphs())
def test_round_trips(G):
    A = adjacency_tensor(G)
    assert tensor_to_multihypergraph(A) == G
    assert adjacency_tensor(tensor_to_multihypergraph(A)) == A


# -- maximal edges and Property R ------------------------------------------------------------

def test_maximal_edge_examples():
    assert maximal_edges(G31) == [(1, 3, 4)]
    assert maximal_edges(MultiHypergraph(3, 3, [(1, 2, 2)])) == [(1, 2, 2)]
    assert maximal_edges(MultiHypergraph(3, 3, [(1, 1, 2), (1, 2, 3)])) == [(1, 2, 3)]


def test_maximal_edges_share_base_sets():
    G = MultiHypergraph(2, 3, [(1, 1, 2), (1, 2, 2), (1, 1, 1)])
    assert maximal_edges(G) == [(1, 1, 2), (1, 2, 2)]
    assert maximal_base_sets(G) == [(1, 2)]


def test_property_r_examples():
    assert property_R_check(G31).holds
    missing = MultiHypergraph(4, 3, [e for e in FOUR_VERTEX_EDGES if e != (3, 3, 4)])
    res = property_R_check(missing)
    assert not res.holds and res.edge == (1, 3, 4) and res.missing == (3, 3, 4)
    assert property_R_check(complete(3, 4)).holds
    assert property_R_check(MultiHypergraph(3, 3)).holds


def _property_r_brute(G):
    for e in G.edges:
        for s in itertools.combinations_with_replacement(range(1, G.n + 1), G.order):
            if set(s) <= set(e) and s not in G.edges:
                return False
    return True


@settings(max_examples=200)
@given(hypergraphs())
def test_property_r_matches_all_edge_check(G):
    assert property_R_check(G).holds == _property_r_brute(G)


def test_edges_with_k_distinct():
    assert edges_with_k_distinct(G31, 3) == [(1, 3, 4)]
    assert len(edges_with_k_distinct(G31, 2)) == 6
    assert edges_with_k_distinct(G31, 1) == [(1, 1, 1), (3, 3, 3), (4, 4, 4)]


# -- unique maximal edge certificate ---------------------------------------------------------

def test_unique_maximal_certificate():
    cert = certify_unique_maximal(G31)
    assert cert.positive
    assert cert.decomposition.factors == ((1, 0, 1, 1),)


def test_unique_maximal_not_applicable():
    two = MultiHypergraph(4, 2, [(1, 1), (1, 2), (2, 2), (3, 3), (3, 4), (4, 4)])
    cert = certify_unique_maximal(two)
    assert cert.outcome == "not_applicable" and "2 maximal base sets" in cert.reason
    missing = MultiHypergraph(4, 3, [e for e in FOUR_VERTEX_EDGES if e != (3, 3, 4)])
    cert = certify_unique_maximal(missing)
    assert cert.outcome == "not_applicable" and "3,3,4" in cert.reason
    assert certify_binary_cp_01(adjacency_tensor(two)).bcprank == 2


@settings(max_examples=200)
@given(hypergraphs())
def test_unique_maximal_agrees_with_block_certificate(G):
    cert = certify_unique_maximal(G)
    if cert.positive:
        res = certify_binary_cp_01(adjacency_tensor(G))
        assert res.positive and res.U == cert.decomposition.factors


@settings(max_examples=100)
@given(st.integers(2, 4), st.integers(1, 6), st.data())
def test_disjoint_maximal_edges_give_one_column_each(m, n, data):
    # random partition of a subset of vertices, completed to Property R
    labels = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    parts = {}
    for v, lab in enumerate(labels, start=1):
        if lab:
            parts.setdefault(lab, []).append(v)
    edges = [s for part in parts.values() for s in itertools.combinations_with_replacement(part, m)]
    G = MultiHypergraph(n, m, edges)
    assert property_R_check(G).holds
    res = certify_binary_cp_01(adjacency_tensor(G))
    assert res.positive and res.bcprank == len(parts)
    assert sorted(res.U) == sorted(tuple(int(v in p) for v in range(1, n + 1)) for p in parts.values())


# -- indicator matrix ---------------------------------------------------------------------

def test_indicator_columns():
    assert indicator_matrix(MultiHypergraph(4, 3, [(1, 3, 4)])).columns == ((1, 0, 1, 1),)
    assert indicator_matrix(MultiHypergraph(4, 3, [(1, 1, 3)])).columns == ((2, 0, 1, 0),)
    W = indicator_matrix(MultiHypergraph(4, 3))
    assert W.columns == () and W.rows == [[], [], [], []]


def test_associated_matrix_examples():
    M = associated_matrix(MultiHypergraph(4, 3, [(1, 3, 4)]))
    assert M == [[1, 0, 1, 1], [0, 0, 0, 0], [1, 0, 1, 1], [1, 0, 1, 1]]
    assert associated_matrix(MultiHypergraph(3, 2)) == [[0] * 3] * 3
    assert associated_matrix(G31) == [[20, 0, 5, 5], [0, 0, 0, 0], [5, 0, 20, 5], [5, 0, 5, 20]]


@settings(max_examples=150)
@given(hypergraphs())
def test_indicator_columns_and_matrix_bridge(G):
    W = indicator_matrix(G)
    assert all(sum(c) == G.order for c in W.columns)
    rebuilt = [tuple(i for i in range(1, G.n + 1) for _ in range(c[i - 1])) for c in W.columns]
    assert rebuilt == G.sorted_edges()
    M = associated_matrix(G)
    if W.columns:
        A = gram_tensor(FactorMatrix.from_rows(W.columns), 2)
        assert M == [[A[i, j] for j in range(1, G.n + 1)] for i in range(1, G.n + 1)]


def test_normal_edge_ratio():
    assert normal_edge_ratio(3, 3) == Fraction(1, 27)
    sixth = Fraction(1, 6)
    # within one percentage point from n = 200 on
    for n in (200, 500, 2000):
        assert abs(normal_edge_ratio(3, n) - sixth) < Fraction(1, 100)
    # relative error is (3n - 2) / n^2, below 1% only from n = 300 on
    assert abs(normal_edge_ratio(3, 200) - sixth) / sixth == Fraction(3 * 200 - 2, 200 ** 2)
    assert abs(normal_edge_ratio(3, 300) - sixth) / sixth < Fraction(1, 100)
    assert normal_edge_ratio(3, 1000) > normal_edge_ratio(3, 200)
