from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cptensor import FactorMatrix, MultiHypergraph, SymmetricTensor
from cptensor.errors import FormatError, NegativeFactor
from cptensor.formats import (
    format_factor_matrix,
    format_hypergraph,
    format_tensor,
    format_weighted,
    parse_factor_matrix,
    parse_factors,
    parse_hypergraph,
    parse_tensor,
)
from cptensor.tensor import storage_size

TENSOR_TEXT = """order 2 dim 2 domain integer
1,1 1
1,2 2
2,2 5
"""


def test_parse_tensor():
    A = parse_tensor(TENSOR_TEXT)
    assert (A.order, A.dim, A.domain) == (2, 2, "integer")
    assert A[2, 1] == 2 and A[2, 2] == 5


def test_tensor_round_trip_is_byte_exact():
    assert format_tensor(parse_tensor(TENSOR_TEXT)) == TENSOR_TEXT
    text = "order 3 dim 3 domain rational\n1,1,1 -1/2\n1,2,3 7\n3,3,3 4/3\n"
    assert format_tensor(parse_tensor(text)) == text


def test_comments_and_blank_lines_are_ignored():
    text = "# a tensor\n\norder 2 dim 1 domain binary\n\n# entry\n1,1 1\n"
    assert parse_tensor(text) == SymmetricTensor.ones(2, 1)


def test_zero_and_empty_tensors():
    A = parse_tensor("order 3 dim 3 domain binary\n")
    assert A.is_zero() and A.dim == 3
    assert format_tensor(A) == "order 3 dim 3 domain binary\n"
    assert parse_tensor("order 2 dim 0 domain binary\n").dim == 0


@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_round_trip_random(m, n, data):
    vals = data.draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5),
                              min_size=storage_size(m, n), max_size=storage_size(m, n)))
    A = SymmetricTensor(m, n, vals)
    B = parse_tensor(format_tensor(A))
    assert B == A and B.domain == A.domain
    assert format_tensor(B) == format_tensor(A)


@pytest.mark.parametrize("text, line, column", [
    ("", 1, 1),
    ("order 2 dim 2\n", 1, 1),
    ("order x dim 2 domain binary\n", 1, 7),
    ("order 1 dim 2 domain binary\n", 1, 7),
    ("order 2 dim 2 domain real\n", 1, 22),
    ("order 2 dim 2 domain binary\n1,1\n", 2, 1),
    ("order 2 dim 2 domain binary\n1,1,1 1\n", 2, 1),
    ("order 2 dim 2 domain binary\n1,3 1\n", 2, 3),
    ("order 2 dim 2 domain binary\n2,1 1\n", 2, 1),
    ("order 2 dim 2 domain binary\n1,a 1\n", 2, 3),
    ("order 2 dim 2 domain binary\n1,2 1\n  1,2 1\n", 3, 3),
    ("order 2 dim 2 domain binary\n1,2 2\n", 2, 5),
    ("order 2 dim 2 domain integer\n1,2 1/2\n", 2, 5),
    ("order 2 dim 2 domain integer\n1,2 -1\n", 2, 5),
    ("order 2 dim 2 domain rational\n1,2 0.5\n", 2, 5),
    ("order 2 dim 2 domain rational\n1,2 1/0\n", 2, 5),
])
def test_malformed_tensor_files(text, line, column):
    with pytest.raises(FormatError) as err:
        parse_tensor(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert str(err.value).startswith(f"line {line}, column {column}: ")


def test_factor_matrix_round_trip():
    text = "dim 2 cols 3\n1,0\n2,1\n1/2,3\n"
    B = parse_factor_matrix(text)
    assert B.columns == ((1, 0), (2, 1), (Fraction(1, 2), 3))
    assert format_factor_matrix(B) == text
    assert format_factor_matrix(FactorMatrix.from_rows([(1, 2), (0, 1)])) == "dim 2 cols 2\n1,0\n2,1\n"


@pytest.mark.parametrize("text, line, column", [
    ("dim 2 cols 2\n1,0\n", 1, 1),
    ("dim 2 cols 1\n1,0,3\n", 2, 1),
    ("dim 2 cols 1\n1,x\n", 2, 3),
    ("dim 2 cols 0\n", 1, 12),
])
def test_malformed_factor_matrix(text, line, column):
    with pytest.raises(FormatError) as err:
        parse_factor_matrix(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_hypergraph_round_trip():
    text = "order 3 vertices 4\n1,1,3\n1,3,4\n4,4,4\n"
    G = parse_hypergraph(text)
    assert G == MultiHypergraph(4, 3, [(1, 3, 4), (4, 4, 4), (1, 1, 3)])
    assert format_hypergraph(G) == text


def test_malformed_hypergraph():
    with pytest.raises(FormatError) as err:
        parse_hypergraph("order 3 vertices 4\n1,1,5\n")
    assert (err.value.line, err.value.column) == (2, 5)
    with pytest.raises(FormatError):
        parse_hypergraph("order 3 vertices 0\n")


def test_parse_factors_reads_report_lines():
    text = "COMMAND certify-dim2\nOUTCOME cp\nFACTORS 2\n1,0\n1/2,3\n"
    D = parse_factors(text)
    assert D.factors == ((1, 0), (Fraction(1, 2), 3))
    W = parse_factors("FACTORS 2\n" + format_weighted((1, 0), 2) + "\n1/3*1,1\n")
    assert W.weight_form == (((1, 0), 2), ((1, 1), Fraction(1, 3)))


def test_parse_factors_errors():
    with pytest.raises(NegativeFactor):
        parse_factors("-1,2\n")
    with pytest.raises(FormatError):
        parse_factors("1,2\n1,2,3\n")
    with pytest.raises(FormatError):
        parse_factors("2*1,2\n")
