"""Plain-text file formats for tensors, factor matrices, hypergraphs and factor lists.

Tensor::

    order 3 dim 4 domain binary
    1,1,1 1
    1,1,3 1

Indices are sorted and listed in lexicographic order; omitted indices
are zero; values are integers or ``p/q``.  :func:`format_tensor` of
:func:`parse_tensor` reproduces a file written in this form byte for
byte.  Blank lines and lines starting with ``#`` are ignored on input.

Factor matrix: header ``dim d cols n`` then one column per line as
comma-separated rationals.  Hypergraph: header ``order m vertices n``
then one edge per line as comma-separated sorted vertices.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .certificate import fmt
from .errors import FormatError
from .gramian import CpDecomposition, FactorMatrix
from .hypergraph import MultiHypergraph
from .tensor import DOMAINS, SymmetricTensor

_VALUE = re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_value(token: str, line: int, column: int) -> Fraction:
    if not _VALUE.match(token):
        raise FormatError(f"bad value {token!r}", line, column)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {token!r}", line, column) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, raw


def _header(lines, keywords: tuple[str, ...], what: str):
    try:
        lineno, raw = next(lines)
    except StopIteration:
        raise FormatError(f"empty {what} file", 1) from None
    parts = raw.split()
    if len(parts) != 2 * len(keywords) or tuple(parts[0::2]) != keywords:
        expect = " ".join(f"{k} <{k}>" for k in keywords)
        raise FormatError(f"expected header '{expect}'", lineno)
    return lineno, parts[1::2]


def _int_field(token: str, name: str, lineno: int, column: int, minimum: int) -> int:
    if not token.isdigit() or int(token) < minimum:
        raise FormatError(f"{name} must be an integer >= {minimum}, got {token!r}", lineno, column)
    return int(token)


def _column_of(raw: str, token_index: int) -> int:
    pos = 0
    for k, tok in enumerate(raw.split()):
        pos = raw.index(tok, pos)
        if k == token_index:
            return pos + 1
        pos += len(tok)
    return len(raw) + 1


def _index_tuple(token: str, lineno: int, column: int, order: int, dim: int):
    parts = token.split(",")
    if len(parts) != order:
        raise FormatError(f"expected {order} indices, got {len(parts)}", lineno, column)
    idx = []
    offset = column
    for p in parts:
        if not p.isdigit():
            raise FormatError(f"bad index {p!r}", lineno, offset)
        i = int(p)
        if not 1 <= i <= dim:
            raise FormatError(f"index {i} outside [1..{dim}]", lineno, offset)
        idx.append(i)
        offset += len(p) + 1
    if idx != sorted(idx):
        raise FormatError(f"indices {token} are not sorted", lineno, column)
    return tuple(idx)


def parse_tensor(text: str) -> SymmetricTensor:
    lines = _content_lines(text)
    hline, (order_s, dim_s, domain) = _header(lines, ("order", "dim", "domain"), "tensor")
    order = _int_field(order_s, "order", hline, _column_of_header(text, hline, 1), 2)
    dim = _int_field(dim_s, "dim", hline, _column_of_header(text, hline, 3), 0)
    if domain not in DOMAINS:
        raise FormatError(f"unknown domain {domain!r}", hline, _column_of_header(text, hline, 5))
    entries = {}
    for lineno, raw in lines:
        parts = raw.split()
        if len(parts) != 2:
            raise FormatError("expected '<i1,...,im> <value>'", lineno, 1)
        idx = _index_tuple(parts[0], lineno, _column_of(raw, 0), order, dim)
        if idx in entries:
            raise FormatError(f"index {parts[0]} given twice", lineno, _column_of(raw, 0))
        value = parse_value(parts[1], lineno, _column_of(raw, 1))
        if domain == "binary" and value not in (0, 1):
            raise FormatError(f"value {parts[1]} outside binary domain", lineno, _column_of(raw, 1))
        if domain == "integer" and (value.denominator != 1 or value < 0):
            raise FormatError(f"value {parts[1]} outside integer domain", lineno, _column_of(raw, 1))
        entries[idx] = value
    return SymmetricTensor.from_entries(order, dim, entries, domain)


def _column_of_header(text: str, lineno: int, token_index: int) -> int:
    return _column_of(text.splitlines()[lineno - 1], token_index)


def format_tensor(A: SymmetricTensor) -> str:
    out = [f"order {A.order} dim {A.dim} domain {A.domain}"]
    for idx, v in sorted(A.items()):
        if v:
            out.append(f"{','.join(map(str, idx))} {fmt(v)}")
    return "\n".join(out) + "\n"


def parse_factor_matrix(text: str) -> FactorMatrix:
    lines = _content_lines(text)
    hline, (d_s, n_s) = _header(lines, ("dim", "cols"), "factor matrix")
    d = _int_field(d_s, "dim", hline, _column_of_header(text, hline, 1), 0)
    n = _int_field(n_s, "cols", hline, _column_of_header(text, hline, 3), 1)
    cols = []
    for lineno, raw in lines:
        cols.append(_rational_row(raw, lineno, d))
    if len(cols) != n:
        raise FormatError(f"header announces {n} columns, found {len(cols)}", hline)
    return FactorMatrix(tuple(cols))


def _rational_row(raw: str, lineno: int, length: int | None) -> tuple[Fraction, ...]:
    stripped = raw.strip()
    start = raw.index(stripped) + 1 if stripped else 1
    tokens = stripped.split(",") if stripped else []
    if length is not None and len(tokens) != length:
        raise FormatError(f"expected {length} comma-separated values, got {len(tokens)}", lineno, start)
    row, col = [], start
    for tok in tokens:
        row.append(parse_value(tok.strip(), lineno, col))
        col += len(tok) + 1
    return tuple(row)


def format_factor_matrix(B: FactorMatrix) -> str:
    out = [f"dim {B.d} cols {B.n}"]
    out += [",".join(fmt(x) for x in c) for c in B.columns]
    return "\n".join(out) + "\n"


def parse_hypergraph(text: str) -> MultiHypergraph:
    lines = _content_lines(text)
    hline, (m_s, n_s) = _header(lines, ("order", "vertices"), "hypergraph")
    m = _int_field(m_s, "order", hline, _column_of_header(text, hline, 1), 2)
    n = _int_field(n_s, "vertices", hline, _column_of_header(text, hline, 3), 1)
    edges = []
    for lineno, raw in lines:
        stripped = raw.strip()
        edges.append(_index_tuple(stripped, lineno, raw.index(stripped) + 1, m, n))
    return MultiHypergraph(n, m, edges)


def format_hypergraph(G: MultiHypergraph) -> str:
    out = [f"order {G.order} vertices {G.n}"]
    out += [",".join(map(str, e)) for e in G.sorted_edges()]
    return "\n".join(out) + "\n"


def format_factor(beta) -> str:
    return ",".join(fmt(x) for x in beta)


def format_weighted(pattern, weight) -> str:
    """``w*u`` stands for the term ``w * u^m``."""
    return f"{fmt(weight)}*{','.join(map(str, pattern))}"


def parse_factors(text: str) -> CpDecomposition:
    """Read factor lines; lines not starting with a digit are ignored.

    ``v1,...,vn`` is an explicit factor and ``w*u1,...,un`` a weighted
    (0,1) pattern.  Certificate reports can therefore be fed back
    directly, since only their factor lines start with a digit.
    """
    factors, weighted = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or not (stripped[0].isdigit() or stripped[0] == "-"):
            continue
        if "*" in stripped:
            w_tok, _, pat = stripped.partition("*")
            w = parse_value(w_tok.strip(), lineno, 1)
            pattern = _rational_row(pat, lineno, None)
            if any(x not in (0, 1) for x in pattern):
                raise FormatError("weighted pattern must be a (0,1) vector", lineno, len(w_tok) + 2)
            weighted.append((tuple(int(x) for x in pattern), w))
        else:
            factors.append(_rational_row(raw, lineno, None))
    lengths = {len(f) for f in factors} | {len(p) for p, _ in weighted}
    if len(lengths) > 1:
        raise FormatError(f"factors have mixed lengths {sorted(lengths)}", 1)
    return CpDecomposition(tuple(factors), tuple(weighted))
