"""Command-line front end: read tensor, factor-matrix and hypergraph files, print certificates.

Exit codes: 0 positive certificate or computation done, 1 negative
certificate, 2 certifier not applicable, 64 usage error, 65 malformed
input file.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Sequence

from . import binary, dim2, formats, hypergraph
from .certificate import NEGATIVE, fmt, fmt_index
from .errors import CpTensorError, FormatError, NotApplicable, SearchSpaceTooLarge
from .gramian import gram_tensor, verify_cp_decomposition
from .tensor import as_fraction, evaluate

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_NOT_APPLICABLE = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    """Ordered key/value report; multi-line values become counted blocks."""

    def __init__(self, command: str, data: bytes):
        self.fields: list[tuple[str, object]] = [
            ("COMMAND", command),
            ("INPUT", "sha256:" + hashlib.sha256(data).hexdigest()),
        ]

    def add(self, key: str, value) -> None:
        self.fields.append((key, value))

    def text(self) -> str:
        lines = []
        for key, value in self.fields:
            if isinstance(value, list):
                lines.append(f"{key} {len(value)}")
                lines.extend(value)
            else:
                lines.append(f"{key} {value}")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        obj = {k.lower().replace("-", "_"): v for k, v in self.fields}
        return json.dumps(obj, indent=2) + "\n"


class Raw(Report):
    """Report whose text form is a bare file body (tensor output)."""

    def __init__(self, command: str, data: bytes, body: str):
        super().__init__(command, data)
        self.add("OUTCOME", "done")
        self.add("TENSOR", body)
        self.body = body

    def text(self) -> str:
        return self.body


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError("input is not UTF-8", 1, exc.start + 1) from None


# -- subcommands -------------------------------------------------------------------

def cmd_gram(args):
    data = _read(args.file)
    B = formats.parse_factor_matrix(_decode(data))
    A = gram_tensor(B, args.order)
    return EXIT_POSITIVE, Raw(f"gram --order {args.order}", data, formats.format_tensor(A))


def cmd_adjacency(args):
    data = _read(args.file)
    G = formats.parse_hypergraph(_decode(data))
    A = hypergraph.adjacency_tensor(G)
    return EXIT_POSITIVE, Raw("adjacency", data, formats.format_tensor(A))


def cmd_certify_dim2(args):
    data = _read(args.file)
    A = formats.parse_tensor(_decode(data))
    rep = Report("certify-dim2", data)
    if A.dim != 2:
        rep.add("OUTCOME", "not_applicable")
        rep.add("REASON", f"dimension is {A.dim}, not 2")
        return EXIT_NOT_APPLICABLE, rep

    prof = dim2.profile_dim2(A)
    body: list[tuple[str, object]] = [
        ("PROFILE", ",".join(fmt(a) for a in prof.a)),
        ("STRONG-SYMMETRIC", "yes" if prof.strong_symmetric else "no"),
    ]
    if not prof.strong_symmetric:
        rep.add("OUTCOME", "not_applicable")
        rep.add("REASON", "tensor is not strong symmetric")
        for kv in body:
            rep.add(*kv)
        return EXIT_NOT_APPLICABLE, rep
    if not A.is_nonnegative():
        rep.add("OUTCOME", "not_applicable")
        rep.add("REASON", "tensor has negative entries")
        for kv in body:
            rep.add(*kv)
        return EXIT_NOT_APPLICABLE, rep

    factors = None
    bcp = None
    if A.is_integral():
        bcp = dim2.certify_binary_cp_dim2(A)
        body.append(("BINARY", bcp.outcome))
        if bcp.positive:
            body.append(("BCPRANK", str(bcp.bcprank)))
            factors = [formats.format_factor(f) for f in bcp.decomposition]
        else:
            body.append(("WITNESS", bcp.witness.text))
    else:
        body.append(("BINARY", "not_applicable: entries are not nonnegative integers"))

    cp = dim2.construct_cp_dim2(A)
    body.append(("CP", cp.outcome))
    if cp.positive:
        body.append(("CP-TERMS", str(len(cp.decomposition))))
        if factors is None:
            factors = [formats.format_weighted(p, w) for p, w in cp.decomposition.weight_form]

    pair = dim2.pairwise_necessary_check(A)
    body.append(("PAIRWISE", pair.outcome if pair.outcome != NEGATIVE else "fails"))
    if pair.negative:
        body.append(("PAIRWISE-WITNESS", pair.witness.text))
    if A.is_integral():
        dom = dim2.dominance_necessary_check(A)
        body.append(("DOMINANCE", dom.outcome if dom.outcome != NEGATIVE else "fails"))
        if dom.negative:
            body.append(("DOMINANCE-WITNESS", dom.witness.text))

    if bcp is not None and bcp.positive:
        outcome, code = "binary_cp", EXIT_POSITIVE
    elif cp.positive:
        outcome, code = "cp", EXIT_POSITIVE
    elif pair.negative:
        outcome, code = "not_cp", EXIT_NEGATIVE
    else:
        outcome, code = "undetermined", EXIT_NOT_APPLICABLE
    rep.add("OUTCOME", outcome)
    for kv in body:
        rep.add(*kv)
    if factors is not None:
        rep.add("FACTORS", factors)
    return code, rep


def _binary_report(rep: Report, A):
    res = binary.certify_binary_cp_01(A)
    rep.add("OUTCOME", res.outcome)
    if res.positive:
        rep.add("BCPRANK", str(res.bcprank))
        rep.add("BLOCK-SIZES", ",".join(map(str, res.block_sizes)) or "-")
        rep.add("FACTORS", [formats.format_factor(u) for u in res.U])
        return EXIT_POSITIVE, rep
    rep.add("WITNESS", f"block {{{fmt_index(res.witness_block)}}} is not all ones: "
                       f"A({fmt_index(res.witness_index)}) = 0")
    return EXIT_NEGATIVE, rep


def cmd_certify_01(args):
    data = _read(args.file)
    A = formats.parse_tensor(_decode(data))
    rep = Report("certify-01", data)
    if not A.is_binary():
        rep.add("OUTCOME", "not_applicable")
        rep.add("REASON", "tensor is not a (0,1) tensor")
        return EXIT_NOT_APPLICABLE, rep
    return _binary_report(rep, A)


def cmd_certify_hypergraph(args):
    data = _read(args.file)
    G = formats.parse_hypergraph(_decode(data))
    rep = Report("certify-hypergraph", data)
    cert = hypergraph.certify_unique_maximal(G)
    if cert.positive:
        rep.add("OUTCOME", "binary_cp")
        rep.add("METHOD", "unique-maximal-edge")
        rep.add("BCPRANK", "1")
        rep.add("FACTORS", [formats.format_factor(f) for f in cert.decomposition.factors])
        return EXIT_POSITIVE, rep
    rep.add("UNIQUE-MAXIMAL", f"not_applicable: {cert.reason}")
    rep.add("METHOD", "all-ones-blocks")
    return _binary_report(rep, hypergraph.adjacency_tensor(G))


def cmd_property_r(args):
    data = _read(args.file)
    G = formats.parse_hypergraph(_decode(data))
    rep = Report("property-r", data)
    res = hypergraph.property_R_check(G)
    rep.add("OUTCOME", "holds" if res.holds else "violated")
    rep.add("MAXIMAL-EDGES", [fmt_index(e) for e in hypergraph.maximal_edges(G)])
    if res.holds:
        return EXIT_POSITIVE, rep
    rep.add("EDGE", fmt_index(res.edge))
    rep.add("MISSING", fmt_index(res.missing))
    return EXIT_NEGATIVE, rep


def cmd_indicator(args):
    data = _read(args.file)
    G = formats.parse_hypergraph(_decode(data))
    rep = Report("indicator", data)
    W = hypergraph.indicator_matrix(G)
    rep.add("OUTCOME", "done")
    rep.add("COLUMNS", [",".join(map(str, c)) for c in W.columns])
    rep.add("ASSOCIATED-MATRIX", [",".join(map(str, r)) for r in hypergraph.associated_matrix(G)])
    return EXIT_POSITIVE, rep


def cmd_oracle(args):
    data = _read(args.file)
    A = formats.parse_tensor(_decode(data))
    kmax = args.kmax
    if kmax is None:
        kmax = int(sum(A.diagonal_values()))
    rep = Report(f"oracle --kmax {kmax} --node-cap {args.node_cap}", data)
    if not A.is_integral():
        rep.add("OUTCOME", "not_applicable")
        rep.add("REASON", "entries are not nonnegative integers")
        return EXIT_NOT_APPLICABLE, rep
    try:
        res = binary.oracle_binary_cp_search(A, kmax, args.node_cap)
    except SearchSpaceTooLarge as exc:
        rep.add("OUTCOME", "search_space_too_large")
        rep.add("REASON", str(exc))
        return EXIT_NOT_APPLICABLE, rep
    if res.found:
        rep.add("OUTCOME", "found")
        rep.add("K", str(res.K))
        rep.add("NODES", str(res.nodes))
        rep.add("FACTORS", [formats.format_factor(f) for f in res.factors])
        return EXIT_POSITIVE, rep
    rep.add("OUTCOME", "exhausted")
    rep.add("KMAX", str(kmax))
    rep.add("NODES", str(res.nodes))
    return EXIT_NEGATIVE, rep


def cmd_eval(args):
    if args.at is None and args.factors is None:
        raise UsageError("eval needs --at and/or --factors")
    data = _read(args.file)
    A = formats.parse_tensor(_decode(data))
    echo = "eval" + (f" --at {args.at}" if args.at is not None else "")
    rep = Report(echo, data)
    code = EXIT_POSITIVE
    outcome = "done"
    extra: list[tuple[str, object]] = []
    if args.at is not None:
        try:
            x = [as_fraction(t) for t in args.at.split(",")]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad point {args.at!r}") from None
        extra.append(("VALUE", fmt(evaluate(A, x))))
    if args.factors is not None:
        fdata = _read(args.factors)
        D = formats.parse_factors(_decode(fdata))
        rep.add("FACTORS-INPUT", "sha256:" + hashlib.sha256(fdata).hexdigest())
        cert = verify_cp_decomposition(A, D)
        outcome = cert.outcome
        extra.append(("TERMS", str(len(D))))
        if cert.outcome == NEGATIVE:
            extra.append(("WITNESS", cert.witness.text))
            code = EXIT_NEGATIVE
    rep.add("OUTCOME", outcome)
    for kv in extra:
        rep.add(*kv)
    return code, rep


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")

    parser = _Parser(prog="cptensor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gram", parents=[common], help="Gramian tensor of a factor matrix")
    p.add_argument("file")
    p.add_argument("--order", "-m", type=int, required=True)
    p.set_defaults(func=cmd_gram)

    for name, func, helptext in [
        ("certify-dim2", cmd_certify_dim2, "certify a 2-dimensional tensor"),
        ("certify-01", cmd_certify_01, "{0,1}-CP test for a (0,1) tensor"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)

    for name, func, helptext in [
        ("certify-hypergraph", cmd_certify_hypergraph, "certify a multi-hypergraph's adjacency tensor"),
        ("property-r", cmd_property_r, "check Property R"),
        ("adjacency", cmd_adjacency, "print the adjacency tensor"),
        ("indicator", cmd_indicator, "indicator matrix W and W W^T"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive {0,1}-CP search")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, default=None, help="largest size tried (default: trace)")
    p.add_argument("--node-cap", type=int, default=binary.DEFAULT_NODE_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("eval", parents=[common], help="evaluate the form or verify factors")
    p.add_argument("file")
    p.add_argument("--at", help="point x as comma-separated rationals")
    p.add_argument("--factors", help="file of factor lines to verify")
    p.set_defaults(func=cmd_eval)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "kmax", None) is not None and args.kmax < 0:
            raise UsageError("--kmax must be nonnegative")
        if getattr(args, "order", None) is not None and args.order < 2:
            raise UsageError("--order must be at least 2")
        code, report = args.func(args)
    except UsageError as exc:
        stderr.write(f"cptensor: usage error: {exc}\n")
        return EXIT_USAGE
    except FormatError as exc:
        stderr.write(f"cptensor: {getattr(args, 'file', '?')}: {exc}\n")
        return EXIT_DATAERR
    except NotApplicable as exc:
        stderr.write(f"cptensor: not applicable: {exc.reason}\n")
        return EXIT_NOT_APPLICABLE
    except CpTensorError as exc:
        stderr.write(f"cptensor: {getattr(args, 'file', '?')}: {exc}\n")
        return EXIT_DATAERR
    stdout.write(report.json() if args.json else report.text())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
