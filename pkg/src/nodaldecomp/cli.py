"""Command-line front end.

Exit codes: 0 success, 1 a verification FAIL, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .builders import ExpressionError, Representation, from_representation, parse_expr
from .errors import BudgetExceeded, ConvergenceError
from .formats import graph_to_dict, graph_to_json, read_graph, to_dot, to_edgelist
from .graph import Graph, GraphError
from .groups import GroupTableError, parse_group, power_graph
from .nodal import DEFAULT_CAP, nodal_decomposition_number
from .spectra import closed_form_basis, eigen_decompose
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SUITES = ("all", "slb", "sharp", "highest", "pq", "pgroup", "basisbound", "maxbound")


class UsageError(ValueError):
    pass


def _default_cap() -> int:
    env = os.environ.get("NODAL_CAP")
    if env is None:
        return DEFAULT_CAP
    try:
        cap = int(env)
    except ValueError:
        raise UsageError(f"NODAL_CAP must be an integer, got {env!r}")
    if cap < 0:
        raise UsageError("NODAL_CAP must be non-negative")
    return cap


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nodaldecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a graph from an expression such as J(U(K2,K3),J(K4,K11))")
    p.add_argument("--expr", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "dot", "edgelist"), default="json")

    p = sub.add_parser("spectrum", help="Laplacian spectrum (numeric, or exact from a representation)")
    p.add_argument("--graph", help="graph JSON or edge-list file, '-' for stdin (the default without --exact-rep)")
    p.add_argument("--exact-rep", help='representation JSON file, e.g. {"parts": [[2,3],[4],[11]]}')
    p.add_argument("--tol", type=_positive_float, default=1e-8)
    p.add_argument("--no-basis", action="store_true", help="omit eigenvectors from the output")

    p = sub.add_parser("nodal", help="S, W and D for a vector on a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--vector", required=True, help='comma-separated rationals, e.g. "0,1,-1/2"')
    p.add_argument("--cap", type=_non_negative_int)

    p = sub.add_parser("power", help="power graph of a finite group")
    p.add_argument("--group", required=True, help="cyclic:12 | abelian:2,2,4 | semidirect:p=2,q=3 | table:path.json")
    p.add_argument("--out")

    p = sub.add_parser(
        "verify",
        help="run verification scenarios",
        epilog=(
            "suites and their --params: slb (parts=[[..],..]), sharp (N=20), highest (expr=.. or group=..), "
            "pq (p=..,q=..), pgroup (p=..,factors=[..]), basisbound (parts=.. or expr=..), maxbound (expr=..)"
        ),
    )
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--params", default="", help="key=value pairs, e.g. p=2,q=3 or parts=[[2,3],[4],[11]]")
    p.add_argument("--cap", type=_non_negative_int)
    p.add_argument("--timing", action="store_true", help="include runtimes (output is then not byte-stable)")

    p = sub.add_parser("export", help="convert a graph to another format")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("json", "dot", "edgelist", "text"), default="dot")
    return parser


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str) -> Graph:
    try:
        return read_graph(_read_text(path))
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"cannot read graph from {path}: {exc}")


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format_graph(g: Graph, fmt: str) -> str:
    if fmt == "json":
        return graph_to_json(g) + "\n"
    if fmt == "dot":
        return to_dot(g)
    if fmt == "edgelist":
        return to_edgelist(g)
    degrees = g.degrees()
    lines = [f"n={g.n} m={g.m}"] + [f"{v}: {' '.join(map(str, g.adjacency[v]))} (deg {degrees[v]})" for v in range(g.n)]
    return "\n".join(lines) + "\n"


def parse_vector(text: str) -> list:
    try:
        return [_simplify(Fraction(tok.strip())) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector {text!r}: {exc}")


def _simplify(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def parse_params(text: str) -> dict:
    """``a=1,b=[[2,3],[4]]`` -> ``{"a": 1, "b": [[2, 3], [4]]}``.

    Commas inside brackets are kept, and a segment without ``=`` continues the
    previous value, so ``group=abelian:2,2`` works unquoted.
    """
    depth, current, items = 0, [], []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(current))
            current = []
        else:
            current.append(ch)
    items.append("".join(current))
    raw: dict[str, str] = {}
    last = None
    for item in items:
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if sep:
            last = key.strip()
            raw[last] = value.strip()
        elif last is not None:
            raw[last] += "," + item.strip()
        else:
            raise UsageError(f"parameter {item!r} is not key=value")
    params: dict = {}
    for key, value in raw.items():
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


# -- verify suites -------------------------------------------------------------


def _suite_slb(params, cap):
    parts_list = [params["parts"]] if "parts" in params else [[[2, 3], [4], [11]], [[1, 2], [3]], [[1], [1]]]
    return [V.verify_slb(Representation.of(parts), cap) for parts in parts_list]


def _suite_sharp(params, cap):
    return [V.verify_sharp_lower_bound(int(params.get("N", 20)), cap)]


def _suite_highest(params, cap):
    if "expr" in params:
        targets = [(params["expr"], parse_expr(params["expr"]))]
    elif "group" in params:
        targets = [(f"P({params['group']})", power_graph(parse_group(params["group"])))]
    else:
        targets = [
            ("P(semidirect:p=2,q=3)", power_graph(parse_group("semidirect:p=2,q=3"))),
            ("MP(1,4)", parse_expr("MP(1,4)")),
            ("K4", parse_expr("K4")),
        ]
    return [V.verify_highest_eigenvalue(g, label, cap) for label, g in targets]


def _suite_pq(params, cap):
    pairs = [(int(params["p"]), int(params["q"]))] if "p" in params else [(2, 3), (2, 5), (3, 5), (3, 7)]
    reports = []
    for p, q in pairs:
        reports.extend(V.verify_power_graph_pq(p, q, cap))
    return reports


def _suite_pgroup(params, cap):
    if "factors" in params:
        cases = [(int(params.get("p", 2)), [int(f) for f in params["factors"]])]
    else:
        cases = [(2, [8]), (2, [2, 2]), (2, [2, 4]), (3, [9]), (3, [3, 3])]
    return [V.verify_abelian_p_group(p, factors, cap) for p, factors in cases]


def _suite_basisbound(params, cap):
    if "parts" in params:
        r = Representation.of(params["parts"])
        targets = [(f"REP({json.dumps(params['parts'])})", from_representation(r), closed_form_basis(r))]
    elif "expr" in params:
        g = parse_expr(params["expr"])
        targets = [(params["expr"], g, eigen_decompose(g))]
    else:
        k5 = Representation.of([[1]] * 5)
        cor = Representation.of([[2, 3], [4], [11]])
        p3 = parse_expr("P3")
        targets = [
            ("K5 closed form", from_representation(k5), closed_form_basis(k5)),
            ("REP([[2,3],[4],[11]]) closed form", from_representation(cor), closed_form_basis(cor)),
            ("P3 numeric", p3, eigen_decompose(p3)),
        ]
    return [V.verify_urschel_bound_on_basis(g, basis, label, cap) for label, g, basis in targets]


def _suite_maxbound(params, cap):
    if "expr" in params:
        exprs = [params["expr"]]
    else:
        exprs = ["K4", "P3", "C5", "MP(2,3)", "J(U(K2,K3),J(K4,K11))"]
    reports = [V.verify_mohar_bound(parse_expr(e), e) for e in exprs]
    pairs = [("K1", "K1"), ("K2", "K1"), ("P3", "C4"), ("U(K2,K1)", "C5")]
    if "expr" not in params:
        reports += [V.verify_join_identity(parse_expr(a), parse_expr(b), f"{a} + {b}") for a, b in pairs]
    return reports


SUITE_RUNNERS = {
    "slb": _suite_slb,
    "sharp": _suite_sharp,
    "highest": _suite_highest,
    "pq": _suite_pq,
    "pgroup": _suite_pgroup,
    "basisbound": _suite_basisbound,
    "maxbound": _suite_maxbound,
}


def run_suite(name: str, params: dict, cap: int) -> list[V.TheoremReport]:
    if name == "all":
        reports = []
        for runner in SUITE_RUNNERS.values():
            reports.extend(runner({}, cap))
        return reports
    return SUITE_RUNNERS[name](params, cap)


# -- commands ------------------------------------------------------------------


def _cmd_build(args) -> int:
    g = parse_expr(args.expr)
    _emit(_format_graph(g, args.format), args.out)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    graph_path = args.graph or (None if args.exact_rep else "-")
    g = _load_graph(graph_path) if graph_path else None
    if args.exact_rep:
        r = Representation.from_json(_read_text(args.exact_rep))
        rep_graph = from_representation(r)
        if g is not None and g != rep_graph:
            raise UsageError("--graph does not match the graph built from --exact-rep")
        basis = closed_form_basis(r)
    else:
        basis = eigen_decompose(g, tol=args.tol)
    out = basis.to_dict()
    if args.no_basis:
        del out["basis"]
    _emit(json.dumps(out) + "\n")
    return EXIT_OK


def _cmd_nodal(args, cap) -> int:
    g = _load_graph(args.graph)
    f = parse_vector(args.vector)
    if len(f) != g.n:
        raise UsageError(f"vector has {len(f)} entries, graph has {g.n} vertices")
    if not any(f):
        raise UsageError("vector is identically zero")
    report = nodal_decomposition_number(g, f, cap)
    _emit(json.dumps(report.to_dict()) + "\n")
    return EXIT_OK


def _cmd_power(args) -> int:
    g = power_graph(parse_group(args.group))
    _emit(json.dumps(graph_to_dict(g), separators=(",", ":")) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args, cap) -> int:
    reports = run_suite(args.suite, parse_params(args.params), cap)
    _emit(json.dumps([r.to_dict(include_runtime=args.timing) for r in reports], indent=2) + "\n")
    for r in reports:
        for a in r.flags:
            print(f"FLAG {r.theorem_id} [{r.subject}]: {a.statement} (expected {a.expected}, computed {a.computed})", file=sys.stderr)
        for a in r.failures:
            print(f"FAIL {r.theorem_id} [{r.subject}]: {a.statement} (expected {a.expected}, computed {a.computed})", file=sys.stderr)
    return EXIT_FAIL if any(r.status == V.FAIL for r in reports) else EXIT_OK


def _cmd_export(args) -> int:
    _emit(_format_graph(_load_graph(args.graph), args.format))
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cap = args.cap if getattr(args, "cap", None) is not None else _default_cap()
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "spectrum":
            return _cmd_spectrum(args)
        if args.command == "nodal":
            return _cmd_nodal(args, cap)
        if args.command == "power":
            return _cmd_power(args)
        if args.command == "verify":
            return _cmd_verify(args, cap)
        if args.command == "export":
            return _cmd_export(args)
    except BudgetExceeded as exc:
        print(f"error: {exc} (required budget: {exc.required})", file=sys.stderr)
        return EXIT_BUDGET
    except KeyError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: missing parameter {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ExpressionError, GraphError, GroupTableError, json.JSONDecodeError, OSError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
