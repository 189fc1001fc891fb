"""Command-line interface: ``semicomm <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .commgraph import DEFAULT_BUDGET, BudgetExceeded, diameter, distance, export, graph, idempotent_graph
from .commgraph import lower_bound_certificate
from .constructions import parse_ndi5, semigroup_from_spec, witness_from_spec
from .harness import SUITES, verify
from .lpaths import check_An, check_quasi_identity_1, knit_degree
from .semigroup import FiniteSemigroup, SizeLimitError, UniverseError, cayley_table
from .transform import Transformation, parse_transformation


class CLIError(Exception):
    pass


def parse_element_text(text: str, n: int | None = None) -> Transformation:
    """``[2,1,1]``, ``2,1,1`` or a written cycle-with-tail form (needs ``n``)."""
    t = text.strip()
    if t.startswith("("):
        if n is None:
            raise CLIError(f"cannot place {text!r} without a point count")
        return parse_ndi5(t, n)
    return parse_transformation(t)


def _element(S: FiniteSemigroup, text: str) -> int:
    if S.names is not None and text in S.names:
        return S.names.index(text)
    if not S.is_transformation:
        raise CLIError(f"{text!r} is not an element name of this semigroup")
    try:
        return S.index(parse_element_text(text, S.n))
    except KeyError:
        raise CLIError(f"{text} is not an element of this semigroup") from None


def _semigroup(spec: str) -> FiniteSemigroup:
    try:
        return semigroup_from_spec(spec)
    except (ValueError, OSError) as exc:
        raise CLIError(str(exc)) from None


def _path(S: FiniteSemigroup, res) -> str:
    if res.witness is None:
        return ""
    return " - ".join(S.label(v) for v in res.witness.vertices)


def _value(v) -> str:
    return "inf" if v == float("inf") else str(int(v))


def cmd_diameter(args) -> int:
    S = _semigroup(args.spec)
    G = idempotent_graph(S) if args.idempotent else graph(S)
    res = diameter(G, budget=args.budget, threads=args.threads)
    print(_value(res.value))
    if res.witness is not None:
        print(f"path: {_path(S, res)}")
    elif res.pair is not None:
        print(f"no path between {S.label(res.pair[0])} and {S.label(res.pair[1])}")
    return 0


def cmd_distance(args) -> int:
    S = _semigroup(args.spec)
    G = idempotent_graph(S) if args.idempotent else graph(S)
    u, w = _element(S, args.a), _element(S, args.b)
    try:
        res = distance(G, u, w, max_work=args.budget)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    print(_value(res.value))
    if res.witness is not None:
        print(f"path: {_path(S, res)}")
    return 0


def cmd_knit_degree(args) -> int:
    S = _semigroup(args.spec)
    kd = knit_degree(S, include_central=args.include_central)
    if kd.absent:
        print("absent")
    else:
        print(kd.value)
        print("l-path: " + " - ".join(kd.witness.labels(S)))
    return 0


def _print_report(S: FiniteSemigroup, rep) -> None:
    name = "(1)" if rep.identity == "1" else f"({rep.identity[0]}_{rep.identity[1:]})"
    if rep.holds:
        print(f"{name} holds")
    else:
        print(f"{name} fails; witness {', '.join(rep.labels(S))}; violated clause {rep.clause}")


def cmd_check_an(args) -> int:
    S = _semigroup(args.spec)
    try:
        rep = check_An(S, args.n, engine=args.engine)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    _print_report(S, rep)
    return 0


def cmd_check_q1(args) -> int:
    S = _semigroup(args.spec)
    _print_report(S, check_quasi_identity_1(S))
    return 0


def cmd_certificate(args) -> int:
    a = parse_element_text(args.a, args.n)
    b = parse_element_text(args.b, args.n)
    if a.n != args.n or b.n != args.n:
        raise CLIError(f"both maps must act on {args.n} points")
    res = lower_bound_certificate(args.n, a, b, detail=True)
    print("true" if res.holds else "false")
    print(f"|C(a)|={res.size_ca} |C(C(a))|={res.size_cca} |C(b)|={res.size_cb}")
    if res.witness is not None:
        print(f"commuting pair: {res.witness[0]} {res.witness[1]}")
    return 0


def cmd_construct(args) -> int:
    if args.name.startswith("witness:"):
        try:
            a, b = witness_from_spec(args.name)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        print(f"a = {a}")
        print(f"b = {b}")
        return 0
    S = _semigroup(args.name)
    print(f"{S.size} elements")
    for i in range(S.size):
        el = S.element(i)
        print(f"{S.label(i)}\t{el}" if S.is_transformation and S.names is not None else S.label(i))
    if S.size <= args.table_max:
        t = cayley_table(S)
        w = max(len(x) for x in t.names)
        print()
        print(" " * w + " | " + " ".join(x.rjust(w) for x in t.names))
        for x, row in zip(t.names, t.table):
            print(x.rjust(w) + " | " + " ".join(t.names[j].rjust(w) for j in row))
    return 0


def cmd_export(args) -> int:
    S = _semigroup(args.spec)
    G = idempotent_graph(S) if args.idempotent else graph(S)
    try:
        data = export(G, args.format)
    except (ValueError, SizeLimitError) as exc:
        raise CLIError(str(exc)) from None
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return 0


def cmd_verify(args) -> int:
    cases = None
    if args.cases:
        cases = [int(x) for x in args.cases.split(",")]
    try:
        rep = verify(args.suite, max_n=args.max_n, max_k=args.max_k, budget=args.budget,
                     threads=args.threads, cases=cases)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    print(rep.summary())
    if args.json:
        Path(args.json).write_text(rep.to_json() + "\n", encoding="utf-8")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semicomm", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_opts(q):
        q.add_argument("--idempotent", action="store_true", help="use the idempotent commuting graph")
        q.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="work-unit budget")
        q.add_argument("--threads", type=int, default=1)

    q = sub.add_parser("diameter", help="exact diameter of a commuting graph")
    q.add_argument("spec")
    graph_opts(q)
    q.set_defaults(func=cmd_diameter)

    q = sub.add_parser("distance", help="distance between two elements")
    q.add_argument("spec")
    q.add_argument("a")
    q.add_argument("b")
    graph_opts(q)
    q.set_defaults(func=cmd_distance)

    q = sub.add_parser("knit-degree", help="length of a shortest l-path")
    q.add_argument("spec")
    q.add_argument("--include-central", action="store_true", help="allow central elements on the path")
    q.set_defaults(func=cmd_knit_degree)

    q = sub.add_parser("check-an", help="check the quasi-identity (A_n)")
    q.add_argument("spec")
    q.add_argument("n", type=int)
    q.add_argument("--engine", choices=("naive", "lpath", "tuples"), default="naive")
    q.set_defaults(func=cmd_check_an)

    q = sub.add_parser("check-q1", help="check the quasi-identity zx = zy => xy = yx")
    q.add_argument("spec")
    q.set_defaults(func=cmd_check_q1)

    q = sub.add_parser("certificate", help="C-operator lower-bound certificate in T(n)")
    q.add_argument("n", type=int)
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(func=cmd_certificate)

    q = sub.add_parser("construct", help="print a named semigroup or witness pair")
    q.add_argument("name")
    q.add_argument("--table-max", type=int, default=40, help="print the Cayley table up to this size")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("export", help="write a commuting graph as DOT or JSON")
    q.add_argument("spec")
    q.add_argument("--format", choices=("dot", "json"), default="json")
    q.add_argument("--idempotent", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_export)

    q = sub.add_parser("verify", help="run a verification suite")
    q.add_argument("suite", choices=SUITES + ("all",))
    q.add_argument("--max-n", type=int, default=5)
    q.add_argument("--max-k", type=int, default=3)
    q.add_argument("--cases", help="comma-separated n values for tdia3")
    q.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--json", help="write the JSON report here")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CLIError, BudgetExceeded, SizeLimitError, UniverseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
