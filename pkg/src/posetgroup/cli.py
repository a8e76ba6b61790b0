"""Command-line front-end.

Exit codes: 0 success or true verdict, 1 well-formed false verdict,
2 parse/validation/usage/internal error (one diagnostic line on stderr
prefixed with a machine-greppable code such as E_SYNTAX or E_CYCLE).

With --json every command prints a single JSON document
{"command": ..., "ok": ..., "result": ..., "witness": ...} on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import oracle
from .abelian import format_expr, parse_expr
from .cone import canonical_order_unit, in_cone, is_order_unit, leq
from .errors import ExpressionSyntaxError, PosetGroupError
from .poset import Poset, build_poset
from .riesz import RefinementProblem, interpolate, refine


def parse_poset_file(text: str) -> Poset:
    """Parse the poset file format: 'elem NAME...' and 'lt NAME NAME' lines,
    '#' comments, blank lines ignored; lt names must be declared earlier."""
    elements: list[str] = []
    declared = set()
    relations: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "elem":
            elements.extend(parts[1:])
            declared.update(parts[1:])
        elif parts[0] == "lt":
            if len(parts) != 3:
                raise ExpressionSyntaxError(
                    f"line {lineno}: lt takes exactly two names")
            for name in parts[1:]:
                if name not in declared:
                    raise ExpressionSyntaxError(
                        f"line {lineno}: {name!r} not declared before use")
            relations.append((parts[1], parts[2]))
        else:
            raise ExpressionSyntaxError(
                f"line {lineno}: unknown directive {parts[0]!r}")
    return build_poset(elements, relations)


def _load_poset(path: str) -> Poset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_poset_file(fh.read())


def _emit(args, command: str, result, witness=None,
          plain: Optional[str] = None) -> None:
    if args.json:
        doc = {"ok": True, "command": command, "result": result,
               "witness": witness}
        print(json.dumps(doc, sort_keys=True))
    elif plain is not None:
        print(plain)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetgroup",
        description="Partially ordered abelian groups over finite posets")
    parser.add_argument("--json", action="store_true",
                        help="emit a single JSON document on stdout")
    groups = parser.add_subparsers(dest="group", required=True)

    poset = groups.add_parser("poset").add_subparsers(dest="command", required=True)
    check = poset.add_parser("check", help="validate a poset file")
    check.add_argument("file")
    maximal = poset.add_parser("maximal", help="print the maximal elements")
    maximal.add_argument("file")

    cone = groups.add_parser("cone").add_subparsers(dest="command", required=True)
    member = cone.add_parser("member", help="positive-cone membership verdict")
    member.add_argument("file")
    member.add_argument("expr")
    cleq = cone.add_parser("leq", help="order verdict x <= y")
    cleq.add_argument("file")
    cleq.add_argument("x")
    cleq.add_argument("y")
    unit = cone.add_parser("unit", help="canonical order unit / order-unit verdict")
    unit.add_argument("file")
    unit.add_argument("expr", nargs="?")

    riesz = groups.add_parser("riesz").add_subparsers(dest="command", required=True)
    rref = riesz.add_parser("refine", help="refinement matrix for x1+x2 = y1+y2")
    rref.add_argument("file")
    rref.add_argument("x1")
    rref.add_argument("x2")
    rref.add_argument("y1")
    rref.add_argument("y2")
    rint = riesz.add_parser("interpolate", help="element between x's and y's")
    rint.add_argument("file")
    rint.add_argument("x1")
    rint.add_argument("x2")
    rint.add_argument("y1")
    rint.add_argument("y2")

    verify = groups.add_parser("verify", help="run the oracle suites")
    verify.add_argument("--max-n", type=int, required=True)
    verify.add_argument("--coeff-bound", type=int, required=True)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    return parser


def _dispatch(args) -> int:
    if args.group == "poset":
        p = _load_poset(args.file)
        if args.command == "check":
            result = {"elements": len(p), "relation": p.relation_size()}
            _emit(args, "poset check", result,
                  plain=f"elements: {len(p)}\nrelation: {p.relation_size()}")
            return 0
        if args.command == "maximal":
            names = p.canonical_cofinal()
            _emit(args, "poset maximal", names, plain=" ".join(names))
            return 0

    if args.group == "cone":
        p = _load_poset(args.file)
        if args.command == "member":
            verdict = in_cone(parse_expr(p, args.expr))
            _emit(args, "cone member", verdict, plain=str(verdict).lower())
            return 0 if verdict else 1
        if args.command == "leq":
            verdict = leq(parse_expr(p, args.x), parse_expr(p, args.y))
            _emit(args, "cone leq", verdict, plain=str(verdict).lower())
            return 0 if verdict else 1
        if args.command == "unit":
            if args.expr is None:
                u = canonical_order_unit(p)
                _emit(args, "cone unit", format_expr(u), plain=format_expr(u))
                return 0
            cert = is_order_unit(parse_expr(p, args.expr))
            if cert is None:
                _emit(args, "cone unit", False, plain="false")
                return 1
            witness = dict(cert.per_element_witness)
            lines = ["true"] + [f"{name}: {witness[name]}" for name in p.elements]
            _emit(args, "cone unit", True, witness=witness,
                  plain="\n".join(lines))
            return 0

    if args.group == "riesz":
        p = _load_poset(args.file)
        x1 = parse_expr(p, args.x1)
        x2 = parse_expr(p, args.x2)
        y1 = parse_expr(p, args.y1)
        y2 = parse_expr(p, args.y2)
        if args.command == "refine":
            matrix = refine(RefinementProblem(x1=x1, x2=x2, y1=y1, y2=y2))
            exprs = [format_expr(e) for e in matrix.entries()]
            result = dict(zip(("z11", "z12", "z21", "z22"), exprs))
            _emit(args, "riesz refine", result, plain="\n".join(exprs))
            return 0
        if args.command == "interpolate":
            z = interpolate(x1, x2, y1, y2)
            _emit(args, "riesz interpolate", format_expr(z),
                  plain=format_expr(z))
            return 0

    if args.group == "verify":
        reports = oracle.verify_theorems(args.max_n, args.coeff_bound,
                                         args.samples, args.seed)
        if args.json:
            doc = {"ok": True, "command": "verify",
                   "result": [r.to_json_dict() for r in reports],
                   "witness": None}
            print(json.dumps(doc, sort_keys=True))
        else:
            sys.stdout.write(oracle.reports_to_jsonl(reports))
        return 0 if all(r.passed for r in reports) else 1

    raise PosetGroupError(f"unhandled command {args.group}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except PosetGroupError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"E_IO: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
