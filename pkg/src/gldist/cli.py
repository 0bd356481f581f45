"""Command-line front end.

Standard output carries exactly one JSON document; every diagnostic goes to
standard error. Exit codes: 0 success, 1 usage, 2 parse or validation error,
3 engine error, 4 failing suite or catalog entry.
"""

from __future__ import annotations

import argparse
import json
import sys

from .basechange import bc_class, param_factors
from .catalog import verify as verify_catalog
from .core import MultiSegment, Universe
from .distinction import induced_distinction, ladder_distinction
from .dsl import format_rep, load_universe, parse_multisegment, parse_rep, segment_ast
from .errors import DslSyntaxError, GldistError, SchemaError, ValidationError
from .involution import mw_dual
from .testkit import LATTICES, SUITES, EnumSpec, default_universe, run_suite

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_ENGINE, EXIT_FAILED = 0, 1, 2, 3, 4


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


class _InputError(Exception):
    """Wraps anything that goes wrong before the engine runs."""


def _universe(path: str | None) -> Universe | None:
    if path is None:
        return None
    try:
        return load_universe(path)
    except OSError as exc:
        raise _InputError(f"cannot read universe file: {exc}") from exc
    except SchemaError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _parse(fn, text: str, u):
    try:
        return fn(text, u)
    except DslSyntaxError as exc:
        raise _InputError(f"syntax error: {exc}") from exc
    except ValidationError as exc:
        raise _InputError(f"{type(exc).__name__}: {exc}") from exc


def _mseg_ast(m: MultiSegment) -> dict:
    return {"segments": [segment_ast(s) for s in m]}


# -- subcommands --------------------------------------------------------------

def _cmd_dual(args) -> dict:
    u = _universe(args.universe)
    m = _parse(parse_multisegment, args.mseg, u)
    dual, trace = mw_dual(m)
    out = {"input": str(m), "dual": str(dual)}
    if args.trace:
        out["trace"] = trace.to_json()
    return out


def _cmd_bc_class(args) -> dict:
    u = _universe(args.universe)
    m = _parse(parse_multisegment, args.mseg, u)
    out = bc_class(m, u).to_json()
    out["factors"] = [f.to_json() for f in param_factors(m)]
    return out


def _cmd_ladder(args) -> dict:
    u = _universe(args.universe)
    m = _parse(parse_multisegment, args.mseg, u)
    return ladder_distinction(m, u).to_json()


def _cmd_induced(args) -> dict:
    u = _universe(args.universe)
    r = _parse(parse_rep, args.rep, u)
    return induced_distinction(r, u, args.twist).to_json()


def _cmd_parse(args) -> dict:
    u = _universe(args.universe)
    text = args.expr
    if "(" in text:
        r = _parse(parse_rep, text, u)
        return {"kind": "rep", "canonical": format_rep(r),
                "ast": {"factors": [_mseg_ast(f) for f in r.factors]}}
    m = _parse(parse_multisegment, text, u)
    return {"kind": "multisegment", "canonical": str(m), "ast": _mseg_ast(m)}


def _cmd_catalog(args) -> tuple[dict, int]:
    rows = verify_catalog()
    for row in rows:
        print(f"{'PASS' if row['pass'] else 'FAIL'}  {row['id']}", file=sys.stderr)
    ok = all(row["pass"] for row in rows)
    return {"entries": rows, "all_pass": ok}, EXIT_OK if ok else EXIT_FAILED


def _range(text: str) -> tuple[str, str]:
    lo, sep, hi = text.partition("..")
    if not sep or not lo or not hi:
        raise _Usage(f"--range expects LO..HI, got {text!r}")
    return lo.strip(), hi.strip()


def _cmd_check(args) -> tuple[dict, int]:
    u = _universe(args.universe) if args.universe else default_universe()
    lo, hi = _range(args.range)
    lines = args.lines.split(",") if args.lines else sorted(u.lines)
    try:
        spec = EnumSpec.make(u, lines, lo, hi, args.max_size, args.lattice)
    except (ValueError, ValidationError) as exc:
        raise _InputError(str(exc)) from exc
    report = run_suite(args.suite, spec, jobs=args.jobs, seed=args.seed, n_random=args.cases)
    print(f"{report.suite}: {report.cases} cases, {report.failure_count} failures, "
          f"{report.wall_time:.2f}s", file=sys.stderr)
    return report.to_json(timing=not args.no_timing), EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gldist", description="Multisegment combinatorics for GL_n distinction.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_universe(sp, required=True):
        sp.add_argument("-u", "--universe", required=required, metavar="FILE",
                        help="universe JSON file")
        return sp

    sp = with_universe(sub.add_parser("dual", help="Zelevinsky involution"))
    sp.add_argument("mseg")
    sp.add_argument("--trace", action="store_true", help="include the MW rounds")
    sp.set_defaults(fn=_cmd_dual)

    sp = with_universe(sub.add_parser("bc-class", help="base-change class"))
    sp.add_argument("mseg")
    sp.set_defaults(fn=_cmd_bc_class)

    sp = with_universe(sub.add_parser("ladder-dist", help="distinction of a ladder"))
    sp.add_argument("mseg")
    sp.set_defaults(fn=_cmd_ladder)

    sp = with_universe(sub.add_parser("induced-dist", help="distinction of a product of ladders"))
    sp.add_argument("rep")
    sp.add_argument("--twist", type=int, choices=(0, 1), default=0)
    sp.set_defaults(fn=_cmd_induced)

    sp = with_universe(sub.add_parser("parse", help="canonical form and AST"), required=False)
    sp.add_argument("expr")
    sp.set_defaults(fn=_cmd_parse)

    sp = sub.add_parser("catalog", help="built-in examples")
    sp.add_argument("action", choices=("verify",))
    sp.set_defaults(fn=_cmd_catalog)

    sp = with_universe(sub.add_parser("check", help="run a property suite"), required=False)
    sp.add_argument("--suite", required=True, choices=SUITES)
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--range", required=True, metavar="LO..HI")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--lines", help="comma-separated line ids (default: all)")
    sp.add_argument("--lattice", choices=sorted(LATTICES), default="both")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=1000, help="random cases for induced-hereditary")
    sp.add_argument("--no-timing", action="store_true", help="omit wall_time from the report")
    sp.set_defaults(fn=_cmd_check)
    return p


def _join_range(argv: list[str]) -> list[str]:
    # "--range -3..3" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--range":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--range={nxt}")
        else:
            out.append(a)
    return out


def run(argv: list[str] | None = None) -> int:
    argv = _join_range(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.fn(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except _InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except GldistError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    json.dump(result, sys.stdout, ensure_ascii=False)
    sys.stdout.write("\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
