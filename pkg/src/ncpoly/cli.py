"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 algebraic error
(singular divisor, non-associative algebra where one is required, ...),
4 a worked example disagrees with its checks or its stored transcript.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .algebra import AlgebraError, ImaginarySphere, algebra_by_name, octonions
from .algebra import sqrt as quaternion_sqrt
from .division import divide_linear, divide_monic, factor_chain, verify_division
from .nonassoc import (BracketPolynomial, Const, Var, bchain_apply, bdivide_monic, bevaluate, bfactor_chain,
                       bmul)
from .ore import from_polynomial, left_mul, weierstrass_step_check
from .paper_examples import EXAMPLES, run_example
from .parser import (ParseError, as_bracket, as_element, as_polynomial, as_tensor, evaluate_ast,
                     parse_with_warnings)
from .poly import Polynomial, equals_as_map, evaluate, mul
from .tensor import MapMatrix, matrix_of, solve

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_ALGEBRA, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunReport:
    command: str
    algebra: str
    inputs: dict[str, Any] = field(default_factory=dict)
    result: dict[str, Any] = field(default_factory=dict)
    checks: list[dict[str, Any]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: str | None = None

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, indent=2)


# argument handling -------------------------------------------------------------------
_ARITY = {"eval": 1, "mul": 2, "solve": 2, "matrix": 1, "sqrt": 1, "divide": 1, "factor-chain": 1,
          "ore-mul": 2, "ore-check": 0, "odivide": 1}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", choices=["H", "O"], default=argparse.SUPPRESS,
                        help="quaternions (H, default) or octonions (O)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a machine-readable run report")
    common.add_argument("--file", default=argparse.SUPPRESS,
                        help="read expressions from a file, one per line")

    parser = _Parser(prog="ncpoly", parents=[common],
                     description="Exact polynomial arithmetic over quaternions and octonions.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def add(name, help, metavar=()):
        p = sub.add_parser(name, help=help, parents=[common])
        if metavar:
            p.add_argument("exprs", nargs="*", metavar=metavar[0] if len(metavar) == 1 else " ".join(metavar))
        else:
            p.set_defaults(exprs=[])
        return p

    p = add("eval", "evaluate a polynomial at a point", ["POLY"])
    p.add_argument("--at", required=True, help="the point x")
    add("mul", "multiply two polynomials", ["P", "Q"])
    add("solve", "solve t∘x = b for a rank-2 tensor t", ["TENSOR", "B"])
    add("matrix", "matrix of a rank-2 tensor", ["TENSOR"])
    add("sqrt", "square roots of a quaternion", ["A"])
    p = add("divide", "divide by a linear polynomial", ["POLY"])
    p.add_argument("--by", help="the divisor, e.g. 'x - j'")
    p.add_argument("--general", nargs=2, metavar=("P1", "P0"),
                   help="divide by p1∘x + p0 for a nonsingular rank-2 tensor p1")
    p = add("factor-chain", "peel linear factors with the given roots", ["POLY"])
    p.add_argument("--roots", required=True, help="comma separated roots, innermost factor last")
    add("ore-mul", "left-sided (coefficient convolution) product", ["P", "Q"])
    add("ore-check", "test the conjugated factorization of (x - i)*(x - j)")
    p = add("odivide", "bracketed division over the octonions", ["POLY"])
    p.add_argument("--by", required=True, help="the divisor x - a")
    p = sub.add_parser("paper-example", help="run a worked example and diff its transcript", parents=[common])
    p.add_argument("id", choices=list(EXAMPLES), help="example id")
    return parser


def _expressions(args) -> list[str]:
    exprs = list(args.exprs)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            exprs += [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    need = _ARITY[args.command]
    if len(exprs) != need:
        raise UsageError(f"ncpoly {args.command}: expected {need} expression(s), got {len(exprs)}")
    return exprs


class _Session:
    def __init__(self, report: RunReport, algebra_name: str):
        self.report = report
        self.algebra = algebra_by_name(algebra_name)

    def value(self, src: str, label: str, algebra=None):
        alg = algebra or self.algebra
        res = parse_with_warnings(src, alg)
        self.report.inputs[label] = src
        self.report.warnings.extend(f"{label}: {w}" for w in res.warnings)
        return evaluate_ast(res.ast, alg)


# commands ----------------------------------------------------------------------------
def _cmd_eval(s: _Session, args, exprs):
    p = s.value(exprs[0], "poly")
    x = as_element(s.value(args.at, "at"), "--at")
    if isinstance(p, BracketPolynomial):
        v = bevaluate(p, x)
    elif isinstance(p, Polynomial):
        v = evaluate(p, x)
    else:
        v = as_element(p)
    s.report.result = {"value": str(v), "text": str(v)}


def _cmd_mul(s: _Session, args, exprs):
    a, b = s.value(exprs[0], "p"), s.value(exprs[1], "q")
    if not s.algebra.is_associative:
        prod = bmul(as_bracket(a), as_bracket(b))
    else:
        prod = mul(as_polynomial(a), as_polynomial(b))
    s.report.result = {"product": str(prod), "text": str(prod)}


def _cmd_solve(s: _Session, args, exprs):
    t = as_tensor(s.value(exprs[0], "tensor"), 2)
    b = as_element(s.value(exprs[1], "b"), "b")
    sol = solve(t, b)
    s.report.result = {
        "kind": sol.kind,
        "particular": None if sol.particular is None else str(sol.particular),
        "kernel": [str(v) for v in sol.kernel_basis],
        "text": str(sol),
    }
    if sol.particular is not None:
        s.report.check("particular solution satisfies t∘x = b", sol.contains(sol.particular, t))


def _cmd_matrix(s: _Session, args, exprs):
    t = as_tensor(s.value(exprs[0], "tensor"), 2)
    m = matrix_of(t)
    s.report.result = {"rows": [[str(v) for v in row] for row in m.rows()], "determinant": str(m.det()),
                       "text": str(m)}


def _cmd_sqrt(s: _Session, args, exprs):
    a = as_element(s.value(exprs[0], "a"), "a")
    roots = quaternion_sqrt(a)
    if isinstance(roots, ImaginarySphere):
        s.report.result = {"kind": "sphere", "radius": f"{roots.radius:.12g}", "text": str(roots)}
    else:
        s.report.result = {"kind": "finite", "roots": [str(r) for r in roots.roots],
                           "multiplicity": roots.multiplicity, "text": str(roots)}
        for r in roots.roots:
            s.report.check(f"({r})^2 = {a}", (r * r).close_to(a))


def _monic_root(p: Polynomial):
    """``a`` when ``p = x - a`` as a map, else ``None``."""
    if p.degree() != 1:
        raise AlgebraError("the divisor must have degree 1")
    ident = MapMatrix.from_rows(p.algebra, [[int(r == c) for c in range(p.algebra.dim)]
                                            for r in range(p.algebra.dim)])
    if matrix_of(p.component(1)) == ident:
        return -p.constant_term
    return None


def _bracket_root(p: BracketPolynomial):
    a = p.algebra.zero()
    linear = False
    for c, t in p.terms:
        if isinstance(t, Var) and c == 1:
            linear = True
        elif isinstance(t, Const):
            a = a - t.value * c
        else:
            raise AlgebraError("bracketed division needs a divisor of the form x - a")
    if not linear:
        raise AlgebraError("bracketed division needs a divisor of the form x - a")
    return a


def _bracket_division(s: _Session, r: BracketPolynomial, by: str):
    a = _bracket_root(as_bracket(s.value(by, "by", r.algebra)))
    chain = bdivide_monic(r, a)
    s.report.result = {"remainder": str(chain.remainder), "quotient": str(chain.quotient),
                       "divisor": f"x - {a}", "text": f"remainder: {chain.remainder}\nquotient: {chain.quotient}"}
    s.report.check("remainder + q∘(x - a) = r", bchain_apply(chain, a).equals_as_map(r))
    s.report.check("remainder = r(a)", chain.remainder == bevaluate(r, a))


def _cmd_divide(s: _Session, args, exprs):
    value = s.value(exprs[0], "poly")
    if not s.algebra.is_associative:
        if args.general:
            raise AlgebraError("general linear divisors need an associative algebra")
        if not args.by:
            raise UsageError("ncpoly divide: --by is required")
        return _bracket_division(s, as_bracket(value), args.by)
    r = as_polynomial(value)
    if args.general:
        p1 = as_tensor(s.value(args.general[0], "p1"), 2)
        p0 = as_element(s.value(args.general[1], "p0"), "p0")
        chain = divide_linear(r, p1, p0)
    elif args.by:
        divisor = as_polynomial(s.value(args.by, "by"))
        a = _monic_root(divisor)
        if a is None:
            chain = divide_linear(r, divisor.component(1), divisor.constant_term)
        else:
            chain = divide_monic(r, a)
    else:
        raise UsageError("ncpoly divide: give --by or --general")
    s.report.result = {"remainder": str(chain.remainder), "quotient": str(chain.quotient),
                       "divisor": str(chain.divisor),
                       "text": f"remainder: {chain.remainder}\nquotient: {chain.quotient}"}
    s.report.check("remainder + q∘p = r", verify_division(r, chain, chain.divisor))


def _cmd_factor_chain(s: _Session, args, exprs):
    value = s.value(exprs[0], "poly")
    roots = [as_element(s.value(src.strip(), f"root {n + 1}"), "root")
             for n, src in enumerate(args.roots.split(","))]
    if not s.algebra.is_associative:
        r = as_bracket(value)
        chain = bfactor_chain(r, roots)
        s.report.result = {"core": str(chain.quotient), "remainder": str(chain.remainder),
                           "complete": chain.complete, "message": chain.message, "text": str(chain)}
        if chain.complete:
            s.report.check("chain reconstructs r", chain.reconstruct().equals_as_map(r))
        return
    r = as_polynomial(value)
    chain = factor_chain(r, roots)
    s.report.result = {"core": str(chain.core), "remainders": [str(v) for v in chain.remainders],
                       "complete": chain.complete, "message": chain.message, "text": str(chain)}
    if chain.complete:
        s.report.check("chain reconstructs r", equals_as_map(chain.reconstruct(), r))
    else:
        s.report.warnings.append(chain.message)


def _cmd_ore_mul(s: _Session, args, exprs):
    s.algebra.require_associative("left-sided multiplication")
    p = from_polynomial(as_polynomial(s.value(exprs[0], "p")))
    q = from_polynomial(as_polynomial(s.value(exprs[1], "q")))
    prod = left_mul(p, q)
    same = equals_as_map(prod.to_polynomial(), mul(p.to_polynomial(), q.to_polynomial()))
    s.report.result = {"product": str(prod), "agrees_with_pointwise_product": same,
                       "text": f"{prod}\nagrees with the pointwise product: {same}"}


def _cmd_ore_check(s: _Session, args, exprs):
    rep = weierstrass_step_check()
    s.report.result = {"P": str(rep.P), "P1": str(rep.P1), "point": str(rep.point),
                       "P_value": str(rep.p_value), "P1_value": str(rep.p1_value),
                       "differs": rep.differs, "text": str(rep)}


def _cmd_odivide(s: _Session, args, exprs):
    O = octonions()
    s.algebra = O
    s.report.algebra = O.name
    _bracket_division(s, as_bracket(s.value(exprs[0], "poly", O)), args.by)


_COMMANDS = {"eval": _cmd_eval, "mul": _cmd_mul, "solve": _cmd_solve, "matrix": _cmd_matrix,
             "sqrt": _cmd_sqrt, "divide": _cmd_divide, "factor-chain": _cmd_factor_chain,
             "ore-mul": _cmd_ore_mul, "ore-check": _cmd_ore_check, "odivide": _cmd_odivide}


def _paper_example(report: RunReport, id: str) -> None:
    run = run_example(id)
    report.inputs["id"] = id
    report.result = {"id": id, "title": run.result.title, "lines": run.result.lines, "diff": run.diff,
                     "text": "\n".join(run.result.lines)}
    for c in run.result.checks:
        report.check(c.name, c.passed, c.detail)
    report.check("output matches the stored transcript", not run.diff,
                 "" if not run.diff else "\n".join(run.diff))
    if not run.ok:
        report.exit_code = EXIT_MISMATCH


def _protect_negatives(argv: Sequence[str] | None) -> list[str]:
    """Keep expressions such as ``-2i`` from being read as options (all options are long)."""
    argv = sys.argv[1:] if argv is None else list(argv)
    return [" " + a if a.startswith("-") and not a.startswith("--") and a != "-h" else a for a in argv]


def execute(argv: Sequence[str] | None = None) -> RunReport:
    """Run a command and return its report without printing."""
    try:
        args = build_parser().parse_args(_protect_negatives(argv))
        for name, default in (("algebra", "H"), ("json", False), ("file", None)):
            if not hasattr(args, name):
                setattr(args, name, default)
        if not args.command:
            raise UsageError("ncpoly: a command is required (see --help)")
    except UsageError as exc:
        return RunReport("", "", exit_code=EXIT_USAGE, error=str(exc))
    report = RunReport(args.command, args.algebra)
    try:
        if args.command == "paper-example":
            _paper_example(report, args.id)
        else:
            exprs = _expressions(args)
            _COMMANDS[args.command](_Session(report, args.algebra), args, exprs)
            if not all(c["passed"] for c in report.checks):
                report.exit_code = EXIT_ALGEBRA
                report.error = "a consistency check failed"
    except UsageError as exc:
        report.exit_code, report.error = EXIT_USAGE, str(exc)
    except ParseError as exc:
        report.exit_code, report.error = EXIT_PARSE, f"parse error: {exc}"
    except OSError as exc:
        report.exit_code, report.error = EXIT_USAGE, str(exc)
    except AlgebraError as exc:
        report.exit_code, report.error = EXIT_ALGEBRA, f"algebraic error: {exc}"
    return report


def _print_text(report: RunReport) -> None:
    text = report.result.get("text")
    if text:
        print(text)
    for c in report.checks:
        print(f"[{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
        if not c["passed"] and c["detail"]:
            print(c["detail"])


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    report = execute(argv)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if "--json" in argv:
        print(report.to_json())
    else:
        _print_text(report)
        if report.error:
            print(report.error, file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
