"""Worked examples with independent checks and frozen expected output.

Each example recomputes its objects from scratch, checks them against the
values stated for the example, and renders a short text transcript. The
transcript is compared line by line with ``data/paper_examples.json``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .algebra import Q, ImaginarySphere, SquareRoots, octonions, quaternions, sqrt
from .division import divide_monic, factor_chain, kernel_condition_matrix
from .nonassoc import bchain_apply, bdivide_monic, bfactor_chain, paper_notation
from .ore import weierstrass_step_check
from .parser import parse_value
from .poly import equals_as_map, given_roots_pair, mul, solve_map_combination
from .tensor import MapMatrix, matrix_of, solve
from .xtensor import SlotTensor


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ExampleResult:
    id: str
    title: str
    lines: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def say(self, line: str) -> None:
        self.lines.append(line)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


EXAMPLES: dict[str, tuple[str, Callable[[], ExampleResult]]] = {}


def example(id: str, title: str):
    def register(fn):
        EXAMPLES[id] = (title, fn)
        return fn

    return register


def _H(src: str):
    return parse_value(src, "H")


def _O(src: str):
    return parse_value(src, "O")


def _random_elements(alg, n: int, seed: int):
    rng = random.Random(seed)
    return [alg.element([Q(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(alg.dim)]) for _ in range(n)]


@example("4.5", "a singular sandwich tensor and its affine root sets")
def _ex_4_5() -> ExampleResult:
    res = ExampleResult("4.5", EXAMPLES["4.5"][0])
    H = quaternions()
    t = _H("i@1 - 1@i")
    m = matrix_of(t)
    expected = MapMatrix.from_rows(H, [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -2], [0, 0, 2, 0]])
    res.check("matrix of i@1 - 1@i", m == expected)
    res.say(f"tensor: {t}")
    res.say("matrix:")
    res.lines.extend(str(m).splitlines())
    roots_k = solve(t, H["k"])
    res.check("ix - xi - k: particular 1/2 j", roots_k.kind == "affine" and roots_k.particular == H["j"] * Q(1, 2))
    res.check("ix - xi - k: kernel basis {1, i}", list(roots_k.kernel_basis) == [H.one(), H["i"]])
    roots_1 = solve(t, H.one())
    res.check("ix - xi - 1 has no root", roots_1.kind == "none")
    res.say(f"roots of ix - xi - k: {roots_k}")
    res.say(f"roots of ix - xi - 1: {roots_1}")
    return res


@example("5.2", "left-sided product and the claimed conjugated factorization")
def _ex_5_2() -> ExampleResult:
    res = ExampleResult("5.2", EXAMPLES["5.2"][0])
    H = quaternions()
    i, j, k = H["i"], H["j"], H["k"]
    rep = weierstrass_step_check(H)
    res.check("P = x^2 - (i + j)x + k", rep.P.coeffs == (k, -(i + j), H.one()))
    res.check("P(i + j) = k", rep.p_value == k)
    res.check("P1(i + j) = (k(j - i) - i)i", rep.p1_value == (k * (j - i) - i) * i)
    res.check("P(i + j) != P1(i + j)", rep.differs)
    res.lines.extend(str(rep).splitlines())
    return res


@example("6.3", "square roots of quaternion roots of x^2 + 1")
def _ex_6_3() -> ExampleResult:
    res = ExampleResult("6.3", EXAMPLES["6.3"][0])
    H = quaternions()
    s = 1 / math.sqrt(2)
    for src in ("i", "j", "k", "3/5 i + 4/5 k", "2/3 i - 1/3 j + 2/3 k"):
        a = _H(src)
        res.check(f"{src} is a root of x^2 + 1", a * a == H.scalar(-1))
        roots = sqrt(a)
        formula = [c * s for c in (H.one() + a).coords]
        ok = isinstance(roots, SquareRoots) and len(roots.roots) == 2
        if ok:
            r0, r1 = roots.roots
            ok = (all(abs(x - y) < 1e-10 for x, y in zip(r0.coords, formula))
                  and all(abs(x + y) < 1e-10 for x, y in zip(r1.coords, formula)))
            ok = ok and (r0 * r0).close_to(a) and (r1 * r1).close_to(a)
        res.check(f"sqrt({src}) = +-(1 + a)/sqrt 2", ok)
        res.say(f"sqrt({src}) = {roots}")
    sphere = sqrt(H.scalar(-1))
    res.check("sqrt(-1) is the unit sphere of Im H", isinstance(sphere, ImaginarySphere) and sphere.radius_sq == 1)
    res.say(f"sqrt(-1) = {sphere}")
    zero = sqrt(H.zero())
    res.check("sqrt(0) is a double root 0", isinstance(zero, SquareRoots) and zero.multiplicity == 2)
    res.say(f"sqrt(0) = {zero}")
    return res


@example("7.7", "x^2 + 1 is not a combination of the two products with roots i, j")
def _ex_7_7() -> ExampleResult:
    res = ExampleResult("7.7", EXAMPLES["7.7"][0])
    H = quaternions()
    i, j = H["i"], H["j"]
    p12, p21 = given_roots_pair(i, j)
    res.check("p12 = x^2 - ix - xj + k", equals_as_map(p12, _H("x^2 - ix - xj + k")))
    res.check("p21 = x^2 - jx - xi - k", equals_as_map(p21, _H("x^2 - jx - xi - k")))
    res.check("p12 and p21 differ", not equals_as_map(p12, p21))
    res.check("p12(i + j) = ji and p21(i + j) = ij", p12(i + j) == j * i and p21(i + j) == i * j)
    target = _H("x^2 + 1")
    sol = solve_map_combination([p12, p21], target)
    res.check("a1∘p12 + a2∘p21 = x^2 + 1 is infeasible", sol is None)
    res.check("target p12 is feasible", solve_map_combination([p12, p21], p12) is not None)
    res.check("target p12 + p21 is feasible", solve_map_combination([p12, p21], p12 + p21) is not None)
    res.say(f"p12 = {p12}")
    res.say(f"p21 = {p21}")
    res.say(f"x^2 + 1: {'infeasible' if sol is None else 'feasible'}")
    return res


def _division_example(res: ExampleResult, r_src: str, a_src: str, remainder: str, quotient: str,
                      expanded: str | None = None):
    H = quaternions()
    r = _H(r_src)
    a = _H(a_src)
    chain = divide_monic(r, a)
    if expanded is not None:
        res.check(f"{r_src} = {expanded}", equals_as_map(r, _H(expanded)))
    res.check(f"remainder = {remainder}", chain.remainder == _H(remainder))
    res.check("remainder = r(a)", chain.remainder == r(a))
    expect = _H(quotient)
    if not isinstance(expect, SlotTensor):
        raise TypeError("expected quotient must depend on x and have one slot")
    res.check(f"quotient = {quotient}", chain.quotient.equals_as_map(expect))
    res.check("s0 + q∘(x - a) = r", equals_as_map(chain.quotient.substitute(0, _H(f"x - ({a_src})")).to_polynomial()
                                                   + chain.remainder, r))
    res.say(f"r(x) = {r}")
    res.say(f"divisor: x - {a}")
    res.say(f"remainder: {chain.remainder}")
    res.say(f"quotient: {chain.quotient}")
    return chain


@example("9.1", "dividing (x - j)(x - i) by its right factor")
def _ex_9_1() -> ExampleResult:
    res = ExampleResult("9.1", EXAMPLES["9.1"][0])
    _division_example(res, "(x - j)(x - i)", "i", "0", "(x - j)@1", "x^2 - jx - xi - k")
    return res


@example("9.2", "dividing (x - i)(x - j) by its left factor")
def _ex_9_2() -> ExampleResult:
    res = ExampleResult("9.2", EXAMPLES["9.2"][0])
    _division_example(res, "(x - i)(x - j)", "i", "0", "-i@1 - 1@j + 1@i + x@1", "x^2 - ix - xj + k")
    return res


@example("9.3", "a left-sided polynomial with root i and its kernel condition")
def _ex_9_3() -> ExampleResult:
    res = ExampleResult("9.3", EXAMPLES["9.3"][0])
    H = quaternions()
    chain = _division_example(res, "x^2 - ix - jx - k", "i", "0", "1@i + (x - i - j)@1")
    ok = True
    for x in _random_elements(H, 6, 93):
        x0, x1, x2, x3 = x.coords
        printed = MapMatrix.from_rows(H, [[x0, -x1, -x2 + 1, -x3], [x1, x0, -x3, x2 - 1],
                                          [x2 - 1, x3, x0, -x1 + 2], [x3, -x2 + 1, x1 - 2, x0]])
        ok = ok and kernel_condition_matrix(chain, x)[0] == printed
    res.check("matrix of 1@i + (x - i - j)@1 matches the printed template", ok)
    m, d = kernel_condition_matrix(chain, _H("2i"))
    res.say("matrix at x = 2i:")
    res.lines.extend(str(m).splitlines())
    res.say(f"determinant at x = 2i: {d}")
    return res


@example("9.5", "dividing by x - j leaves remainder -2k")
def _ex_9_5() -> ExampleResult:
    res = ExampleResult("9.5", EXAMPLES["9.5"][0])
    _division_example(res, "x^2 - ix - jx - k", "j", "-2k", "1@j + (x - i - j)@1")
    return res


_CUBIC = "(x - j)(x - k)(x - j - k)"
_CUBIC_EXPANDED = "x^3 - x^2 j - x^2 k - j x^2 + jxj + jxk - xkx + xkj - x + ix - k + j"
_CUBIC_QUOTIENT = "j@j + i@1 - x@j - jx@1 - xk@1 + x^2@1"


@example("10.1", "a cubic divided by x - k")
def _ex_10_1() -> ExampleResult:
    res = ExampleResult("10.1", EXAMPLES["10.1"][0])
    _division_example(res, _CUBIC, "k", "0", _CUBIC_QUOTIENT, _CUBIC_EXPANDED)
    return res


@example("10.3", "extracting x - j from the x-dependent quotient")
def _ex_10_3() -> ExampleResult:
    res = ExampleResult("10.3", EXAMPLES["10.3"][0])
    H = quaternions()
    j = H["j"]
    q = divide_monic(_H(_CUBIC), H["k"]).quotient
    res.check("q(j) is the zero tensor", matrix_of(q.at(j)) == MapMatrix.from_rows(H, [[0] * 4] * 4))
    split = _H("-(x - j)@j + (i - jx - xk + x^2)@1")
    res.check("q = -(x - j)@j + (i - jx - xk + x^2)@1", q.equals_as_map(split))
    inner = divide_monic(_H("i - jx - xk + x^2"), j)
    res.check("i - jx - xk + x^2 has remainder 0 at x = j", not inner.remainder)
    res.check("inner quotient = -j@1 - 1@k + 1@j + x@1", inner.quotient.equals_as_map(_H("-j@1 - 1@k + 1@j + x@1")))
    merged_ok = q.equals_as_map(_H("(-j(x - j) - (x - j)k + x(x - j))@1"))
    res.say(f"q(x) = {q}")
    res.say(f"inner quotient: {inner.quotient}")
    res.say(f"merged single-tail form reproduces q: {merged_ok}")
    return res


@example("10.4", "a two-factor representation of the cubic")
def _ex_10_4() -> ExampleResult:
    res = ExampleResult("10.4", EXAMPLES["10.4"][0])
    H = quaternions()
    j, k = H["j"], H["k"]
    r = _H(_CUBIC)
    chain = factor_chain(r, [j, k])
    res.check("chain is complete", chain.complete and not any(chain.remainders))
    pts = _random_elements(H, 20, 104)
    res.check("chain reconstructs r at 20 sample points", all(chain.evaluate(x) == r(x) for x in pts))
    res.check("chain reconstructs r as a map", equals_as_map(chain.reconstruct(), r))
    corrected = _H("-j@1@1 - 1@k@1 + 1@j@1 + x@1@1 - 1@1@j")
    res.check("core = -j@1@1 - 1@k@1 + 1@j@1 + x@1@1 - 1@1@j", chain.core.equals_as_map(corrected))
    printed = _H("-j@1@1 - 1@k@1 + 1@j@1 + x@1@1")
    rebuilt = printed.substitute(1, _H("x - k")).substitute(0, _H("x - j")).to_polynomial()
    printed_ok = equals_as_map(rebuilt, r)
    res.check("printed core rebuilds (x - j)(x - k)(x - k)", equals_as_map(rebuilt, _H("(x - j)(x - k)(x - k)")))
    res.say(f"r(x) = {chain}")
    res.say(f"printed core without -1@1@j reproduces r: {printed_ok}")
    return res


_OCT_R = "((x - j)(x - k))(x - jl)"


@example("11.2", "bracketed division over the octonions")
def _ex_11_2() -> ExampleResult:
    res = ExampleResult("11.2", EXAMPLES["11.2"][0])
    O = octonions()
    i, j, k, l = O["i"], O["j"], O["k"], O["l"]
    jl = O["jl"]
    res.check("i(jl) = -kl", i * jl == -O["kl"])
    r = _O(_OCT_R)
    res.check("r expands to the listed eight bracketed monomials",
              r.equals_as_map(_O("(x^2)x - (x^2)jl - (jx)x - (xk)x + (jx)jl + (xk)jl + ix - i jl")))
    chain = bdivide_monic(r, k)
    res.check("remainder 0", not chain.remainder)
    res.check("degree drops by one per step", chain.trace == (3, 2, 1))
    res.check("kl + i(jl) - ik - j = 0", O["kl"] + i * jl - i * k - j == O.zero())
    res.check("final cancellation adds kl, i(jl), -ik, -j",
              sorted(map(str, chain.residual)) == sorted(map(str, [O["kl"], i * jl, -(i * k), -j])))
    res.check("remainder = r(k)", chain.remainder == r(k))
    full = _O("(jy)(jl - k) + iy + (xy)k - (xy)jl - (jx)y - (xk)y + (x^2)y")
    res.check("quotient = (jy)(jl - k) + iy + (xy)k - (xy)jl - (jx)y - (xk)y + (x^2)y",
              chain.quotient.equals_as_map(full))
    res.check("reconstruction equals r", bchain_apply(chain, k).equals_as_map(r))
    res.say(f"r(x) = {r}")
    res.say(f"remainder: {chain.remainder}")
    res.say(f"quotient: {chain.quotient}")
    res.say(f"hole notation: {paper_notation(chain.quotient)}")
    return res


@example("11.3", "a two-slot bracketed factorization")
def _ex_11_3() -> ExampleResult:
    res = ExampleResult("11.3", EXAMPLES["11.3"][0])
    O = octonions()
    j, k = O["j"], O["k"]
    r = _O(_OCT_R)
    q = bdivide_monic(r, k).quotient
    res.check("quotient = ((x - j)y)(k - jl) + (x^2 - jx - xk + i)y",
              q.equals_as_map(_O("((x - j)y)(k - jl) + (x^2 - jx - xk + i)y")))
    inner = bdivide_monic(_O("x^2 - jx - xk + i"), j)
    res.check("x^2 - jx - xk + i has remainder 0 at x = j", not inner.remainder)
    res.check("inner quotient = y(j - k) + (x - j)y", inner.quotient.equals_as_map(_O("y(j - k) + (x - j)y")))
    chain = bfactor_chain(r, [j, k])
    res.check("two-slot chain is complete", chain.complete and not chain.remainder)
    res.check("core = (y1 y2)(k - jl) + (y1(j - k))y2 + ((x - j)y1)y2",
              chain.quotient.equals_as_map(_O("(y1 y2)(k - jl) + (y1(j - k))y2 + ((x - j)y1)y2")))
    pts = _random_elements(O, 20, 113)
    res.check("chain reconstructs r at 20 sample points", all(chain.evaluate(x) == r(x) for x in pts))
    res.say(f"r(x) = {chain}")
    res.say(f"hole notation: {paper_notation(chain.quotient)}")
    return res


# driver ------------------------------------------------------------------------------
def load_golden() -> dict[str, list[str]]:
    text = resources.files("ncpoly").joinpath("data/paper_examples.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class ExampleRun:
    result: ExampleResult
    expected: list[str] | None
    diff: list[str]

    @property
    def ok(self) -> bool:
        return self.result.passed and self.expected is not None and not self.diff


def run_example(id: str, golden: dict[str, list[str]] | None = None) -> ExampleRun:
    if id not in EXAMPLES:
        raise KeyError(id)
    result = EXAMPLES[id][1]()
    golden = load_golden() if golden is None else golden
    expected = golden.get(id)
    diff: list[str] = []
    if expected is None:
        diff.append("no stored output for this example")
    else:
        import difflib

        diff = [line for line in difflib.unified_diff(expected, result.lines, "expected", "actual", lineterm="")]
    return ExampleRun(result, expected, diff)
