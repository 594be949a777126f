"""Independent reference implementations used only by the tests.

Quaternion products come from sympy's Quaternion class; octonions are built
from pairs of sympy quaternions with ``(a, b)(c, d) = (ac - d*b, da + bc*)``
so the tests never reuse the package's structure constants.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.algebras.quaternion import Quaternion


def to_sympy_q(coords) -> Quaternion:
    return Quaternion(*(sympy.Rational(str(c)) for c in coords))


def from_sympy_q(q: Quaternion) -> list[Fraction]:
    return [Fraction(str(v)) for v in (q.a, q.b, q.c, q.d)]


def quat_mul(x, y) -> list[Fraction]:
    return from_sympy_q(to_sympy_q(x) * to_sympy_q(y))


def _conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a, -q.b, -q.c, -q.d)


def oct_mul(x, y) -> list[Fraction]:
    """Octonion product in the basis 1, i, j, k, l, il, jl, kl."""
    a, b = to_sympy_q(x[:4]), to_sympy_q(x[4:])
    c, d = to_sympy_q(y[:4]), to_sympy_q(y[4:])
    first = a * c - _conj(d) * b
    second = d * a + b * _conj(c)
    return from_sympy_q(first) + from_sympy_q(second)


def coords(e) -> list[Fraction]:
    return [Fraction(str(c)) for c in e.coords]


def mul_oracle(algebra_name: str):
    return quat_mul if algebra_name == "H" else oct_mul


def word_oracle(algebra_name: str, factors, args) -> list[Fraction]:
    """``f0 a1 f1 ... an fn`` multiplied strictly left to right."""
    m = mul_oracle(algebra_name)
    acc = coords(factors[0])
    for a, f in zip(args, factors[1:]):
        acc = m(m(acc, coords(a)), coords(f))
    return acc


def rref_oracle(rows):
    mat = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in rows])
    r, pivots = mat.rref()
    return [[Fraction(str(v)) for v in r.row(n)] for n in range(r.rows)], list(pivots)


def det_oracle(rows) -> Fraction:
    mat = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in rows])
    return Fraction(str(mat.det()))
