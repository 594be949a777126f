from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import H, O, nonzero_quaternion, octonion, quaternion
from oracles import coords, oct_mul, quat_mul
from ncpoly.algebra import (AlgebraError, AlgebraMismatchError, FloatElement, ImaginarySphere, Q,
                            SquareRoots, algebra_by_name, complexes, reals, sqrt)

NAMES_H = ["1", "i", "j", "k"]
NAMES_O = ["1", "i", "j", "k", "l", "il", "jl", "kl"]


def test_quaternion_table_examples():
    assert H["i"] * H["j"] == H["k"]
    assert H["j"] * H["k"] == H["i"]
    assert H["k"] * H["j"] == -H["i"]
    assert H["k"] * H["i"] == H["j"]
    for name in ("i", "j", "k"):
        assert H[name] * H[name] == H.scalar(-1)


def test_octonion_table_examples():
    assert O["i"] * O["jl"] == -O["kl"]
    assert O["j"] * O["j"] == O.scalar(-1)
    assert O.one() * O["il"] == O["il"]


@pytest.mark.parametrize("algebra,names,oracle", [(H, NAMES_H, quat_mul), (O, NAMES_O, oct_mul)])
def test_full_table_matches_oracle(algebra, names, oracle):
    for a in names:
        for b in names:
            assert coords(algebra[a] * algebra[b]) == oracle(coords(algebra[a]), coords(algebra[b]))


@pytest.mark.parametrize("algebra", [reals(), complexes(), H, O])
def test_unit_constants(algebra):
    for p, q, k, c in algebra.products:
        if p == 0:
            assert (q, c) == (k, 1)
        if q == 0:
            assert (p, c) == (k, 1)


def test_presets_by_name():
    assert [algebra_by_name(n).dim for n in ("R", "C", "H", "O")] == [1, 2, 4, 8]
    assert algebra_by_name("H").basis_names[0] == "1"
    with pytest.raises(AlgebraError):
        algebra_by_name("S")


def test_element_examples():
    i, j = H["i"], H["j"]
    assert i.inverse() == -i
    assert (i - j) * (i - j) == H.scalar(-2)
    assert (H.one() + i + j + H["k"]).norm_sq() == 4
    assert H.zero().coords == (0, 0, 0, 0)
    with pytest.raises(AlgebraError):
        H.zero().inverse()
    with pytest.raises(AlgebraMismatchError):
        H["i"] + O["i"]


def test_rationals_stay_exact():
    third = H.scalar(Q(1, 3))
    assert (third * 3) == H.one()
    assert Q(2, 4) == Q(1, 2) and Q(2, 4).denominator == 2
    assert Q(3, -6).denominator > 0


@given(quaternion, quaternion)
def test_product_matches_oracle_h(a, b):
    assert coords(a * b) == quat_mul(coords(a), coords(b))


@given(octonion, octonion)
def test_product_matches_oracle_o(a, b):
    assert coords(a * b) == oct_mul(coords(a), coords(b))


@given(quaternion, quaternion, quaternion)
def test_quaternions_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


def test_octonion_associativity_witness():
    i, j, l = O["i"], O["j"], O["l"]
    assert (i * j) * l != i * (j * l)
    assert (i * j) * l == O["kl"] and i * (j * l) == -O["kl"]


@given(octonion, octonion)
def test_octonions_alternative(a, b):
    assert (a * a) * b == a * (a * b)
    assert (a * b) * b == a * (b * b)


@given(st.one_of(quaternion, octonion))
def test_unit_law(a):
    one = a.algebra.one()
    assert one * a == a and a * one == a


@given(nonzero_quaternion, quaternion)
def test_inverse_and_composition_law_h(a, b):
    assert a * a.inverse() == H.one() == a.inverse() * a
    assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


@given(octonion.filter(bool), octonion)
def test_inverse_and_composition_law_o(a, b):
    assert a * a.inverse() == O.one() == a.inverse() * a
    assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


@given(quaternion)
def test_conjugate_gives_norm(a):
    assert a * a.conj() == H.scalar(a.norm_sq())
    assert a.re + a.im == a


def test_sqrt_of_i():
    roots = sqrt(H["i"])
    assert isinstance(roots, SquareRoots)
    s = 1 / math.sqrt(2)
    expected = [s, s, 0, 0]
    r0, r1 = roots.roots
    assert all(abs(x - y) < 1e-10 for x, y in zip(r0.coords, expected))
    assert all(abs(x + y) < 1e-10 for x, y in zip(r1.coords, expected))


def test_sqrt_special_cases():
    zero = sqrt(H.zero())
    assert isinstance(zero, SquareRoots) and zero.multiplicity == 2
    sphere = sqrt(H.scalar(-1))
    assert isinstance(sphere, ImaginarySphere) and sphere.radius_sq == 1
    assert sphere.contains(H["j"]) and not sphere.contains(H.one())
    point = sphere.point(H["i"] + H["k"])
    assert (point * point).close_to(H.scalar(-1))
    assert isinstance(sqrt(H.scalar(-4)), ImaginarySphere)
    with pytest.raises(AlgebraError):
        sqrt(O["i"])


@given(quaternion.filter(lambda a: not (a.is_real() and a.re <= 0)))
def test_sqrt_roots_square_back(a):
    roots = sqrt(a)
    assert isinstance(roots, SquareRoots) and len(roots.roots) == 2
    for r in roots.roots:
        assert abs(r.coords[0]) > 0
        assert (r * r).close_to(a, 1e-10)


def test_float_element_from_exact():
    f = FloatElement.from_exact(H["i"] * Q(1, 2))
    assert f.coords == (0.0, 0.5, 0.0, 0.0)
    assert f.close_to(H["i"] * Fraction(1, 2))
