from __future__ import annotations

import random

import pytest
from hypothesis import given

from conftest import H, quaternion, random_element, seeds
from ncpoly.algebra import AlgebraError
from ncpoly.ore import (LeftPolynomial, from_polynomial, left_eval, left_mul, solve_left_linear,
                        weierstrass_step_check)
from ncpoly.poly import equals_as_map, evaluate, mul

i, j, k, one = H["i"], H["j"], H["k"], H.one()
L = LeftPolynomial.of(-i, one)
R = LeftPolynomial.of(-j, one)


def random_left(rng: random.Random, max_degree: int = 3) -> LeftPolynomial:
    return LeftPolynomial(H, tuple(random_element(rng, H) for _ in range(rng.randint(1, max_degree + 1))))


def test_left_eval_examples():
    assert not left_eval(L, i)
    P = LeftPolynomial.of(k, -(i + j), one)
    assert left_eval(P, i + j) == k
    assert left_eval(LeftPolynomial.of(j * 3), i) == j * 3


def test_left_mul_examples():
    assert left_mul(L, R) == LeftPolynomial.of(k, -(i + j), one)
    p = LeftPolynomial.of(i, j, k)
    assert left_mul(LeftPolynomial.of(one), p) == p
    tensor_product = mul(L.to_polynomial(), R.to_polynomial())
    assert not evaluate(tensor_product, i)
    assert left_eval(left_mul(L, R), i) == k * 2


def test_trailing_zeros_trimmed():
    p = LeftPolynomial(H, (i, one, H.zero(), H.zero()))
    assert p.degree == 1 and p == LeftPolynomial.of(i, one)
    assert LeftPolynomial(H, ()).degree == -1


def test_format():
    assert str(left_mul(L, R)) == "x^2 + (-i - j)x + k"


def test_weierstrass_step():
    rep = weierstrass_step_check()
    assert rep.point == i + j
    assert rep.p_value == k
    assert rep.p1_value == (k * (j - i) - i) * i
    assert rep.p1_value == H.scalar(2) + k
    assert rep.differs


def test_solve_left_linear_examples():
    sol = solve_left_linear(one, -i)
    assert sol.kind == "unique" and sol.particular == i
    assert solve_left_linear(H.zero(), one).kind == "none"
    everything = solve_left_linear(H.zero(), H.zero())
    assert everything.kind == "affine" and len(everything.kernel_basis) == 4
    assert everything.contains(i * 7 - k)


@given(quaternion.filter(bool), quaternion)
def test_solve_left_linear_sound(a1, a0):
    x = solve_left_linear(a1, a0).particular
    assert x * a1 + a0 == H.zero()
    y = solve_left_linear(a1, a0, side="left").particular
    assert a1 * y + a0 == H.zero()


@given(seeds)
def test_left_mul_ring_laws(seed):
    rng = random.Random(seed)
    p, q, r = random_left(rng), random_left(rng), random_left(rng)
    assert left_mul(p, q + r) == left_mul(p, q) + left_mul(p, r)
    assert left_mul(q + r, p) == left_mul(q, p) + left_mul(r, p)
    assert left_mul(left_mul(p, q), r) == left_mul(p, left_mul(q, r))
    if p.coeffs and q.coeffs and p.coeffs[-1] * q.coeffs[-1]:
        assert left_mul(p, q).degree == p.degree + q.degree


@given(seeds, quaternion)
def test_to_polynomial_round_trip(seed, x):
    p = random_left(random.Random(seed))
    poly = p.to_polynomial()
    assert evaluate(poly, x) == left_eval(p, x)
    assert from_polynomial(poly) == p


def test_evaluation_not_multiplicative():
    assert left_eval(left_mul(L, R), i) != left_eval(L, i) * left_eval(R, i)


def test_from_polynomial_rejects_inner_coefficients():
    with pytest.raises(AlgebraError):
        from_polynomial(mul(L.to_polynomial(), R.to_polynomial()))
    assert equals_as_map(L.to_polynomial(), L.to_polynomial())
