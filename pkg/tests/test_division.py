from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from conftest import H, O, random_element, random_polynomial, seeds
from ncpoly.algebra import NonAssociativeError
from ncpoly.division import (ChainShapeError, QuotientChain, chain_apply, divide_linear, divide_monic,
                             factor_chain, kernel_condition_matrix, verify_division)
from ncpoly.parser import parse_value
from ncpoly.poly import Polynomial, equals_as_map
from ncpoly.tensor import MapMatrix, SingularTensorError, TensorSum, matrix_of
from ncpoly.xtensor import SlotTensor

i, j, k, one = H["i"], H["j"], H["k"], H.one()
x = Polynomial.variable(H)


def P(src: str):
    value = parse_value(src, "H")
    if isinstance(value, TensorSum):
        return SlotTensor.from_tensor(value)
    return Polynomial.constant(value) if not isinstance(value, (Polynomial, SlotTensor)) else value


CUBIC = "(x - j)(x - k)(x - j - k)"


@pytest.mark.parametrize("r,a,remainder,quotient", [
    ("x^2 - jx - xi - k", i, H.zero(), "(x - j)@1"),
    ("(x - i)(x - j)", i, H.zero(), "-i@1 - 1@j + 1@i + x@1"),
    ("x^2 - ix - jx - k", i, H.zero(), "1@i + (x - i - j)@1"),
    ("x^2 - ix - jx - k", j, k * -2, "1@j + (x - i - j)@1"),
    (CUBIC, k, H.zero(), "j@j + i@1 - x@j - jx@1 - xk@1 + x^2@1"),
])
def test_divide_monic_examples(r, a, remainder, quotient):
    r = P(r)
    chain = divide_monic(r, a)
    assert chain.remainder == remainder
    assert chain.quotient.equals_as_map(P(quotient))
    assert equals_as_map(chain_apply(chain, x - a), r)
    assert verify_division(r, chain, x - a)


def test_constant_division():
    chain = divide_monic(Polynomial.constant(i * 3), j)
    assert chain.remainder == i * 3 and chain.parts == ()
    assert equals_as_map(chain_apply(chain, x - j), Polynomial.constant(i * 3))


def test_division_rejects_octonions():
    with pytest.raises(NonAssociativeError):
        divide_monic(Polynomial.variable(O), O["i"])


def test_divide_linear_examples():
    r = P("x^2 + 1")
    plain = divide_linear(r, TensorSum.identity(H), -i)
    assert plain.remainder == divide_monic(r, i).remainder == H.zero()
    assert plain.quotient.equals_as_map(divide_monic(r, i).quotient)
    divisor = Polynomial(H, {1: TensorSum.pure(H.scalar(2), one)}) - i * 2
    halved = divide_linear(r, TensorSum.pure(H.scalar(2), one), -i * 2)
    assert equals_as_map(chain_apply(halved, divisor), r)
    assert halved.quotient.equals_as_map(P("1/2 (x@1 + 1@i)"))
    with pytest.raises(SingularTensorError):
        divide_linear(r, TensorSum.pure(i, one) - TensorSum.pure(one, i), k)


def test_cli_divide_example():
    assert divide_monic(P("x*x + 1"), H.scalar(5)).remainder == H.scalar(26)


def test_factor_chain_cubic():
    r = P(CUBIC)
    chain = factor_chain(r, [j, k])
    assert chain.complete and chain.remainders == (H.zero(), H.zero())
    assert chain.core.equals_as_map(P("-j@1@1 - 1@k@1 + 1@j@1 + x@1@1 - 1@1@j"))
    assert equals_as_map(chain.reconstruct(), r)
    rng = random.Random(7)
    for _ in range(20):
        pt = random_element(rng, H, 0.9)
        assert chain.evaluate(pt) == r(pt)


def test_factor_chain_trivial_and_single():
    a = i + k * 2
    chain = factor_chain(x - a, [a])
    assert chain.remainders == (H.zero(),)
    assert chain.core.equals_as_map(P("1@1"))
    chain = factor_chain(P("x^2 - ix - jx - k"), [j])
    assert chain.remainders[0] == k * -2
    assert chain.core.equals_as_map(P("1@j + (x - i - j)@1"))


def test_factor_chain_partial_result():
    chain = factor_chain(P("x^2 - ix - jx - k"), [k, i])
    assert not chain.complete and "remainder" in chain.message
    assert chain.roots == (i,)
    with pytest.raises(Exception):
        factor_chain(x, [])


def test_kernel_condition_matrix():
    chain = divide_monic(P("x^2 - ix - jx - k"), i)
    m, d = kernel_condition_matrix(chain, i * 2)
    template = MapMatrix.from_rows(H, [[0, -2, 1, 0], [2, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]])
    assert m == template and d == template.det()
    m_i, d_i = kernel_condition_matrix(chain, i)
    assert m_i == matrix_of(TensorSum.pure(one, i) + TensorSum.pure(-j, one))
    assert d_i == m_i.det()
    ident = QuotientChain(H, H.zero(), (TensorSum.identity(H),))
    assert kernel_condition_matrix(ident, j)[1] == 1
    with pytest.raises(ChainShapeError):
        kernel_condition_matrix(divide_monic(P("x^2 - ix - jx - k"), j), i)


@settings(max_examples=25)
@given(seeds)
def test_division_identity(seed):
    rng = random.Random(seed)
    r = random_polynomial(rng)
    a = random_element(rng, H)
    chain = divide_monic(r, a)
    assert equals_as_map(chain_apply(chain, x - a), r)
    assert chain.remainder == r(a)
    assert len(chain.parts) == max(r.formal_degree, 0)
    assert all(part.rank == n + 2 for n, part in enumerate(chain.parts))
    pt = random_element(rng, H, 0.9)
    assert chain.evaluate(pt, pt - a) == r(pt)


@settings(max_examples=15)
@given(seeds)
def test_divide_linear_identity(seed):
    rng = random.Random(seed)
    r = random_polynomial(rng, max_degree=3)
    p1 = TensorSum(H, 2, ((random_element(rng, H, 0.8) or one, one), (one, random_element(rng, H))))
    p0 = random_element(rng, H)
    if not matrix_of(p1).det():
        with pytest.raises(SingularTensorError):
            divide_linear(r, p1, p0)
        return
    chain = divide_linear(r, p1, p0)
    divisor = Polynomial(H, {1: p1}) + p0
    assert equals_as_map(chain_apply(chain, divisor), r)


@settings(max_examples=15)
@given(seeds)
def test_factor_chain_of_products(seed):
    rng = random.Random(seed)
    a1, a2 = random_element(rng, H), random_element(rng, H)
    c = random_element(rng, H) or one
    r = (x - random_element(rng, H)) * c * (x - a1) * (x - a2)
    chain = factor_chain(r, [a1, a2])
    assert chain.complete
    for _ in range(5):
        pt = random_element(rng, H, 0.9)
        assert chain.evaluate(pt) == r(pt)
    assert equals_as_map(chain.reconstruct(), r)
