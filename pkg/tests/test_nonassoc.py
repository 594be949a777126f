from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from conftest import O, octonion, random_bracket_polynomial, random_element, random_tree, seeds
from oracles import coords, oct_mul
from ncpoly.algebra import AlgebraError, Q
from ncpoly.nonassoc import (NONASSOC_WITNESS, VAR, BracketPolynomial, Const, Mul, Slot, bchain_apply,
                             bdivide_monic, bevaluate, bfactor_chain, btree_eval, degree, format_bracket,
                             normalize, paper_notation)
from ncpoly.parser import parse_value

i, j, k, l, one = O["i"], O["j"], O["k"], O["l"], O.one()
jl, kl = O["jl"], O["kl"]
R_SRC = "((x - j)(x - k))(x - jl)"


def B(src: str) -> BracketPolynomial:
    value = parse_value(src, "O")
    return value if isinstance(value, BracketPolynomial) else BracketPolynomial.constant(value)


def tree_oracle(t, x, slots=()):
    if isinstance(t, Const):
        return coords(t.value)
    if t == VAR:
        return coords(x)
    if isinstance(t, Slot):
        return coords(slots[t.index])
    return oct_mul(tree_oracle(t.left, x, slots), tree_oracle(t.right, x, slots))


def points(rng: random.Random, n: int):
    return [random_element(rng, O, 0.7) for _ in range(n)]


def test_witness_triple():
    a, b, c = (O[n] for n in NONASSOC_WITNESS)
    assert (a * b) * c != a * (b * c)
    assert i * jl == -kl


def test_btree_eval_examples():
    left = Mul(Mul(Const(i), VAR), Const(jl))
    right = Mul(Const(i), Mul(VAR, Const(jl)))
    assert btree_eval(left, j) != btree_eval(right, j)
    r = B(R_SRC)
    assert not r(j)
    for c, t in B("(x^2)x - (jx)(x jl) + x i").terms:
        assert not btree_eval(t, O.zero())
    with pytest.raises(AlgebraError):
        btree_eval(Slot(0), i)


def test_normalize():
    assert normalize(Mul(Const(-j), VAR)) == (Q(-1), Mul(Const(j), VAR))
    assert normalize(Mul(Const(one), VAR)) == (Q(1), VAR)
    assert normalize(Mul(Const(i), Const(j))) == (Q(1), Const(k))
    assert normalize(Mul(Const(O.zero()), VAR))[1] is None


def test_slots_must_be_distinct():
    with pytest.raises(AlgebraError):
        BracketPolynomial(O, ((Q(1), Mul(Slot(0), Slot(0))),), 1)
    with pytest.raises(AlgebraError):
        BracketPolynomial(O, ((Q(1), Slot(1)),), 1)


def test_bracketing_changes_the_map():
    assert not B("(ix)jl").equals_as_map(B("i(x jl)"))
    assert B("(ix)j").equals_as_map(B("(ix)j + 0"))


def test_division_example():
    r = B(R_SRC)
    assert r.equals_as_map(B("(x^2)x - (x^2)jl - (jx)x - (xk)x + (jx)jl + (xk)jl + ix - i jl"))
    chain = bdivide_monic(r, k)
    assert not chain.remainder and chain.trace == (3, 2, 1)
    assert kl + i * jl - i * k - j == O.zero()
    assert sorted(map(str, chain.residual)) == sorted(map(str, [kl, i * jl, -(i * k), -j]))
    assert chain.quotient.equals_as_map(B("((x - j)y)(k - jl) + (x^2 - jx - xk + i)y"))
    assert bchain_apply(chain, k).equals_as_map(r)
    assert paper_notation(B("(x^2)y")) == "(x^2)(⊗1)"


def test_trivial_division_and_apply():
    a = i + kl
    chain = bdivide_monic(B("x") - a, a)
    assert not chain.remainder
    assert chain.quotient.equals_as_map(BracketPolynomial.slot(O, 0, 1))
    empty = bdivide_monic(BracketPolynomial.constant(j * 3), k)
    assert empty.remainder == j * 3 and not empty.quotient.terms
    assert bchain_apply(empty, k).equals_as_map(BracketPolynomial.constant(j * 3))
    squared = bdivide_monic(B("(x^2)x"), k)
    head = BracketPolynomial(O, ((Q(1), Mul(Mul(VAR, VAR), Slot(0))),), 1)
    partial = type(squared)(O, O.zero(), head, (k,))
    assert bchain_apply(partial, k).equals_as_map(B("(x^2)x - (x^2)k"))


def test_factor_chain_example():
    r = B(R_SRC)
    inner = bdivide_monic(B("x^2 - jx - xk + i"), j)
    assert not inner.remainder
    assert inner.quotient.equals_as_map(B("y(j - k) + (x - j)y"))
    chain = bfactor_chain(r, [j, k])
    assert chain.complete and not chain.remainder
    assert chain.quotient.equals_as_map(B("(y1 y2)(k - jl) + (y1(j - k))y2 + ((x - j)y1)y2"))
    assert not chain.quotient.equals_as_map(B("y1(y2(k - jl)) + (y1(j - k))y2 + ((x - j)y1)y2"))
    assert chain.reconstruct().equals_as_map(r)
    with pytest.raises(AlgebraError):
        bfactor_chain(r, [k])


def test_factor_chain_commuting_instance():
    x = B("x")
    r = (x - 2) * (x - 3)
    chain = bfactor_chain(r, [O.scalar(2), O.scalar(3)])
    assert chain.complete
    assert chain.quotient.equals_as_map(BracketPolynomial(O, ((Q(1), Mul(Slot(0), Slot(1))),), 2))


def test_factor_chain_partial():
    chain = bfactor_chain(B(R_SRC), [i, k])
    assert not chain.complete and chain.roots == (k,)
    assert "remainder" in chain.message


def test_format_round_trip():
    chain = bfactor_chain(B(R_SRC), [j, k])
    text = format_bracket(chain.quotient)
    assert B(text).equals_as_map(chain.quotient)


@given(seeds)
def test_eval_matches_oracle(seed):
    rng = random.Random(seed)
    t = random_tree(rng, O, rng.randint(0, 3))
    for pt in points(rng, 3):
        assert coords(btree_eval(t, pt)) == tree_oracle(t, pt)


@settings(max_examples=20)
@given(seeds)
def test_division_identity(seed):
    rng = random.Random(seed)
    r = random_bracket_polynomial(rng)
    a = random_element(rng, O)
    chain = bdivide_monic(r, a)
    assert chain.remainder == r(a)
    assert sum(chain.residual, O.zero()) == chain.remainder
    assert list(chain.trace) == sorted(set(chain.trace), reverse=True)
    back = bchain_apply(chain, a)
    for pt in points(rng, 20):
        assert back(pt) == r(pt)
        assert chain.evaluate(pt) == r(pt)
    assert back.equals_as_map(r)


@given(octonion, octonion)
def test_product_brackets_kept(a, b):
    x = B("x")
    p = (x - a) * (x - b)
    for c, t in p.terms:
        assert degree(t) <= 2
    assert not bevaluate(p, b)
    assert bevaluate(p, a) == O.zero()
