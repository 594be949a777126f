"""Division with remainder by linear divisors over an associative algebra.

``divide_monic(r, a)`` writes ``r(x) = s0 + (q0 + q1(x) + ... + q_{k-1}(x)) ∘ (x - a)``
where ``q_i(x) ∘ y = sum_s (t_s0 x t_s1 ... x t_si) y c_s``. Each step peels
the rightmost ``x`` of every top-degree pure tensor, so the top degree drops
by one per step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraError, AlgebraSpec, Element, _check_same
from .multilinear import X
from .poly import DEFAULT_DEGREE_CAP, Polynomial, equals_as_map
from .tensor import (MapMatrix, SingularTensorError, TensorSum, apply_linear, basis_expansion,
                     inverse_tensor, is_nonsingular, matrix_of)
from .xtensor import SlotTensor, Word

log = logging.getLogger(__name__)


class ChainShapeError(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class QuotientChain:
    """Remainder ``s0`` and quotient parts ``q_i`` (rank ``i + 2``) of a division.

    The factors of a part term ``(t0, ..., ti, c)`` act on the divisor value
    ``y`` as ``(t0 x t1 ... x ti) y c``.
    """

    algebra: AlgebraSpec
    remainder: Element
    parts: tuple[TensorSum, ...] = ()
    divisor: Polynomial | None = None

    @property
    def raw_quotient(self) -> SlotTensor:
        """The quotient with the parts' terms exactly as produced by the division."""
        words = []
        for i, part in enumerate(self.parts):
            for term in part.terms:
                words.append(Word(term, (X,) * i + (0,)))
        return SlotTensor(self.algebra, 1, tuple(words))

    @property
    def quotient(self) -> SlotTensor:
        """The quotient with like basis words merged, for display and comparison."""
        return self.raw_quotient.combined()

    def at(self, x: Element) -> TensorSum:
        """The rank-2 tensor ``q0 + q1(x) + ...`` at a point."""
        return self.raw_quotient.at(x)

    def evaluate(self, x: Element, divisor_value: Element) -> Element:
        return self.remainder + self.raw_quotient.evaluate(x, [divisor_value])

    def __str__(self) -> str:
        q = str(self.quotient)
        return f"{self.remainder} + ({q}) ∘ ({self.divisor})" if self.divisor is not None else \
            f"{self.remainder} + ({q}) ∘ p(x)"


def _monic(a: Element) -> Polynomial:
    return Polynomial.variable(a.algebra) - a


def divide_monic(r: Polynomial, a: Element) -> QuotientChain:
    """Divide ``r`` by ``x - a``; the remainder equals ``r(a)``."""
    alg = r.algebra
    _check_same(alg, a.algebra)
    alg.require_associative("division")
    work: dict[int, list[tuple[Element, ...]]] = {n: list(t.terms) for n, t in r.components.items()}
    top = max(work, default=0)
    parts: list[list[tuple[Element, ...]]] = [[] for _ in range(top)]
    for deg in range(top, 0, -1):
        for term in work.get(deg, ()):
            # q term keeps the factors; the last one multiplies after the divisor value
            parts[deg - 1].append(term)
            # r - q∘(x - a): the x branch cancels the term, the -a branch adds q∘a
            folded = term[:-2] + (term[-2] * a * term[-1],)
            work.setdefault(deg - 1, []).append(folded)
        work.pop(deg, None)
    remainder = alg.zero()
    for (c,) in work.get(0, ()):
        remainder = remainder + c
    return QuotientChain(alg, remainder, tuple(TensorSum(alg, i + 2, tuple(ts)) for i, ts in enumerate(parts)),
                         _monic(a))


def chain_apply(c: QuotientChain, p: Polynomial) -> Polynomial:
    """``s0 + q(x) ∘ p(x)`` expanded into an ordinary polynomial."""
    _check_same(c.algebra, p.algebra)
    return c.raw_quotient.substitute(0, p).to_polynomial() + c.remainder


def divide_linear(r: Polynomial, p1: TensorSum, p0: Element) -> QuotientChain:
    """Divide ``r`` by ``p(x) = p1∘x + p0`` for a nonsingular ``p1``.

    Uses ``p(x) = p1∘(x + p1^{-1}∘p0)``: divide by ``x - a`` with
    ``a = -p1^{-1}∘p0`` and fold ``p1^{-1}`` into every quotient term.
    """
    if p1.rank != 2:
        raise AlgebraError("the linear part of the divisor must be a rank-2 tensor")
    if not is_nonsingular(p1):
        raise SingularTensorError(f"singular linear divisor: {p1} has zero determinant")
    inv = inverse_tensor(p1)
    a = -apply_linear(inv, p0)
    monic = divide_monic(r, a)
    parts = []
    for i, part in enumerate(monic.parts):
        terms = []
        for term in part.terms:
            for u, v in inv.terms:
                terms.append(term[:-2] + (term[-2] * u, v * term[-1]))
        parts.append(TensorSum(r.algebra, i + 2, tuple(terms)))
    divisor = Polynomial(r.algebra, {1: p1}) + p0
    return QuotientChain(r.algebra, monic.remainder, tuple(parts), divisor)


# factor chains --------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class FactorChain:
    """``r(x) = remainders[0] + core ∘ (x - roots[0], ..., x - roots[m-1])``.

    ``remainders[t]`` is the remainder of stage ``t`` (stage 0 divides by the
    last root). When a stage cannot divide, ``complete`` is false, ``core``
    and ``roots`` describe the stages that succeeded, and ``message`` says why.
    """

    algebra: AlgebraSpec
    remainders: tuple[Element, ...]
    core: SlotTensor
    roots: tuple[Element, ...]
    complete: bool = True
    message: str = ""

    @property
    def factors(self) -> list[Polynomial]:
        return [_monic(a) for a in self.roots]

    def evaluate(self, x: Element) -> Element:
        return self.remainders[0] + self.core.evaluate(x, [x - a for a in self.roots])

    def reconstruct(self) -> Polynomial:
        t = self.core
        for a in reversed(self.roots):
            t = t.substitute(t.slots - 1, _monic(a))
        return t.to_polynomial() + self.remainders[0]

    def __str__(self) -> str:
        args = ", ".join(str(f) for f in self.factors)
        head = "" if not self.remainders[0] else f"{self.remainders[0]} + "
        return f"{head}({self.core}) ∘ ({args})"


def factor_chain(r: Polynomial, roots: Sequence[Element]) -> FactorChain:
    """Peel ``x - roots[-1]``, then ``x - roots[-2]``, ... off ``r``.

    After the first division the quotient is grouped by its x-free tail
    (expanded in the basis); every x-dependent head polynomial is divided by
    the next factor and must leave remainder zero.
    """
    if not roots:
        raise AlgebraError("factor_chain needs at least one root")
    alg = r.algebra
    first = divide_monic(r, roots[-1])
    core = first.quotient
    remainders = [first.remainder]
    done = [roots[-1]]
    for a in reversed(roots[:-1]):
        groups: dict[tuple[int, ...], list[tuple[Element, ...]]] = {}
        for w in core.words:
            m0 = w.args.index(0)
            if any(arg == X for arg in w.args[m0:]):
                raise ChainShapeError("x appears after the first divisor slot")
            head, tail = w.factors[:m0 + 1], w.factors[m0 + 1:]
            for coeff, key in basis_expansion(tail):
                groups.setdefault(key, []).append((head[0] * coeff,) + head[1:])
        words = []
        failed = None
        for key, heads in groups.items():
            residual = Polynomial.from_terms(alg, heads)
            stage = divide_monic(residual, a)
            if stage.remainder:
                failed = (residual, stage.remainder)
                break
            tail = tuple(alg.basis(n) for n in key)
            for w in stage.quotient.words:
                words.append(Word(w.factors + tail, w.args + tuple(range(1, core.slots + 1))))
        if failed is not None:
            residual, rem = failed
            msg = (f"stage dividing by (x - {a}) stopped: residual {residual} "
                   f"leaves remainder {rem}")
            log.info(msg)
            return FactorChain(alg, tuple(remainders), core, tuple(reversed(done)), False, msg)
        core = SlotTensor(alg, core.slots + 1, tuple(words))
        remainders.append(alg.zero())
        done.append(a)
    return FactorChain(alg, tuple(remainders), core.combined(), tuple(reversed(done)))


def kernel_condition_matrix(chain: QuotientChain, x: Element) -> tuple[MapMatrix, object]:
    """Matrix and determinant of ``M(x)`` where ``r(x) = M(x) ∘ (x - a)``.

    A second root ``x`` of ``r`` needs ``x - a`` in the kernel of ``M(x)``,
    hence a zero determinant.
    """
    if chain.remainder:
        raise ChainShapeError("kernel condition needs a chain with zero remainder")
    m = matrix_of(chain.at(x))
    return m, m.det()


def verify_division(r: Polynomial, chain: QuotientChain, divisor: Polynomial,
                    cap: int = DEFAULT_DEGREE_CAP) -> bool:
    return equals_as_map(chain_apply(chain, divisor), r, cap)
