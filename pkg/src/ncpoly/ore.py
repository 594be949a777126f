"""Left-sided polynomials ``p(x) = sum_i p_i x^i`` with the coefficient-convolution product.

Only the untwisted rule ``x a = a x`` (identity endomorphism, zero
derivation) is implemented. The product is then the formal convolution
of coefficient lists, which does *not* commute with evaluation when the
coefficients do not commute with the evaluation point.
"""

from __future__ import annotations

from dataclasses import dataclass
from .algebra import AlgebraError, AlgebraSpec, Element, _check_same
from .poly import Polynomial, _monomial_pieces, evaluate, format_terms, monomial, mul
from .tensor import SolutionSet


@dataclass(frozen=True, eq=False)
class LeftPolynomial:
    algebra: AlgebraSpec
    coeffs: tuple[Element, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coeffs)
        for c in coeffs:
            _check_same(self.algebra, c.algebra)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def of(cls, *coeffs: Element) -> LeftPolynomial:
        """Coefficients from the constant term upward."""
        if not coeffs:
            raise AlgebraError("need at least one coefficient")
        return cls(coeffs[0].algebra, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Element:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.algebra.zero()

    def __add__(self, other: LeftPolynomial) -> LeftPolynomial:
        _check_same(self.algebra, other.algebra)
        n = max(len(self.coeffs), len(other.coeffs))
        return LeftPolynomial(self.algebra, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> LeftPolynomial:
        return LeftPolynomial(self.algebra, tuple(-c for c in self.coeffs))

    def __sub__(self, other: LeftPolynomial) -> LeftPolynomial:
        return self + (-other)

    def __mul__(self, other: LeftPolynomial) -> LeftPolynomial:
        return left_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, LeftPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x: Element) -> Element:
        return left_eval(self, x)

    def to_polynomial(self) -> Polynomial:
        """The same map in the tensor model: ``p_i x^i = (p_i ⊗ 1 ⊗ ... ⊗ 1) ∘ x^i``."""
        one = self.algebra.one()
        out = Polynomial.zero(self.algebra)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + monomial([c] + [one] * i)
        return out

    def __str__(self) -> str:
        one = self.algebra.one()
        pieces = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                pieces.extend(_monomial_pieces([self.coeffs[i]] + [one] * i))
        return format_terms(pieces)


def left_eval(p: LeftPolynomial, x: Element) -> Element:
    _check_same(p.algebra, x.algebra)
    out = p.algebra.zero()
    power = p.algebra.one()
    for c in p.coeffs:
        out = out + c * power
        power = power * x
    return out


def left_mul(p: LeftPolynomial, r: LeftPolynomial) -> LeftPolynomial:
    """Coefficient ``j`` of the product is ``sum_{i<=j} p_i r_{j-i}``."""
    _check_same(p.algebra, r.algebra)
    if not p.coeffs or not r.coeffs:
        return LeftPolynomial(p.algebra, ())
    n = len(p.coeffs) + len(r.coeffs) - 1
    out = []
    for j in range(n):
        acc = p.algebra.zero()
        for i in range(max(0, j - len(r.coeffs) + 1), min(j, len(p.coeffs) - 1) + 1):
            acc = acc + p.coeffs[i] * r.coeffs[j - i]
        out.append(acc)
    return LeftPolynomial(p.algebra, tuple(out))


def from_polynomial(p: Polynomial) -> LeftPolynomial:
    """Read a tensor-model polynomial whose terms are all ``a x ... x`` with real inner factors."""
    alg = p.algebra
    coeffs: dict[int, Element] = {}
    for t in p.terms():
        if not all(f.is_real() for f in t[1:]):
            raise AlgebraError(f"term {t} is not left-sided")
        c = t[0]
        for f in t[1:]:
            c = c * f.re
        n = len(t) - 1
        coeffs[n] = coeffs.get(n, alg.zero()) + c
    top = max(coeffs, default=-1)
    return LeftPolynomial(alg, tuple(coeffs.get(n, alg.zero()) for n in range(top + 1)))


@dataclass(frozen=True)
class WeierstrassReport:
    """Outcome of testing the claimed factorization ``P(x) = L(h x h^-1) R(x)``."""

    point: Element
    P: LeftPolynomial
    P1: Polynomial
    p_value: Element
    p1_value: Element

    @property
    def differs(self) -> bool:
        return self.p_value != self.p1_value

    def __str__(self) -> str:
        return (f"P(x) = {self.P}\nP1(x) = {self.P1}\n"
                f"P({self.point}) = {self.p_value}\nP1({self.point}) = {self.p1_value}\n"
                f"differ: {self.differs}")


def weierstrass_step_check(algebra: AlgebraSpec | None = None) -> WeierstrassReport:
    """Check ``(x - i)*(x - j)`` against ``L(x~) R(x)`` with ``x~ = h x h^-1``, ``h = R(i)``, at ``x = i + j``."""
    from .algebra import quaternions

    H = algebra or quaternions()
    i, j, one = H["i"], H["j"], H.one()
    L = LeftPolynomial.of(-i, one)
    R = LeftPolynomial.of(-j, one)
    P = left_mul(L, R)
    h = left_eval(R, i)
    x_tilde = monomial([h, h.inverse()])
    L_tilde = x_tilde - i
    P1 = mul(L_tilde, R.to_polynomial())
    point = i + j
    return WeierstrassReport(point, P, P1, left_eval(P, point), evaluate(P1, point))


def solve_left_linear(a1: Element, a0: Element, side: str = "right") -> SolutionSet:
    """Roots of ``x a1 + a0`` (``side="right"``) or ``a1 x + a0`` (``side="left"``).

    Over a division algebra: a unique root when ``a1 != 0``, none when only
    ``a1`` vanishes, every element when both vanish.
    """
    _check_same(a1.algebra, a0.algebra)
    alg = a1.algebra
    if a1:
        inv = a1.inverse()
        x = -a0 * inv if side == "right" else inv * -a0
        return SolutionSet("unique", x)
    if a0:
        return SolutionSet("none")
    return SolutionSet("affine", alg.zero(), tuple(alg.basis(n) for n in range(alg.dim)))
