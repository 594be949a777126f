"""Polynomials ``p(x) = p0 + p1∘x + ... + pn∘x^n`` with tensor coefficients.

The degree-``n`` component is a rank-``(n+1)`` :class:`TensorSum`; the
constant term is stored as a rank-1 tensor sum. Tensor representations are
not unique, so equality of polynomials is decided on canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import linalg
from .algebra import Q, AlgebraError, AlgebraSpec, Element, _check_same
from .multilinear import X, CanonicalForm, FormBuilder, merge_words
from .tensor import TensorSum, apply_word, format_element, star

DEFAULT_DEGREE_CAP = 6


class DegreeCapError(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class Polynomial:
    algebra: AlgebraSpec
    components: Mapping[int, TensorSum] = field(default_factory=dict)

    def __post_init__(self):
        comps = {}
        for n, t in self.components.items():
            if t.rank != n + 1:
                raise AlgebraError(f"degree-{n} component must have rank {n + 1}, got {t.rank}")
            _check_same(self.algebra, t.algebra)
            if t.terms:
                comps[n] = t
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    # constructors ---------------------------------------------------------------
    @classmethod
    def zero(cls, algebra: AlgebraSpec) -> Polynomial:
        return cls(algebra, {})

    @classmethod
    def constant(cls, a: Element) -> Polynomial:
        return cls(a.algebra, {0: TensorSum.pure(a)})

    @classmethod
    def variable(cls, algebra: AlgebraSpec) -> Polynomial:
        one = algebra.one()
        return cls(algebra, {1: TensorSum.pure(one, one)})

    @classmethod
    def from_terms(cls, algebra: AlgebraSpec, terms: Iterable[Sequence[Element]]) -> Polynomial:
        comps: dict[int, list] = {}
        for t in terms:
            comps.setdefault(len(t) - 1, []).append(tuple(t))
        return cls(algebra, {n: TensorSum(algebra, n + 1, tuple(ts)) for n, ts in comps.items()})

    # structure -------------------------------------------------------------------
    def terms(self) -> list[tuple[Element, ...]]:
        return [t for comp in self.components.values() for t in comp.terms]

    @property
    def formal_degree(self) -> int:
        return max(self.components, default=-1)

    def degree(self, cap: int = DEFAULT_DEGREE_CAP) -> int:
        """Largest ``n`` whose component is a non-zero map (``-1`` for the zero polynomial)."""
        return max(canonical_form(self, cap).degrees(), default=-1)

    def component(self, n: int) -> TensorSum:
        return self.components.get(n, TensorSum.zero(self.algebra, n + 1))

    @property
    def constant_term(self) -> Element:
        out = self.algebra.zero()
        for (a,) in self.component(0).terms:
            out = out + a
        return out

    # arithmetic --------------------------------------------------------------------
    def __add__(self, other):
        return add(self, _lift(self.algebra, other))

    def __radd__(self, other):
        return add(_lift(self.algebra, other), self)

    def __neg__(self):
        return Polynomial(self.algebra, {n: -t for n, t in self.components.items()})

    def __sub__(self, other):
        return add(self, -_lift(self.algebra, other))

    def __rsub__(self, other):
        return add(_lift(self.algebra, other), -self)

    def __mul__(self, other):
        return mul(self, _lift(self.algebra, other))

    def __rmul__(self, other):
        return mul(_lift(self.algebra, other), self)

    def __call__(self, x: Element) -> Element:
        return evaluate(self, x)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.algebra.name}: {self})"


def _lift(algebra: AlgebraSpec, value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Element):
        return Polynomial.constant(value)
    return Polynomial.constant(algebra.scalar(value))


def evaluate(p: Polynomial, x: Element) -> Element:
    _check_same(p.algebra, x.algebra)
    out = p.algebra.zero()
    for n, comp in p.components.items():
        args = [x] * n
        for t in comp.terms:
            out = out + apply_word(t, args)
    return out


def add(p: Polynomial, r: Polynomial) -> Polynomial:
    _check_same(p.algebra, r.algebra)
    comps = dict(p.components)
    for n, t in r.components.items():
        comps[n] = comps[n] + t if n in comps else t
    return Polynomial(p.algebra, comps)


def scale(p: Polynomial, c) -> Polynomial:
    return Polynomial(p.algebra, {n: t * c for n, t in p.components.items()})


def mul(p: Polynomial, r: Polynomial) -> Polynomial:
    """Product ``(p r)(x) = p(x) r(x)`` built from star products of components."""
    _check_same(p.algebra, r.algebra)
    p.algebra.require_associative("polynomial multiplication")
    comps: dict[int, TensorSum] = {}
    for (n, a), (m, b) in product(p.components.items(), r.components.items()):
        s = star(a, b)
        comps[n + m] = comps[n + m] + s if n + m in comps else s
    return Polynomial(p.algebra, comps)


def monomial(coeffs: Sequence[Element]) -> Polynomial:
    """``a0 x a1 x ... x ak``."""
    if not coeffs:
        raise AlgebraError("a monomial needs at least one coefficient")
    return Polynomial.from_terms(coeffs[0].algebra, [tuple(coeffs)])


def map_compose(a: TensorSum, p: Polynomial) -> Polynomial:
    """``x -> a ∘ p(x)``: ``(u⊗v)`` wraps each pure tensor as ``(u t0)⊗...⊗(tn v)``."""
    if a.rank != 2:
        raise AlgebraError("map_compose needs a rank-2 tensor")
    _check_same(a.algebra, p.algebra)
    p.algebra.require_associative("map composition")
    terms = []
    for t in p.terms():
        for u, v in a.terms:
            if len(t) == 1:
                terms.append((u * t[0] * v,))
            else:
                terms.append((u * t[0],) + t[1:-1] + (t[-1] * v,))
    return Polynomial.from_terms(p.algebra, terms)


def canonical_form(p: Polynomial, cap: int = DEFAULT_DEGREE_CAP) -> CanonicalForm:
    """Symmetrized coefficient arrays of every homogeneous component."""
    builder = FormBuilder(p.algebra, cap)
    for n in p.components:
        if n > cap:
            raise DegreeCapError(f"degree {n} exceeds the canonical-form cap {cap}")
    builder.add_words(merge_words([(t, (X,) * (len(t) - 1)) for t in p.terms()]))
    return builder.build()


def equals_as_map(p: Polynomial, r: Polynomial, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    _check_same(p.algebra, r.algebra)
    return canonical_form(add(p, -r), cap).is_zero()


def given_roots_pair(x1: Element, x2: Element) -> tuple[Polynomial, Polynomial]:
    """``((x - x1)(x - x2), (x - x2)(x - x1))``; both vanish at ``x1`` and ``x2``."""
    x = Polynomial.variable(x1.algebra)
    return mul(x - x1, x - x2), mul(x - x2, x - x1)


def _form_vector(form: CanonicalForm, keys: list) -> list[Q]:
    vec = []
    for key, shape in keys:
        arr = form.arrays.get(key)
        if arr is None:
            vec.extend([Q(0)] * _size(shape))
        else:
            vec.extend(Q(v) for v in arr.flat)
    return vec


def _size(shape) -> int:
    n = 1
    for s in shape:
        n *= s
    return n


def solve_map_combination(gs: Sequence[Polynomial], f: Polynomial,
                          cap: int = DEFAULT_DEGREE_CAP) -> list[TensorSum] | None:
    """Find rank-2 tensors ``a_s`` with ``sum_s a_s ∘ g_s(x) = f(x)``, or ``None`` if none exist.

    Each unknown tensor is ``sum c^{pq} e_p ⊗ e_q``; matching canonical forms
    gives an exact linear system in the ``c``.
    """
    if not gs:
        raise AlgebraError("need at least one polynomial")
    alg = f.algebra
    for g in gs:
        _check_same(alg, g.algebra)
    alg.require_associative("map combination")
    d = alg.dim
    basis = [alg.basis(n) for n in range(d)]
    columns = []
    forms = []
    for g in gs:
        for p, q in product(range(d), repeat=2):
            forms.append(canonical_form(map_compose(TensorSum.pure(basis[p], basis[q]), g), cap))
    target = canonical_form(f, cap)
    keyset = set(target.arrays)
    for fm in forms:
        keyset |= set(fm.arrays)
    keys = sorted((k, (d,) * (k[0] + k[1] + 1)) for k in keyset)
    columns = [_form_vector(fm, keys) for fm in forms]
    rhs = _form_vector(target, keys)
    if not keys:
        return [TensorSum.zero(alg, 2) for _ in gs]
    matrix = [list(row) for row in zip(*columns)]
    kind, sol, _ = linalg.solve_system(matrix, rhs)
    if kind == "none":
        return None
    out = []
    for s in range(len(gs)):
        terms = []
        for n, (p, q) in enumerate(product(range(d), repeat=2)):
            c = sol[s * d * d + n]
            if c:
                terms.append((basis[p] * c, basis[q]))
        out.append(TensorSum(alg, 2, tuple(terms)))
    return out


# printing ---------------------------------------------------------------------------
def _wrap(e: Element) -> str:
    s = format_element(e)
    return f"({s})" if (" " in s) else s


def format_monomial(t: Sequence[Element]) -> tuple[str, str]:
    """Return ``(sign, body)`` for ``t0 x t1 ... x tn``; real factors are pulled to the front."""
    scalar = Q(1)
    pieces: list[str] = []
    xrun = 0

    def flush():
        nonlocal xrun
        if xrun:
            pieces.append("x" if xrun == 1 else f"x^{xrun}")
            xrun = 0

    for n, f in enumerate(t):
        if n:
            xrun += 1
        if f.is_real():
            scalar *= f.re
            continue
        flush()
        nonzero = [m for m, c in enumerate(f.coords) if c]
        if len(nonzero) == 1:
            scalar *= f.coords[nonzero[0]]
            pieces.append(f.algebra.basis_names[nonzero[0]])
        else:
            pieces.append(_wrap(f))
    flush()
    if scalar == 0:
        return "+", "0"
    sign = "-" if scalar < 0 else "+"
    mag = abs(scalar)
    if not pieces:
        from .algebra import format_rational

        return sign, format_rational(mag)
    if mag != 1:
        from .algebra import format_rational

        pieces.insert(0, format_rational(mag))
    return sign, "".join(pieces)


def format_terms(signed: list[tuple[str, str]]) -> str:
    signed = [s for s in signed if s[1] != "0"]
    if not signed:
        return "0"
    out = ("-" if signed[0][0] == "-" else "") + signed[0][1]
    for sign, body in signed[1:]:
        out += f" {sign} {body}"
    return out


def _monomial_pieces(t: Sequence[Element]) -> list[tuple[str, str]]:
    # a multi-term constant coefficient would read ambiguously; expand it
    if len(t) == 1:
        e = t[0]
        return [_signed_basis(e, n) for n in range(e.algebra.dim) if e.coords[n]]
    return [format_monomial(t)]


def _signed_basis(e: Element, n: int) -> tuple[str, str]:
    part = e.algebra.basis(n) * e.coords[n]
    s = format_element(part)
    return ("-", s[1:]) if s.startswith("-") else ("+", s)


def format_polynomial(p: Polynomial) -> str:
    pieces = []
    for n in sorted(p.components, reverse=True):
        for t in p.components[n].terms:
            pieces.extend(_monomial_pieces(t))
    return format_terms(pieces)
