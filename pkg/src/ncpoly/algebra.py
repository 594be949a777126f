"""Finite-dimensional algebras given by structure constants, and their elements.

Scalars are exact rationals. ``Q`` is ``gmpy2.mpq`` when available and
``fractions.Fraction`` otherwise; both behave as ``numbers.Rational``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache, cached_property
from itertools import product
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

Scalar = Union[int, _RationalABC]

FLOAT_TOL = 1e-10


class AlgebraError(ValueError):
    """Base class for algebraic failures (mismatch, singularity, ...)."""


class AlgebraMismatchError(AlgebraError):
    pass


class NonAssociativeError(AlgebraError):
    pass


def to_q(value) -> Q:
    """Convert ints, Fractions, mpq or ``"p/q"`` strings to an exact rational."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    if isinstance(value, str):
        return Q(value.strip())
    if isinstance(value, _RationalABC) and not isinstance(value, int):
        return Q(value.numerator, value.denominator)
    return Q(value)


def format_rational(value) -> str:
    value = to_q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """Algebra with basis ``e_0..e_{d-1}`` and ``e_i e_j = C[i][j][k] e_k``.

    ``e_0`` must be a two-sided unit. ``composition`` marks algebras whose
    norm (sum of squared coordinates) is multiplicative, which makes
    ``conj(a) / norm_sq(a)`` the inverse.
    """

    name: str
    basis_names: tuple[str, ...]
    structure_constants: tuple[tuple[tuple[Q, ...], ...], ...]
    composition: bool = False

    def __post_init__(self):
        d = len(self.basis_names)
        if d == 0:
            raise AlgebraError("algebra must have positive dimension")
        if self.basis_names[0] != "1":
            raise AlgebraError("first basis element must be named '1'")
        if len(set(self.basis_names)) != d:
            raise AlgebraError("basis names must be distinct")
        C = self.structure_constants
        if len(C) != d or any(len(row) != d or any(len(v) != d for v in row) for row in C):
            raise AlgebraError(f"structure constants must be a {d}x{d}x{d} array")
        for j, k in product(range(d), repeat=2):
            delta = 1 if j == k else 0
            if C[0][j][k] != delta or C[j][0][k] != delta:
                raise AlgebraError("e_0 is not a two-sided unit")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @cached_property
    def products(self) -> tuple[tuple[int, int, int, Q], ...]:
        """Non-zero structure constants as ``(i, j, k, C_ij^k)``."""
        d = self.dim
        C = self.structure_constants
        return tuple(
            (i, j, k, C[i][j][k])
            for i, j, k in product(range(d), repeat=3)
            if C[i][j][k] != 0
        )

    @cached_property
    def _table(self) -> list[list[list[tuple[int, Q]]]]:
        d = self.dim
        table = [[[] for _ in range(d)] for _ in range(d)]
        for i, j, k, c in self.products:
            table[i][j].append((k, c))
        return table

    @cached_property
    def is_associative(self) -> bool:
        basis = [self.basis(n) for n in range(self.dim)]
        return all((a * b) * c == a * (b * c) for a, b, c in product(basis, repeat=3))

    def require_associative(self, what: str = "operation") -> None:
        if not self.is_associative:
            raise NonAssociativeError(f"{what} requires an associative algebra; {self.name} is not")

    def basis(self, index: int | str) -> Element:
        if isinstance(index, str):
            try:
                index = self.basis_names.index(index)
            except ValueError:
                raise AlgebraError(f"unknown basis symbol {index!r} for {self.name}") from None
        coords = [Q(0)] * self.dim
        coords[index] = Q(1)
        return Element(self, tuple(coords))

    def element(self, coords: Iterable) -> Element:
        return Element(self, tuple(to_q(c) for c in coords))

    def scalar(self, value) -> Element:
        coords = [Q(0)] * self.dim
        coords[0] = to_q(value)
        return Element(self, tuple(coords))

    def zero(self) -> Element:
        return Element(self, (Q(0),) * self.dim)

    def one(self) -> Element:
        return self.scalar(1)

    def __getitem__(self, name: str) -> Element:
        return self.basis(name)

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.name!r}, dim={self.dim})"


def _check_same(a: AlgebraSpec, b: AlgebraSpec) -> None:
    if a is not b and (a.name != b.name or a.structure_constants != b.structure_constants):
        raise AlgebraMismatchError(f"operands belong to different algebras ({a.name}, {b.name})")


def _mul_coords(algebra: AlgebraSpec, x: Sequence, y: Sequence, zero=Q(0)) -> list:
    table = algebra._table
    out = [zero] * algebra.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            xy = xi * yj
            for k, c in row[j]:
                out[k] = out[k] + c * xy
    return out


@dataclass(frozen=True, eq=False)
class Element:
    """An element ``x = x^i e_i`` of an algebra, with exact coordinates."""

    algebra: AlgebraSpec
    coords: tuple[Q, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise AlgebraError(
                f"expected {self.algebra.dim} coordinates, got {len(self.coords)}"
            )

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> Element | None:
        if isinstance(other, Element):
            _check_same(self.algebra, other.algebra)
            return other
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            _check_same(self.algebra, other.algebra)
            return Element(self.algebra, tuple(_mul_coords(self.algebra, self.coords, other.coords)))
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            s = to_q(other)
            return Element(self.algebra, tuple(a * s for a in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            s = to_q(other)
            return Element(self.algebra, tuple(a / s for a in self.coords))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra.name != other.algebra.name:
            return False
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra.name, self.coords))

    def __bool__(self):
        return any(self.coords)

    # structure ---------------------------------------------------------------
    @property
    def re(self) -> Q:
        return self.coords[0]

    @property
    def im(self) -> Element:
        return Element(self.algebra, (Q(0),) + self.coords[1:])

    def is_real(self) -> bool:
        return not any(self.coords[1:])

    def conj(self) -> Element:
        return Element(self.algebra, (self.coords[0],) + tuple(-a for a in self.coords[1:]))

    def norm_sq(self) -> Q:
        return sum((a * a for a in self.coords), Q(0))

    def inverse(self) -> Element:
        if not self:
            raise AlgebraError("inverse of zero")
        if self.algebra.composition:
            return self.conj() / self.norm_sq()
        # generic route: solve a * y = 1 through the left-multiplication matrix
        from .linalg import solve_system

        alg = self.algebra
        cols = [(self * alg.basis(n)).coords for n in range(alg.dim)]
        matrix = [[cols[c][r] for c in range(alg.dim)] for r in range(alg.dim)]
        kind, particular, kernel = solve_system(matrix, list(alg.one().coords))
        if kind != "unique":
            raise AlgebraError(f"{self} has no unique inverse in {alg.name}")
        y = alg.element(particular)
        if y * self != alg.one():
            raise AlgebraError(f"{self} has no two-sided inverse in {alg.name}")
        return y

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self.algebra.name}: {self})"


def format_element(x: Element) -> str:
    """Render like ``-2k``, ``1 + i``, ``1/2 j``; the unit prints as a bare scalar."""
    parts = []
    for name, c in zip(x.algebra.basis_names, x.coords):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if name == "1":
            body = format_rational(mag)
        elif mag == 1:
            body = name
        elif mag.denominator == 1:
            body = f"{mag.numerator}{name}"
        else:
            body = f"{format_rational(mag)} {name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# presets --------------------------------------------------------------------
def _empty_table(d):
    return [[[Q(0)] * d for _ in range(d)] for _ in range(d)]


def _freeze(table):
    return tuple(tuple(tuple(Q(v) for v in cell) for cell in row) for row in table)


def cayley_dickson(base: AlgebraSpec, new_unit: str, names: Sequence[str] | None = None,
                   name: str | None = None) -> AlgebraSpec:
    """Double ``base``: ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``.

    The new basis is ``base`` followed by ``e * u`` for each base element
    ``e``, where ``u = (0, 1)`` is the new unit.
    """
    n = base.dim
    d = 2 * n
    if names is None:
        names = list(base.basis_names) + [
            new_unit if b == "1" else b + new_unit for b in base.basis_names
        ]

    def conj(v):
        return [v[0]] + [-c for c in v[1:]]

    def mul(v, w):
        return _mul_coords(base, v, w)

    table = _empty_table(d)
    for p, q in product(range(d), repeat=2):
        x = [Q(0)] * d
        y = [Q(0)] * d
        x[p] = Q(1)
        y[q] = Q(1)
        a, b = x[:n], x[n:]
        c, dd = y[:n], y[n:]
        left = [s - t for s, t in zip(mul(a, c), mul(conj(dd), b))]
        right = [s + t for s, t in zip(mul(dd, a), mul(b, conj(c)))]
        table[p][q] = left + right
    return AlgebraSpec(name or f"CD({base.name})", tuple(names), _freeze(table),
                       composition=base.composition)


@cache
def reals() -> AlgebraSpec:
    return AlgebraSpec("R", ("1",), _freeze([[[1]]]), composition=True)


@cache
def complexes() -> AlgebraSpec:
    return cayley_dickson(reals(), "i", name="C")


@cache
def quaternions() -> AlgebraSpec:
    """Quaternions ``(1, i, j, k)`` with ``i^2 = j^2 = k^2 = ijk = -1``."""
    return cayley_dickson(complexes(), "j", names=("1", "i", "j", "k"), name="H")


@cache
def octonions() -> AlgebraSpec:
    """Octonions ``(1, i, j, k, l, il, jl, kl)``, a Cayley-Dickson double of H.

    In this table ``i (jl) = -kl``.
    """
    return cayley_dickson(quaternions(), "l", name="O")


ALGEBRAS = {"R": reals, "C": complexes, "H": quaternions, "O": octonions}


def algebra_by_name(name: str) -> AlgebraSpec:
    try:
        return ALGEBRAS[name.upper()]()
    except KeyError:
        raise AlgebraError(f"unknown algebra {name!r}; choose one of {sorted(ALGEBRAS)}") from None


# square roots ------------------------------------------------------------------
@dataclass(frozen=True)
class FloatElement:
    """Inexact element; only produced by square roots."""

    algebra: AlgebraSpec
    coords: tuple[float, ...]
    tol: float = FLOAT_TOL

    @classmethod
    def from_exact(cls, x: Element) -> FloatElement:
        return cls(x.algebra, tuple(float(c) for c in x.coords))

    def __neg__(self):
        return FloatElement(self.algebra, tuple(-c for c in self.coords), self.tol)

    def __mul__(self, other: FloatElement) -> FloatElement:
        _check_same(self.algebra, other.algebra)
        return FloatElement(self.algebra, tuple(_mul_coords(self.algebra, self.coords, other.coords, 0.0)),
                            self.tol)

    def close_to(self, other, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        if isinstance(other, Element):
            other = FloatElement.from_exact(other)
        return all(abs(a - b) < tol for a, b in zip(self.coords, other.coords))

    def __str__(self) -> str:
        parts = []
        for name, c in zip(self.algebra.basis_names, self.coords):
            if c == 0:
                continue
            mag = f"{abs(c):.12g}"
            body = mag if name == "1" else f"{mag} {name}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class SquareRoots:
    """Finitely many roots of ``x^2 = a``; ``multiplicity`` 2 means a double root."""

    roots: tuple[FloatElement, ...]
    multiplicity: int = 1

    def __str__(self):
        body = ", ".join(str(r) for r in self.roots)
        return f"{{{body}}}" + (f" (multiplicity {self.multiplicity})" if self.multiplicity > 1 else "")


@dataclass(frozen=True)
class ImaginarySphere:
    """The family ``{x in Im H : |x|^2 = radius_sq}``."""

    algebra: AlgebraSpec
    radius_sq: Q

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)

    def contains(self, x, tol: float = FLOAT_TOL) -> bool:
        coords = [float(c) for c in x.coords]
        return abs(coords[0]) < tol and abs(sum(c * c for c in coords[1:]) - float(self.radius_sq)) < tol

    def point(self, direction: Element) -> FloatElement:
        """The point of the sphere along the imaginary part of ``direction``."""
        v = [float(c) for c in direction.im.coords]
        n = math.sqrt(sum(c * c for c in v))
        if n == 0:
            raise AlgebraError("direction must have a non-zero imaginary part")
        return FloatElement(self.algebra, tuple(c * self.radius / n for c in v))

    def __str__(self):
        r = math.sqrt(self.radius_sq)
        return f"{{x in Im {self.algebra.name} : |x| = {r:.12g}}}"


def sqrt(a: Element) -> SquareRoots | ImaginarySphere:
    """All square roots of a quaternion ``a``.

    Non-zero ``a`` off the negative real axis has exactly two roots
    ``+-(x0 + w)`` with ``x0 = sqrt((|a| + Re a) / 2)`` and ``w = Im a / (2 x0)``.
    """
    if a.algebra.name != "H":
        raise AlgebraError("sqrt is implemented for quaternions only")
    if not a:
        zero = FloatElement.from_exact(a)
        return SquareRoots((zero, zero), multiplicity=2)
    if a.is_real() and a.re < 0:
        return ImaginarySphere(a.algebra, -a.re)
    norm = math.sqrt(a.norm_sq())
    x0 = math.sqrt((norm + float(a.re)) / 2)
    w = [float(c) / (2 * x0) for c in a.coords[1:]]
    root = FloatElement(a.algebra, (x0, *w))
    return SquareRoots((root, -root))
