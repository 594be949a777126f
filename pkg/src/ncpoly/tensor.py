"""Tensor sums over an algebra acting as (poly)linear maps.

A pure tensor ``a0 ⊗ a1 ⊗ ... ⊗ an`` acts on ``(x1, ..., xn)`` as
``a0 x1 a1 ... xn an`` (products taken left to right). Rank-2 tensors are
linear maps ``x -> sum_s a_s x b_s``; over an associative algebra they can
be converted to and from ``dim x dim`` matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import linalg
from .algebra import Q, AlgebraError, AlgebraSpec, Element, _check_same, format_element


class SingularTensorError(AlgebraError):
    pass


class NotRepresentableError(AlgebraError):
    pass


PureTensor = tuple  # tuple[Element, ...], rank = len


@dataclass(frozen=True, eq=False)
class TensorSum:
    """A finite sum of pure tensors of a common rank.

    Terms are kept as given; no merging is attempted since the
    representation of a map by tensors is not unique.
    """

    algebra: AlgebraSpec
    rank: int
    terms: tuple[PureTensor, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraError("tensor rank must be >= 1")
        for t in self.terms:
            if len(t) != self.rank:
                raise AlgebraError(f"term of rank {len(t)} in a rank-{self.rank} tensor sum")
            for f in t:
                _check_same(self.algebra, f.algebra)

    @classmethod
    def pure(cls, *factors: Element) -> TensorSum:
        if not factors:
            raise AlgebraError("a pure tensor needs at least one factor")
        return cls(factors[0].algebra, len(factors), (tuple(factors),))

    @classmethod
    def zero(cls, algebra: AlgebraSpec, rank: int) -> TensorSum:
        return cls(algebra, rank, ())

    @classmethod
    def identity(cls, algebra: AlgebraSpec) -> TensorSum:
        one = algebra.one()
        return cls(algebra, 2, ((one, one),))

    def _compatible(self, other: TensorSum) -> None:
        _check_same(self.algebra, other.algebra)
        if self.rank != other.rank:
            raise AlgebraError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: TensorSum) -> TensorSum:
        self._compatible(other)
        return TensorSum(self.algebra, self.rank, self.terms + other.terms)

    def __neg__(self) -> TensorSum:
        return TensorSum(self.algebra, self.rank, tuple((-t[0],) + t[1:] for t in self.terms))

    def __sub__(self, other: TensorSum) -> TensorSum:
        return self + (-other)

    def __mul__(self, scalar) -> TensorSum:
        return TensorSum(self.algebra, self.rank, tuple((t[0] * scalar,) + t[1:] for t in self.terms))

    __rmul__ = __mul__

    def pruned(self) -> TensorSum:
        """Drop terms with a zero factor."""
        return TensorSum(self.algebra, self.rank, tuple(t for t in self.terms if all(t)))

    def combined(self) -> TensorSum:
        """Expand every factor in the basis and merge equal basis tensors."""
        return TensorSum(self.algebra, self.rank, tuple(combine_terms(self.algebra, self.terms)))

    def __call__(self, *args: Element) -> Element:
        return apply_polylinear(self, None, args)

    def __str__(self) -> str:
        return format_tensor(self)

    def __repr__(self) -> str:
        return f"TensorSum(rank={self.rank}, {self})"


def basis_expansion(factors: Sequence[Element]):
    """Yield ``(coefficient, basis indices)`` for ``f1⊗...⊗fm`` written in the basis."""
    supports = [[(n, c) for n, c in enumerate(e.coords) if c] for e in factors]
    for combo in product(*supports):
        coeff = 1
        for _, c in combo:
            coeff = coeff * c
        yield coeff, tuple(n for n, _ in combo)


def combine_terms(algebra: AlgebraSpec, terms: Iterable[Sequence[Element]]) -> list[PureTensor]:
    acc: dict[tuple[int, ...], object] = {}
    for t in terms:
        for coeff, key in basis_expansion(t):
            acc[key] = acc.get(key, 0) + coeff
    basis = [algebra.basis(n) for n in range(algebra.dim)]
    return [(basis[key[0]] * c,) + tuple(basis[n] for n in key[1:]) for key, c in acc.items() if c]


def _factor_str(e: Element) -> str:
    s = format_element(e)
    return f"({s})" if (" + " in s or " - " in s or " " in s.lstrip("-")) else s


def format_tensor(t: TensorSum, sep: str = "@") -> str:
    if not t.terms:
        return "0"
    out = []
    for n, term in enumerate(t.terms):
        factors = [_factor_str(f) for f in term]
        sign = ""
        if factors[0].startswith("-"):
            sign = "-"
            factors[0] = _factor_str(-term[0])
        body = sep.join(factors)
        if n == 0:
            out.append(sign + body)
        else:
            out.append((" - " if sign else " + ") + body)
    return "".join(out)


def _mul_chain(start: Element, pieces: Iterable[Element]) -> Element:
    acc = start
    for p in pieces:
        acc = acc * p
    return acc


def apply_word(factors: Sequence[Element], args: Sequence[Element]) -> Element:
    """``f0 a1 f1 ... an fn`` evaluated strictly left to right."""
    acc = factors[0]
    for a, f in zip(args, factors[1:]):
        acc = acc * a * f
    return acc


def apply_linear(t: TensorSum, x: Element) -> Element:
    """``sum_s a_s x b_s``."""
    if t.rank != 2:
        raise AlgebraError(f"apply_linear needs a rank-2 tensor, got rank {t.rank}")
    _check_same(t.algebra, x.algebra)
    out = t.algebra.zero()
    for a, b in t.terms:
        out = out + (a * x) * b
    return out


def apply_polylinear(t: TensorSum, perm: Sequence[int] | None, args: Sequence[Element]) -> Element:
    """``sum_s a_s0 args[perm[0]] a_s1 ... args[perm[n-1]] a_sn``.

    ``perm`` is a permutation of ``range(n)`` (``None`` for the identity).
    Products are evaluated left to right, which matters only in
    non-associative algebras.
    """
    n = t.rank - 1
    if len(args) != n:
        raise AlgebraError(f"rank-{t.rank} tensor takes {n} arguments, got {len(args)}")
    if perm is None:
        perm = range(n)
    elif sorted(perm) != list(range(n)):
        raise AlgebraError(f"{perm!r} is not a permutation of {n} arguments")
    ordered = [args[p] for p in perm]
    for a in ordered:
        _check_same(t.algebra, a.algebra)
    out = t.algebra.zero()
    for term in t.terms:
        out = out + apply_word(term, ordered)
    return out


def compose_rank2(p: TensorSum, q: TensorSum) -> TensorSum:
    """Tensor of the map ``x -> p(q(x))``: ``(p0⊗p1)(q0⊗q1) = (p0 q0)⊗(q1 p1)``."""
    if p.rank != 2 or q.rank != 2:
        raise AlgebraError("compose_rank2 needs rank-2 tensors")
    _check_same(p.algebra, q.algebra)
    p.algebra.require_associative("composition of linear maps")
    return TensorSum(p.algebra, 2, tuple(
        (p0 * q0, q1 * p1) for (p0, p1), (q0, q1) in product(p.terms, q.terms)
    ))


def star(a: TensorSum, b: TensorSum) -> TensorSum:
    """``a1⊗...⊗an * b1⊗...⊗bm = a1⊗...⊗(an b1)⊗...⊗bm``, extended bilinearly."""
    _check_same(a.algebra, b.algebra)
    terms = tuple(
        s[:-1] + (s[-1] * t[0],) + t[1:] for s, t in product(a.terms, b.terms)
    )
    return TensorSum(a.algebra, a.rank + b.rank - 1, terms)


# matrices -----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class MapMatrix:
    """Matrix of a linear map: ``entries[j][i]`` is output coordinate ``j`` of ``e_i``."""

    algebra: AlgebraSpec
    entries: tuple[tuple[Q, ...], ...]

    @classmethod
    def from_rows(cls, algebra: AlgebraSpec, rows) -> MapMatrix:
        return cls(algebra, tuple(tuple(r) for r in linalg.as_matrix(rows)))

    def rows(self) -> list[list[Q]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: MapMatrix) -> MapMatrix:
        return MapMatrix(self.algebra, tuple(map(tuple, linalg.matmul(self.rows(), other.rows()))))

    def apply(self, x: Element) -> Element:
        return Element(self.algebra, tuple(linalg.matvec(self.rows(), x.coords)))

    def det(self) -> Q:
        return linalg.det(self.rows())

    def __eq__(self, other):
        if not isinstance(other, MapMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        cells = [[_q_str(v) for v in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def _q_str(v) -> str:
    from .algebra import format_rational

    return format_rational(v)


def matrix_of(t: TensorSum) -> MapMatrix:
    """``a_i^j = a^{kr} C_{ki}^p C_{pr}^j`` with ``a^{kr} = sum_s a_s0^k a_s1^r``."""
    if t.rank != 2:
        raise AlgebraError(f"matrix_of needs a rank-2 tensor, got rank {t.rank}")
    alg = t.algebra
    d = alg.dim
    C = alg.structure_constants
    coeff = [[Q(0)] * d for _ in range(d)]
    for a, b in t.terms:
        for k, ak in enumerate(a.coords):
            if ak:
                for r, br in enumerate(b.coords):
                    if br:
                        coeff[k][r] += ak * br
    entries = [[Q(0)] * d for _ in range(d)]
    for k, r in product(range(d), repeat=2):
        akr = coeff[k][r]
        if not akr:
            continue
        for i in range(d):
            for p, ckip in enumerate(C[k][i]):
                if not ckip:
                    continue
                for j, cprj in enumerate(C[p][r]):
                    if cprj:
                        entries[j][i] += akr * ckip * cprj
    return MapMatrix(alg, tuple(map(tuple, entries)))


def _sandwich_system(alg: AlgebraSpec) -> list[list[Q]]:
    """Rows indexed by matrix entry ``(j, i)``, columns by tensor coefficient ``c^{pq}``."""
    d = alg.dim
    basis = [alg.basis(n) for n in range(d)]
    cols = []
    for p, q in product(range(d), repeat=2):
        m = matrix_of(TensorSum.pure(basis[p], basis[q]))
        cols.append([m.entries[j][i] for j, i in product(range(d), repeat=2)])
    return [list(row) for row in zip(*cols)]


_SYSTEMS: dict[str, list[list[Q]]] = {}


def tensor_of(m: MapMatrix) -> TensorSum:
    """A rank-2 tensor ``sum c^{pq} e_p ⊗ e_q`` whose matrix is ``m``."""
    alg = m.algebra
    d = alg.dim
    key = alg.name
    if key not in _SYSTEMS:
        _SYSTEMS[key] = _sandwich_system(alg)
    system = _SYSTEMS[key]
    rhs = [m.entries[j][i] for j, i in product(range(d), repeat=2)]
    kind, coeffs, _ = linalg.solve_system(system, rhs)
    if kind == "none":
        raise NotRepresentableError(f"matrix is not representable by a tensor over {alg.name}")
    terms = []
    for (p, q), c in zip(product(range(d), repeat=2), coeffs):
        if c:
            terms.append((alg.basis(p) * c, alg.basis(q)))
    return TensorSum(alg, 2, tuple(terms))


def det(t: TensorSum) -> Q:
    return matrix_of(t).det()


def is_nonsingular(t: TensorSum) -> bool:
    return det(t) != 0


def inverse_tensor(t: TensorSum) -> TensorSum:
    """Tensor of the inverse map, so that ``compose_rank2(inverse_tensor(t), t)`` is the identity."""
    t.algebra.require_associative("tensor inversion")
    m = matrix_of(t)
    try:
        inv = linalg.inverse(m.rows())
    except linalg.SingularMatrixError:
        raise SingularTensorError(f"tensor {t} is singular") from None
    return tensor_of(MapMatrix(t.algebra, tuple(map(tuple, inv))))


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``t ∘ x = b``: ``particular + span(kernel_basis)`` or nothing."""

    kind: str  # "unique" | "affine" | "none"
    particular: Element | None = None
    kernel_basis: tuple[Element, ...] = ()

    def contains(self, x: Element, t: TensorSum | None = None) -> bool:
        if self.kind == "none":
            return False
        diff = x - self.particular
        if self.kind == "unique":
            return not diff
        from .linalg import rank

        vecs = [list(v.coords) for v in self.kernel_basis]
        return rank(vecs + [list(diff.coords)]) == len(vecs)

    def __str__(self) -> str:
        if self.kind == "none":
            return "no solution"
        pieces = []
        for n, v in enumerate(self.kernel_basis, start=1):
            s = format_element(v)
            if s == "1":
                pieces.append(f"C{n}")
            elif " " in s or s.startswith("-") or not s.isalpha():
                pieces.append(f"C{n} ({s})")
            else:
                pieces.append(f"C{n} {s}")
        if self.particular or not pieces:
            pieces.append(format_element(self.particular))
        return "x = " + " + ".join(pieces).replace("+ -", "- ")


def solve(t: TensorSum, b: Element) -> SolutionSet:
    """Solve ``t ∘ x = b`` exactly and classify the solution set."""
    if t.rank != 2:
        raise AlgebraError("solve needs a rank-2 tensor")
    _check_same(t.algebra, b.algebra)
    t.algebra.require_associative("solving linear equations")
    alg = t.algebra
    kind, particular, kernel = linalg.solve_system(matrix_of(t).rows(), list(b.coords))
    if kind == "none":
        return SolutionSet("none")
    return SolutionSet(kind, alg.element(particular), tuple(alg.element(v) for v in kernel))
