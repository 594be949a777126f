"""Bracketed polynomials over non-associative algebras and their division by ``x - a``.

Every monomial is an explicit binary multiplication tree whose leaves are
constants, the variable ``x`` or slot holes ``y_t`` (values of divisors).
Trees are never re-associated: in the octonions ``(ab)c`` and ``a(bc)``
differ, so the shape is part of the data.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Sequence, Union

import numpy as np

from .algebra import Q, AlgebraError, AlgebraSpec, Element, _check_same, format_rational
from .multilinear import X, CanonicalForm, FormBuilder, const_array, identity_array, mul_arrays
from .poly import DEFAULT_DEGREE_CAP
from .tensor import format_element

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Const:
    value: Element


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Slot:
    index: int


@dataclass(frozen=True)
class Mul:
    left: "Tree"
    right: "Tree"


Tree = Union[Const, Var, Slot, Mul]
VAR = Var()

# (i j) l = kl while i (j l) = -kl
NONASSOC_WITNESS = ("i", "j", "l")


# tree utilities ----------------------------------------------------------------------
def degree(t: Tree) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, Mul):
        return degree(t.left) + degree(t.right)
    return 0


def slots_of(t: Tree) -> list[int]:
    if isinstance(t, Slot):
        return [t.index]
    if isinstance(t, Mul):
        return slots_of(t.left) + slots_of(t.right)
    return []


def leaf_labels(t: Tree) -> list[int]:
    """Argument labels (``X`` or slot index) in left-to-right leaf order."""
    if isinstance(t, Var):
        return [X]
    if isinstance(t, Slot):
        return [t.index]
    if isinstance(t, Mul):
        return leaf_labels(t.left) + leaf_labels(t.right)
    return []


def btree_eval(t: Tree, x: Element, slot_values: Sequence[Element] = ()) -> Element:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        return x
    if isinstance(t, Slot):
        if t.index >= len(slot_values):
            raise AlgebraError(f"missing value for slot {t.index}")
        return slot_values[t.index]
    return btree_eval(t.left, x, slot_values) * btree_eval(t.right, x, slot_values)


def normalize(t: Tree) -> tuple[Q, Tree | None]:
    """Fold constant subtrees and pull real scalars out as a coefficient.

    Returns ``(coefficient, tree)``; the tree is ``None`` when the term is zero.
    Constants keep at most one basis direction inside the tree when that is
    possible, so ``-j`` becomes ``(-1, Const(j))``.
    """
    if isinstance(t, Const):
        v = t.value
        if not v:
            return Q(0), None
        support = [n for n, c in enumerate(v.coords) if c]
        if len(support) == 1:
            n = support[0]
            return v.coords[n], Const(v.algebra.basis(n))
        return Q(1), t
    if isinstance(t, (Var, Slot)):
        return Q(1), t
    cl, left = normalize(t.left)
    cr, right = normalize(t.right)
    if left is None or right is None:
        return Q(0), None
    coef = cl * cr
    if isinstance(left, Const) and isinstance(right, Const):
        return normalize_scaled(coef, Const(left.value * right.value))
    if isinstance(left, Const) and _is_one(left.value):
        return coef, right
    if isinstance(right, Const) and _is_one(right.value):
        return coef, left
    return coef, Mul(left, right)


def normalize_scaled(coef, t: Tree) -> tuple[Q, Tree | None]:
    c, tree = normalize(t)
    return coef * c, tree


def _is_one(e: Element) -> bool:
    return e.coords[0] == 1 and not any(e.coords[1:])


def replace_rightmost_var(t: Tree, new: Tree) -> Tree:
    if isinstance(t, Mul):
        if degree(t.right):
            return Mul(t.left, replace_rightmost_var(t.right, new))
        return Mul(replace_rightmost_var(t.left, new), t.right)
    if isinstance(t, Var):
        return new
    raise AlgebraError("tree has no variable leaf")


def substitute_slots(t: Tree, values: dict[int, Tree]) -> Tree:
    if isinstance(t, Slot) and t.index in values:
        return values[t.index]
    if isinstance(t, Mul):
        return Mul(substitute_slots(t.left, values), substitute_slots(t.right, values))
    return t


def renumber_slots(t: Tree, mapping: dict[int, int]) -> Tree:
    return substitute_slots(t, {old: Slot(new) for old, new in mapping.items()})


def tree_array(algebra: AlgebraSpec, t: Tree) -> np.ndarray:
    """Multilinear coefficient array with one axis per Var/Slot leaf, in leaf order."""
    if isinstance(t, Const):
        return const_array(t.value)
    if isinstance(t, (Var, Slot)):
        return identity_array(algebra.dim)
    return mul_arrays(algebra, tree_array(algebra, t.left), tree_array(algebra, t.right))


# polynomials -------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class BracketPolynomial:
    """A sum ``sum_s c_s T_s`` of scaled bracket trees with ``slots`` open holes."""

    algebra: AlgebraSpec
    terms: tuple[tuple[Q, Tree], ...] = ()
    slots: int = 0

    def __post_init__(self):
        merged: dict[Tree, Q] = {}
        for coef, tree in self.terms:
            c, t = normalize(tree)
            c = c * coef
            if t is None or not c:
                continue
            for leaf in _consts(t):
                _check_same(self.algebra, leaf.algebra)
            used = slots_of(t)
            if len(set(used)) != len(used) or any(not 0 <= u < self.slots for u in used):
                raise AlgebraError(f"slots must be distinct and below {self.slots}")
            merged[t] = merged.get(t, Q(0)) + c
        object.__setattr__(self, "terms", tuple((c, t) for t, c in merged.items() if c))

    @classmethod
    def constant(cls, a: Element) -> BracketPolynomial:
        return cls(a.algebra, ((Q(1), Const(a)),))

    @classmethod
    def variable(cls, algebra: AlgebraSpec) -> BracketPolynomial:
        return cls(algebra, ((Q(1), VAR),))

    @classmethod
    def slot(cls, algebra: AlgebraSpec, index: int, slots: int) -> BracketPolynomial:
        return cls(algebra, ((Q(1), Slot(index)),), slots)

    @property
    def degree(self) -> int:
        return max((degree(t) for _, t in self.terms), default=-1)

    def __add__(self, other):
        other = _lift(self.algebra, other, self.slots)
        if other.slots != self.slots:
            raise AlgebraError("slot count mismatch")
        _check_same(self.algebra, other.algebra)
        return BracketPolynomial(self.algebra, self.terms + other.terms, self.slots)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return BracketPolynomial(self.algebra, tuple((-c, t) for c, t in self.terms), self.slots)

    def __sub__(self, other):
        return self + (-_lift(self.algebra, other, self.slots))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (BracketPolynomial, Element)):
            return BracketPolynomial(self.algebra, tuple((c * other, t) for c, t in self.terms), self.slots)
        return bmul(self, _lift(self.algebra, other, 0))

    def __rmul__(self, other):
        if not isinstance(other, (BracketPolynomial, Element)):
            return self * other
        return bmul(_lift(self.algebra, other, 0), self)

    def __call__(self, x: Element, slot_values: Sequence[Element] = ()) -> Element:
        return bevaluate(self, x, slot_values)

    def canonical_form(self, cap: int = DEFAULT_DEGREE_CAP) -> CanonicalForm:
        builder = FormBuilder(self.algebra, cap)
        for c, t in self.terms:
            builder.add(tree_array(self.algebra, t), leaf_labels(t), c)
        return builder.build()

    def equals_as_map(self, other: BracketPolynomial, cap: int = DEFAULT_DEGREE_CAP) -> bool:
        if self.slots != other.slots:
            return False
        return (self - other).canonical_form(cap).is_zero()

    def __str__(self) -> str:
        return format_bracket(self)

    def __repr__(self) -> str:
        return f"BracketPolynomial(slots={self.slots}, {self})"


def _consts(t: Tree):
    if isinstance(t, Const):
        yield t.value
    elif isinstance(t, Mul):
        yield from _consts(t.left)
        yield from _consts(t.right)


def _lift(algebra: AlgebraSpec, value, slots: int) -> BracketPolynomial:
    if isinstance(value, BracketPolynomial):
        return value
    e = value if isinstance(value, Element) else algebra.scalar(value)
    return BracketPolynomial(algebra, ((Q(1), Const(e)),), slots)


def bmul(p: BracketPolynomial, r: BracketPolynomial) -> BracketPolynomial:
    """Distribute ``p r`` into trees ``Mul(s, t)``; the bracket ``(p)(r)`` is kept."""
    _check_same(p.algebra, r.algebra)
    terms = [(c1 * c2, Mul(t1, t2)) for (c1, t1), (c2, t2) in product(p.terms, r.terms)]
    return BracketPolynomial(p.algebra, tuple(terms), max(p.slots, r.slots))


def bevaluate(p: BracketPolynomial, x: Element, slot_values: Sequence[Element] = ()) -> Element:
    _check_same(p.algebra, x.algebra)
    out = p.algebra.zero()
    for c, t in p.terms:
        out = out + btree_eval(t, x, slot_values) * c
    return out


# division ----------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class BracketChain:
    """``r(x) = remainder + quotient ∘ (x - roots[0], ..., x - roots[m-1])``.

    ``trace`` lists the top degree at each peel step; ``residual`` holds the
    constants that reached degree 0, whose sum is the remainder.
    """

    algebra: AlgebraSpec
    remainder: Element
    quotient: BracketPolynomial
    roots: tuple[Element, ...]
    trace: tuple[int, ...] = ()
    residual: tuple[Element, ...] = ()
    complete: bool = True
    message: str = ""

    def evaluate(self, x: Element) -> Element:
        return self.remainder + bevaluate(self.quotient, x, [x - a for a in self.roots])

    def reconstruct(self) -> BracketPolynomial:
        return bchain_apply(self, self.roots)

    def __str__(self) -> str:
        factors = ", ".join(f"x - {format_element(a)}" for a in self.roots)
        head = f"{self.remainder} + " if self.remainder else ""
        return f"{head}({self.quotient}) ∘ ({factors})"


def bdivide_monic(r: BracketPolynomial, a: Element) -> BracketChain:
    """Peel the rightmost ``x`` of every top-degree tree until only constants remain.

    The peeled tree with a hole in place of that ``x`` joins the quotient;
    ``r - q∘(x - a)`` replaces the term by the same tree with ``a`` in the
    hole, one degree lower.
    """
    alg = r.algebra
    _check_same(alg, a.algebra)
    if r.slots:
        raise AlgebraError("the dividend must not have open slots")
    work: dict[Tree, Q] = {t: c for c, t in r.terms}
    # every constant that reaches degree 0, kept separately so the final cancellation is visible
    constants = [btree_eval(t, alg.zero()) * c for c, t in r.terms if degree(t) == 0]
    quotient: list[tuple[Q, Tree]] = []
    trace = []
    while True:
        top = max((degree(t) for t, c in work.items() if c), default=0)
        if top == 0:
            break
        trace.append(top)
        for tree in [t for t, c in work.items() if c and degree(t) == top]:
            c = work.pop(tree)
            q = replace_rightmost_var(tree, Slot(0))
            quotient.append((c, q))
            fc, folded = normalize(substitute_slots(q, {0: Const(a)}))
            if folded is not None:
                work[folded] = work.get(folded, Q(0)) + c * fc
                if degree(folded) == 0:
                    constants.append(btree_eval(folded, alg.zero()) * (c * fc))
    residual = tuple(constants)
    remainder = alg.zero()
    for t, c in work.items():
        if c:
            remainder = remainder + btree_eval(t, alg.zero()) * c
    return BracketChain(alg, remainder, BracketPolynomial(alg, tuple(quotient), 1), (a,),
                        tuple(trace), residual)


def bchain_apply(c: BracketChain, a: Element | Sequence[Element]) -> BracketPolynomial:
    """Expand ``remainder + quotient ∘ (x - a_0, ...)`` into a slot-free bracket polynomial."""
    roots = [a] if isinstance(a, Element) else list(a)
    if len(roots) != c.quotient.slots:
        raise AlgebraError(f"expected {c.quotient.slots} roots, got {len(roots)}")
    terms = []
    for coef, tree in c.quotient.terms:
        for choice in product((True, False), repeat=len(roots)):
            sign = Q(1)
            values = {}
            for s, take_x in enumerate(choice):
                if take_x:
                    values[s] = VAR
                else:
                    values[s] = Const(roots[s])
                    sign = -sign
            terms.append((coef * sign, substitute_slots(tree, values)))
    return BracketPolynomial(c.algebra, tuple(terms)) + c.remainder


def _slot_path(t: Tree, index: int) -> list[tuple[str, Tree]]:
    """Steps from the root to ``Slot(index)``: which child is entered and its sibling."""
    if isinstance(t, Slot) and t.index == index:
        return []
    if isinstance(t, Mul):
        if index in slots_of(t.left):
            return [("L", t.right)] + _slot_path(t.left, index)
        if index in slots_of(t.right):
            return [("R", t.left)] + _slot_path(t.right, index)
    raise AlgebraError(f"slot {index} not found")


def _rebuild(context: Sequence[tuple[str, Tree]], inner: Tree) -> Tree:
    node = inner
    for side, sibling in reversed(context):
        node = Mul(node, sibling) if side == "L" else Mul(sibling, node)
    return node


def bfactor_chain(r: BracketPolynomial, roots: Sequence[Element]) -> BracketChain:
    """Two-slot chain ``r = q ∘ (x - roots[0], x - roots[1])``.

    Divides by ``x - roots[1]``; groups the quotient by the context around the
    hole (x-free context constants are expanded in the basis) and divides the
    polynomial standing next to the hole by ``x - roots[0]``.
    """
    if len(roots) != 2:
        raise AlgebraError("bracketed factor chains support exactly two roots")
    alg = r.algebra
    first = bdivide_monic(r, roots[1])
    one = alg.one()
    groups: dict[tuple, list[tuple[Q, Tree]]] = {}
    contexts: dict[tuple, tuple[str, tuple[tuple[str, Tree], ...]]] = {}
    for coef, tree in first.quotient.terms:
        path = _slot_path(tree, 0)
        if not path:
            path = [("R", Const(one))]
        *outer, (slot_side, hole) = path
        options = []
        for side, sibling in outer:
            if isinstance(sibling, Const):
                options.append([(c, (side, Const(alg.basis(n))), (side, n))
                                for n, c in enumerate(sibling.value.coords) if c])
            else:
                options.append([(Q(1), (side, sibling), (side, sibling))])
        for combo in product(*options):
            scale = coef
            for c, _, _ in combo:
                scale = scale * c
            key = (slot_side, tuple(k for _, _, k in combo))
            contexts[key] = (slot_side, tuple(ctx for _, ctx, _ in combo))
            groups.setdefault(key, []).append((scale, hole))
    terms = []
    for key, holes in groups.items():
        residual = BracketPolynomial(alg, tuple(holes))
        if not residual.terms:
            continue
        stage = bdivide_monic(residual, roots[0])
        if stage.remainder:
            msg = (f"stage dividing by (x - {roots[0]}) stopped: residual {residual} "
                   f"leaves remainder {stage.remainder}")
            log.info(msg)
            return BracketChain(alg, first.remainder, first.quotient, (roots[1],), first.trace,
                                first.residual, False, msg)
        slot_side, context = contexts[key]
        for c, q in stage.quotient.terms:
            inner = Mul(q, Slot(1)) if slot_side == "R" else Mul(Slot(1), q)
            terms.append((c, _rebuild(context, inner)))
    return BracketChain(alg, first.remainder, BracketPolynomial(alg, tuple(terms), 2), tuple(roots),
                        first.trace)


# printing ----------------------------------------------------------------------------
def _slot_name(index: int, slots: int) -> str:
    return "y" if slots == 1 else f"y{index + 1}"


def format_tree(t: Tree, slots: int = 1) -> str:
    """Bracket-explicit text that the expression parser reads back to the same tree."""
    if isinstance(t, Const):
        s = format_element(t.value)
        return f"({s})" if (" " in s or s.startswith("-")) else s
    if isinstance(t, Var):
        return "x"
    if isinstance(t, Slot):
        return _slot_name(t.index, slots)
    if t.left == VAR and t.right == VAR:
        return "x^2"
    return _operand(t.left, slots) + _operand(t.right, slots)


def _operand(t: Tree, slots: int) -> str:
    s = format_tree(t, slots)
    return f"({s})" if isinstance(t, Mul) else s


def format_bracket(p: BracketPolynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for n, (c, t) in enumerate(sorted(p.terms, key=lambda ct: -degree(ct[1]))):
        body = format_tree(t, p.slots)
        mag = abs(c)
        if isinstance(t, Const) and _is_one(t.value):
            body = format_rational(mag)
        elif mag != 1:
            body = f"{format_rational(mag)}*({body})" if isinstance(t, Mul) else f"{format_rational(mag)}{body}"
        sign = "-" if c < 0 else "+"
        if n == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_SUBSCRIPTS = "₁₂₃₄₅₆₇₈₉"


def paper_notation(p: BracketPolynomial) -> str:
    """Hole notation: ``(A⊗)b`` for ``(A y) b`` and ``A(⊗1)`` for a hole closing the product."""
    if p.slots > 2:
        raise AlgebraError("hole notation is only produced for at most two slots")

    def hole(index: int) -> str:
        return "⊗" if p.slots == 1 else "⊗" + _SUBSCRIPTS[index]

    def render(t: Tree, root: bool) -> str:
        if isinstance(t, Mul) and isinstance(t.right, Slot):
            inner = render(t.left, False)
            return f"{inner}({hole(t.right.index)}1)" if root else f"({inner}{hole(t.right.index)})"
        if isinstance(t, Mul) and isinstance(t.left, Slot):
            inner = render(t.right, False)
            return f"(1{hole(t.left.index)}){inner}" if root else f"({hole(t.left.index)}{inner})"
        if isinstance(t, Slot):
            return f"(1{hole(t.index)}1)" if root else f"1{hole(t.index)}"
        if isinstance(t, Mul):
            s = "x^2" if t.left == VAR and t.right == VAR else render(t.left, False) + render(t.right, False)
            return s if root else f"({s})"
        return format_tree(t, p.slots)

    pieces = []
    for c, t in p.terms:
        body = render(t, True)
        mag = abs(c)
        if mag != 1:
            body = f"{format_rational(mag)}{body}"
        pieces.append(("-" if c < 0 else "+", body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
