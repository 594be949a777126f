"""Tensors whose factors depend on ``x``, applied to one or more slot values.

A :class:`Word` is a product ``f0 a1 f1 a2 ... an fn`` in which each argument
``a`` is either the variable ``x`` (label ``X``) or a slot value ``y_t``
(label ``t``). A :class:`SlotTensor` is a sum of words with ``slots``
distinct slots, each appearing once per word. Quotients of division are
one-slot tensors such as ``x⊗1 - i⊗1``; two-factor chains use two slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraError, AlgebraSpec, Element, _check_same
from .multilinear import X, CanonicalForm, FormBuilder, merge_words
from .poly import DEFAULT_DEGREE_CAP, Polynomial, format_monomial, format_terms
from .tensor import TensorSum, apply_word, basis_expansion


@dataclass(frozen=True)
class Word:
    factors: tuple[Element, ...]
    args: tuple[int, ...]

    def __post_init__(self):
        if len(self.factors) != len(self.args) + 1:
            raise AlgebraError("a word needs exactly one more factor than arguments")

    @property
    def x_degree(self) -> int:
        return sum(1 for a in self.args if a == X)

    def evaluate(self, x: Element, ys: Sequence[Element]) -> Element:
        return apply_word(self.factors, [x if a == X else ys[a] for a in self.args])

    def scaled(self, c) -> Word:
        return Word((self.factors[0] * c,) + self.factors[1:], self.args)


@dataclass(frozen=True, eq=False)
class SlotTensor:
    algebra: AlgebraSpec
    slots: int
    words: tuple[Word, ...] = ()

    def __post_init__(self):
        for w in self.words:
            labels = sorted(a for a in w.args if a != X)
            if labels != list(range(self.slots)):
                raise AlgebraError(f"each word must use slots 0..{self.slots - 1} exactly once")
            for f in w.factors:
                _check_same(self.algebra, f.algebra)

    # conversions ----------------------------------------------------------------
    @classmethod
    def from_polynomial(cls, p: Polynomial) -> SlotTensor:
        return cls(p.algebra, 0, tuple(Word(t, (X,) * (len(t) - 1)) for t in p.terms()))

    @classmethod
    def from_tensor(cls, t: TensorSum) -> SlotTensor:
        """An x-free tensor ``a0⊗...⊗an`` as a word with slots ``0..n-1``."""
        return cls(t.algebra, t.rank - 1, tuple(Word(term, tuple(range(t.rank - 1))) for term in t.terms))

    def to_polynomial(self) -> Polynomial:
        if self.slots:
            raise AlgebraError("tensor still has open slots")
        return Polynomial.from_terms(self.algebra, [w.factors for w in self.words])

    def at(self, x: Element) -> TensorSum:
        """Substitute ``x``; the result is an ordinary rank-``slots+1`` tensor."""
        _check_same(self.algebra, x.algebra)
        terms = []
        for w in self.words:
            order = sorted((a, n) for n, a in enumerate(w.args) if a != X)
            if [n for _, n in order] != sorted(n for _, n in order):
                raise AlgebraError("slots must appear in increasing order to form a tensor")
            pieces = [w.factors[0]]
            for a, f in zip(w.args, w.factors[1:]):
                if a == X:
                    pieces[-1] = pieces[-1] * x * f
                else:
                    pieces.append(f)
            terms.append(tuple(pieces))
        return TensorSum(self.algebra, self.slots + 1, tuple(terms))

    # algebra ---------------------------------------------------------------------
    def __add__(self, other: SlotTensor) -> SlotTensor:
        _check_same(self.algebra, other.algebra)
        if self.slots != other.slots:
            raise AlgebraError("slot count mismatch")
        return SlotTensor(self.algebra, self.slots, self.words + other.words)

    def __neg__(self) -> SlotTensor:
        return SlotTensor(self.algebra, self.slots, tuple(w.scaled(-1) for w in self.words))

    def __sub__(self, other: SlotTensor) -> SlotTensor:
        return self + (-other)

    def evaluate(self, x: Element, ys: Sequence[Element]) -> Element:
        if len(ys) != self.slots:
            raise AlgebraError(f"expected {self.slots} slot values, got {len(ys)}")
        out = self.algebra.zero()
        for w in self.words:
            out = out + w.evaluate(x, ys)
        return out

    def substitute(self, slot: int, p: Polynomial) -> SlotTensor:
        """Replace slot ``slot`` by ``p(x)``; later slots are renumbered down by one."""
        _check_same(self.algebra, p.algebra)
        self.algebra.require_associative("slot substitution")
        words = []
        for w in self.words:
            m = w.args.index(slot)
            left, right = w.factors[m], w.factors[m + 1]
            for u in p.terms():
                if len(u) == 1:
                    mid = (left * u[0] * right,)
                else:
                    mid = (left * u[0],) + tuple(u[1:-1]) + (u[-1] * right,)
                factors = w.factors[:m] + mid + w.factors[m + 2:]
                args = w.args[:m] + (X,) * (len(u) - 1) + w.args[m + 1:]
                args = tuple(a - 1 if a != X and a > slot else a for a in args)
                words.append(Word(factors, args))
        return SlotTensor(self.algebra, self.slots - 1, tuple(words))

    def combined(self) -> SlotTensor:
        """Expand every factor in the basis and merge words that coincide."""
        acc: dict[tuple, object] = {}
        for w in self.words:
            for coeff, key in basis_expansion(w.factors):
                acc[(w.args, key)] = acc.get((w.args, key), 0) + coeff
        basis = [self.algebra.basis(n) for n in range(self.algebra.dim)]
        words = []
        for (args, key), c in acc.items():
            if c:
                words.append(Word((basis[key[0]] * c,) + tuple(basis[n] for n in key[1:]), args))
        return SlotTensor(self.algebra, self.slots, tuple(words))

    def canonical_form(self, cap: int = DEFAULT_DEGREE_CAP) -> CanonicalForm:
        builder = FormBuilder(self.algebra, cap)
        builder.add_words(merge_words([(w.factors, w.args) for w in self.words]))
        return builder.build()

    def equals_as_map(self, other: SlotTensor, cap: int = DEFAULT_DEGREE_CAP) -> bool:
        if self.slots != other.slots:
            return False
        return (self - other).canonical_form(cap).is_zero()

    def __str__(self) -> str:
        return format_slot_tensor(self)

    def __repr__(self) -> str:
        return f"SlotTensor(slots={self.slots}, {self})"


def _segments(w: Word) -> list[list[Element]]:
    """Split a word at its slots; each segment is a monomial in ``x``."""
    segs = [[w.factors[0]]]
    for a, f in zip(w.args, w.factors[1:]):
        if a == X:
            segs[-1].append(f)
        else:
            segs.append([f])
    return segs


def format_slot_tensor(t: SlotTensor, sep: str = "@") -> str:
    """Print in ``x@1 - jx@1`` style; requires slots in increasing order within each word."""
    if t.slots == 0:
        return str(t.to_polynomial())
    signed = []
    for w in t.words:
        order = [a for a in w.args if a != X]
        if order != sorted(order):
            signed.append(("+", "<word with permuted slots>"))
            continue
        sign = 1
        pieces = []
        for seg in _segments(w):
            s, body = format_monomial(seg)
            if s == "-":
                sign = -sign
            if body == "0":
                sign = 0
            pieces.append(body if (" " not in body or body.startswith("(")) else f"({body})")
        if sign == 0:
            continue
        signed.append(("-" if sign < 0 else "+", sep.join(pieces)))
    return format_terms(signed)
