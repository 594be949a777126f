"""Recursive-descent parser and printer for algebra expressions.

Grammar::

    expr    := tterm (('+' | '-') tterm)*
    tterm   := term (('@' | '⊗') term)*
    term    := factor ('*'? factor)*
    factor  := '-' factor | power
    power   := primary ('^' INT)?
    primary := NUMBER | SYMBOL | '(' expr ')'

``NUMBER`` is an integer or ``p/q``. A run of letters is split greedily into
the longest known symbols, so ``jx`` is ``j x`` and, over the octonions,
``ijl`` is ``i jl``. ``x`` is the variable; over the octonions ``y``,
``y1``, ``y2``, ... name divisor slots. Parentheses are kept in the tree
because over the octonions they fix the order of multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .algebra import Q, AlgebraError, AlgebraSpec, Element, algebra_by_name, format_rational, to_q
from .multilinear import X
from .nonassoc import BracketPolynomial
from .poly import Polynomial
from .tensor import TensorSum
from .xtensor import SlotTensor, Word


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# AST ---------------------------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: Q


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class SlotRef:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Prod:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class TensorOp:
    parts: tuple["Expr", ...]


@dataclass(frozen=True)
class Group:
    inner: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Sym, Var, SlotRef, Neg, BinOp, Prod, TensorOp, Group, Pow]


# tokens ------------------------------------------------------------------------------
@dataclass(frozen=True)
class Token:
    kind: str  # NUM, SYM, OP, END
    text: str
    pos: int


_NUM = re.compile(r"\d+(?:/\d+)?")
_WORD = re.compile(r"[A-Za-z][A-Za-z0-9]*(?:/\d+)?")
_OPS = "+-*^()@⊗"


def _symbols(algebra: AlgebraSpec) -> list[str]:
    names = [n for n in algebra.basis_names if n != "1"] + ["x"]
    if not algebra.is_associative:
        names += ["y"] + [f"y{n}" for n in range(1, 10)]
    return sorted(names, key=len, reverse=True)


def _position(src: str, pos: int) -> tuple[int, int]:
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(src: str, algebra: AlgebraSpec) -> list[Token]:
    symbols = _symbols(algebra)
    tokens = []
    pos = 0
    while pos < len(src):
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _OPS:
            tokens.append(Token("OP", "@" if ch == "⊗" else ch, pos))
            pos += 1
            continue
        m = _NUM.match(src, pos)
        if m:
            if m.group().endswith("/0") or re.search(r"/0+$", m.group()):
                raise ParseError("zero denominator", *_position(src, pos))
            tokens.append(Token("NUM", m.group(), pos))
            pos = m.end()
            continue
        m = _WORD.match(src, pos)
        if m:
            word, start = m.group(), pos
            while word:
                for sym in symbols:
                    if word.startswith(sym):
                        tokens.append(Token("SYM", sym, start))
                        word, start = word[len(sym):], start + len(sym)
                        break
                else:
                    d = _NUM.match(word)
                    if d:
                        tokens.append(Token("NUM", d.group(), start))
                        word, start = word[d.end():], start + d.end()
                        continue
                    raise ParseError(f"unknown symbol {word!r} for algebra {algebra.name}",
                                     *_position(src, start))
            pos = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", *_position(src, pos))
    tokens.append(Token("END", "", len(src)))
    return tokens


# parser ------------------------------------------------------------------------------
@dataclass
class ParseResult:
    ast: Expr
    warnings: list[str]


class _Parser:
    def __init__(self, src: str, algebra: AlgebraSpec):
        self.src = src
        self.algebra = algebra
        self.tokens = tokenize(src, algebra)
        self.n = 0
        self.warnings: list[str] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.n]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, *_position(self.src, tok.pos))

    def accept(self, text: str) -> Token | None:
        if self.tok.kind == "OP" and self.tok.text == text:
            tok = self.tok
            self.n += 1
            return tok
        return None

    def parse(self) -> Expr:
        if self.tok.kind == "END":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        left = self.tterm()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.tok.text
            self.n += 1
            left = BinOp(op, left, self.tterm())
        return left

    def tterm(self) -> Expr:
        parts = [self.term()]
        while True:
            tok = self.accept("@")
            if tok is None:
                break
            if not self.algebra.is_associative:
                raise self.error("the tensor operator is not available for non-associative algebras; "
                                 "write slots y1, y2 with explicit brackets instead", tok)
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else TensorOp(tuple(parts))

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("NUM", "SYM") or (t.kind == "OP" and t.text == "(")

    def term(self) -> Expr:
        start = self.tok
        factors = [self.factor()]
        while True:
            if self.accept("*"):
                factors.append(self.factor())
            elif self._starts_factor():
                factors.append(self.factor())
            else:
                break
        if not self.algebra.is_associative:
            nonscalar = sum(1 for f in factors if not _is_scalar(f))
            if nonscalar >= 3:
                line, col = _position(self.src, start.pos)
                self.warnings.append(f"line {line}, column {col}: product of {nonscalar} factors "
                                     f"without brackets associates to the left")
        node = factors[0]
        for f in factors[1:]:
            node = Prod(node, f)
        return node

    def factor(self) -> Expr:
        if self.accept("-"):
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "NUM" or "/" in tok.text:
                raise self.error("exponent must be a non-negative integer")
            self.n += 1
            return Pow(base, int(tok.text))
        return base

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "NUM":
            self.n += 1
            return Num(to_q(tok.text))
        if tok.kind == "SYM":
            self.n += 1
            if tok.text == "x":
                return Var()
            if tok.text.startswith("y"):
                return SlotRef(tok.text)
            return Sym(tok.text)
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return Group(inner)
        if tok.kind == "END":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def _is_scalar(e: Expr) -> bool:
    if isinstance(e, Num):
        return True
    if isinstance(e, Neg):
        return _is_scalar(e.operand)
    return False


def _algebra(algebra: AlgebraSpec | str) -> AlgebraSpec:
    return algebra_by_name(algebra) if isinstance(algebra, str) else algebra


def parse_with_warnings(src: str, algebra: AlgebraSpec | str = "H") -> ParseResult:
    p = _Parser(src, _algebra(algebra))
    ast = p.parse()
    return ParseResult(ast, p.warnings)


def parse(src: str, algebra: AlgebraSpec | str = "H") -> Expr:
    return parse_with_warnings(src, algebra).ast


# printer -----------------------------------------------------------------------------
def to_text(e: Expr) -> str:
    if isinstance(e, Num):
        return format_rational(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Var):
        return "x"
    if isinstance(e, SlotRef):
        return e.name
    if isinstance(e, Neg):
        return "-" + to_text(e.operand)
    if isinstance(e, BinOp):
        return f"{to_text(e.left)} {e.op} {to_text(e.right)}"
    if isinstance(e, TensorOp):
        return "@".join(to_text(p) for p in e.parts)
    if isinstance(e, Group):
        return f"({to_text(e.inner)})"
    if isinstance(e, Pow):
        return f"{to_text(e.base)}^{e.exponent}"
    if isinstance(e, Prod):
        left, right = to_text(e.left), to_text(e.right)
        if isinstance(e.right, Neg):
            return f"{left}*{right}"
        if left.endswith(")") or right.startswith("("):
            return left + right
        if left[-1].isdigit() and right[0].isalpha():
            return left + right
        return f"{left} {right}"
    raise TypeError(f"not an expression node: {e!r}")


# evaluation --------------------------------------------------------------------------
Value = Union[Element, Polynomial, TensorSum, SlotTensor, BracketPolynomial]


def _slot_index(name: str, total: int) -> int:
    return 0 if name == "y" else int(name[1:]) - 1


def _max_slot(e: Expr) -> int:
    if isinstance(e, SlotRef):
        return _slot_index(e.name, 0) + 1
    children = []
    if isinstance(e, (Neg,)):
        children = [e.operand]
    elif isinstance(e, (BinOp, Prod)):
        children = [e.left, e.right]
    elif isinstance(e, TensorOp):
        children = list(e.parts)
    elif isinstance(e, Group):
        children = [e.inner]
    elif isinstance(e, Pow):
        children = [e.base]
    return max((_max_slot(c) for c in children), default=0)


class _Assoc:
    """Evaluation into one-slot-per-'@' tensors over an associative algebra."""

    def __init__(self, algebra: AlgebraSpec):
        self.alg = algebra

    def const(self, e: Element) -> SlotTensor:
        return SlotTensor(self.alg, 0, (Word((e,), ()),))

    def eval(self, e: Expr) -> SlotTensor:
        alg = self.alg
        if isinstance(e, Num):
            return self.const(alg.scalar(e.value))
        if isinstance(e, Sym):
            return self.const(alg[e.name])
        if isinstance(e, Var):
            one = alg.one()
            return SlotTensor(alg, 0, (Word((one, one), (X,)),))
        if isinstance(e, SlotRef):
            raise AlgebraError("slot names are only used over non-associative algebras")
        if isinstance(e, Neg):
            return -self.eval(e.operand)
        if isinstance(e, Group):
            return self.eval(e.inner)
        if isinstance(e, BinOp):
            left, right = self.eval(e.left), self.eval(e.right)
            if left.slots != right.slots:
                raise AlgebraError("cannot add tensors of different rank")
            return left + right if e.op == "+" else left - right
        if isinstance(e, Prod):
            return self.mul(self.eval(e.left), self.eval(e.right))
        if isinstance(e, Pow):
            base = self.eval(e.base)
            out = self.const(alg.one())
            for _ in range(e.exponent):
                out = self.mul(out, base)
            return out
        if isinstance(e, TensorOp):
            out = self.eval(e.parts[0])
            for part in e.parts[1:]:
                out = self.tensor(out, self.eval(part))
            return out
        raise TypeError(f"not an expression node: {e!r}")

    def mul(self, a: SlotTensor, b: SlotTensor) -> SlotTensor:
        words = []
        for wa in a.words:
            for wb in b.words:
                shifted = tuple(s if s == X else s + a.slots for s in wb.args)
                factors = wa.factors[:-1] + (wa.factors[-1] * wb.factors[0],) + wb.factors[1:]
                words.append(Word(factors, wa.args + shifted))
        return SlotTensor(self.alg, a.slots + b.slots, tuple(words))

    def tensor(self, a: SlotTensor, b: SlotTensor) -> SlotTensor:
        words = []
        for wa in a.words:
            for wb in b.words:
                shifted = tuple(s if s == X else s + a.slots + 1 for s in wb.args)
                words.append(Word(wa.factors + wb.factors, wa.args + (a.slots,) + shifted))
        return SlotTensor(self.alg, a.slots + b.slots + 1, tuple(words))


class _Bracket:
    """Evaluation into bracket polynomials; every product keeps its tree shape."""

    def __init__(self, algebra: AlgebraSpec, slots: int):
        self.alg = algebra
        self.slots = slots

    def const(self, e: Element) -> BracketPolynomial:
        return BracketPolynomial(self.alg, ((Q(1), _nonassoc.Const(e)),), self.slots)

    def eval(self, e: Expr) -> BracketPolynomial:
        alg = self.alg
        if isinstance(e, Num):
            return self.const(alg.scalar(e.value))
        if isinstance(e, Sym):
            return self.const(alg[e.name])
        if isinstance(e, Var):
            return BracketPolynomial(alg, ((Q(1), _nonassoc.VAR),), self.slots)
        if isinstance(e, SlotRef):
            return BracketPolynomial(alg, ((Q(1), _nonassoc.Slot(_slot_index(e.name, self.slots))),),
                                     self.slots)
        if isinstance(e, Neg):
            return -self.eval(e.operand)
        if isinstance(e, Group):
            return self.eval(e.inner)
        if isinstance(e, BinOp):
            left, right = self.eval(e.left), self.eval(e.right)
            return left + right if e.op == "+" else left - right
        if isinstance(e, Prod):
            return _nonassoc.bmul(self.eval(e.left), self.eval(e.right))
        if isinstance(e, Pow):
            if e.exponent == 0:
                return self.const(alg.one())
            base = self.eval(e.base)
            out = base
            for _ in range(e.exponent - 1):
                out = _nonassoc.bmul(out, base)
            return out
        raise AlgebraError("the tensor operator is not available for non-associative algebras")


from . import nonassoc as _nonassoc  # noqa: E402


def evaluate_ast(e: Expr, algebra: AlgebraSpec | str = "H") -> Value:
    """Associative algebras give the narrowest of Element, Polynomial, TensorSum, SlotTensor;
    non-associative algebras give a BracketPolynomial."""
    alg = _algebra(algebra)
    if not alg.is_associative:
        return _Bracket(alg, _max_slot(e)).eval(e)
    t = _Assoc(alg).eval(e)
    has_x = any(w.x_degree for w in t.words)
    if t.slots == 0:
        p = t.to_polynomial()
        return p if has_x else p.constant_term
    if not has_x:
        return TensorSum(alg, t.slots + 1, tuple(w.factors for w in t.words))
    return t


def parse_value(src: str, algebra: AlgebraSpec | str = "H") -> Value:
    alg = _algebra(algebra)
    return evaluate_ast(parse(src, alg), alg)


def as_element(value: Value, what: str = "value") -> Element:
    if isinstance(value, Element):
        return value
    if isinstance(value, BracketPolynomial) and value.degree <= 0 and not value.slots:
        return value(value.algebra.zero())
    raise AlgebraError(f"{what} must be an algebra element")


def as_polynomial(value: Value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Element):
        return Polynomial.constant(value)
    raise AlgebraError("expected a polynomial in x")


def as_bracket(value: Value) -> BracketPolynomial:
    if isinstance(value, BracketPolynomial):
        return value
    raise AlgebraError("expected a bracketed polynomial")


def as_tensor(value: Value, rank: int | None = None) -> TensorSum:
    if isinstance(value, Element):
        value = TensorSum.pure(value)
    if not isinstance(value, TensorSum):
        raise AlgebraError("expected an x-free tensor such as i@1 - 1@i")
    if rank is not None and value.rank != rank:
        raise AlgebraError(f"expected a rank-{rank} tensor, got rank {value.rank}")
    return value
