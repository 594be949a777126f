"""Exact coefficient arrays of multilinear maps built from algebra products.

A product expression with ``n`` linear arguments is turned into an object
array of shape ``(d,) * n + (d,)``: entry ``[i1, ..., in, k]`` is the
``e_k`` coordinate of the expression evaluated at ``(e_i1, ..., e_in)``.
Homogeneous polynomial maps are compared after symmetrizing over the axes
that all carry the variable ``x`` (polarization is exact in characteristic 0).
"""

from __future__ import annotations

from itertools import permutations
from math import factorial
from typing import Sequence

import numpy as np

from .algebra import Q, AlgebraSpec, Element

X = -1  # argument label for the polynomial variable; slots use 0, 1, ...


def const_array(e: Element) -> np.ndarray:
    return np.array(e.coords, dtype=object)


def identity_array(d: int) -> np.ndarray:
    a = np.zeros((d, d), dtype=object)
    for n in range(d):
        a[n, n] = 1
    return a


_STRUCTURE: dict[str, np.ndarray] = {}


def structure_tensor(algebra: AlgebraSpec) -> np.ndarray:
    """Object array ``T[p, q, k] = C_pq^k``."""
    t = _STRUCTURE.get(algebra.name)
    if t is None or t.shape[0] != algebra.dim:
        d = algebra.dim
        t = np.zeros((d, d, d), dtype=object)
        t[...] = Q(0)
        for p, q, k, c in algebra.products:
            t[p, q, k] += c
        _STRUCTURE[algebra.name] = t
    return t


def mul_arrays(algebra: AlgebraSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Array of ``u * v`` where ``u``, ``v`` have arrays ``a``, ``b`` (argument axes concatenate)."""
    bt = np.tensordot(b, structure_tensor(algebra), axes=([b.ndim - 1], [1]))  # (b..., p, k)
    bt = np.moveaxis(bt, -2, 0)
    return np.tensordot(a, bt, axes=([a.ndim - 1], [0]))


def word_array(algebra: AlgebraSpec, factors: Sequence[Element], nargs: int) -> np.ndarray:
    """Array of ``f0 a1 f1 a2 ... an fn`` multiplied strictly left to right."""
    ident = identity_array(algebra.dim)
    acc = const_array(factors[0])
    for f in factors[1:]:
        acc = mul_arrays(algebra, acc, ident)
        if not _is_unit(f):
            acc = mul_arrays(algebra, acc, const_array(f))
    return acc


_SANDWICH: dict[str, np.ndarray] = {}


def sandwich_tensor(algebra: AlgebraSpec) -> np.ndarray:
    """Object array ``S[p, a, q, k]``: the ``e_k`` coordinate of ``e_p e_a e_q`` (associative algebras)."""
    s = _SANDWICH.get(algebra.name)
    if s is None or s.shape[0] != algebra.dim:
        t = structure_tensor(algebra)
        s = np.tensordot(t, t, axes=([2], [0]))  # (p, a, q, k)
        _SANDWICH[algebra.name] = s
    return s


def sum_words_array(algebra: AlgebraSpec, factor_lists: Sequence[Sequence[Element]]) -> np.ndarray:
    """Array of ``sum_w f0 a1 f1 ... an fn`` over words of one length, for associative algebras.

    The array is linear in ``f0``, so each word is split along the basis
    directions of ``f0`` with the coefficient moved into ``f1``; each level
    then needs one contraction per basis direction, however many words share it.
    """
    if len(factor_lists[0]) == 1:
        total = algebra.zero()
        for (f,) in factor_lists:
            total = total + f
        return const_array(total)
    groups: dict[int, dict[tuple[Element, ...], Element]] = {}
    for fs in factor_lists:
        first, rest = fs[1], tuple(fs[2:])
        for p, c in enumerate(fs[0].coords):
            if c:
                tails = groups.setdefault(p, {})
                tails[rest] = tails[rest] + first * c if rest in tails else first * c
    sandwich = sandwich_tensor(algebra)
    total = None
    for p, tails in groups.items():
        lists = [(f,) + rest for rest, f in tails.items() if f]
        if not lists:
            continue
        tail = sum_words_array(algebra, lists)  # (args..., q)
        arr = np.moveaxis(np.tensordot(tail, sandwich[p], axes=([tail.ndim - 1], [1])), -2, 0)
        total = arr if total is None else total + arr
    if total is None:
        n = len(factor_lists[0]) - 1
        total = np.zeros((algebra.dim,) * (n + 1), dtype=object)
        total[...] = Q(0)
    return total


def merge_words(words):
    """Sum ``(factors, labels)`` words that differ only in their first or only in their last factor.

    Exact and cheap; cancellations such as ``u x v - u x v`` vanish before any
    array is built.
    """
    for pos in (0, -1):
        acc: dict = {}
        for factors, labels in words:
            rest = factors[1:] if pos == 0 else factors[:-1]
            key = (rest, tuple(labels))
            acc[key] = acc[key] + factors[pos] if key in acc else factors[pos]
        words = []
        for (rest, labels), f in acc.items():
            factors = (f,) + rest if pos == 0 else rest + (f,)
            if all(factors):
                words.append((factors, labels))
    return words


def _is_unit(e: Element) -> bool:
    return e.coords[0] == 1 and not any(e.coords[1:])


def arrange(array: np.ndarray, labels: Sequence[int]) -> tuple[int, np.ndarray]:
    """Reorder argument axes to ``(x axes..., slot 0, slot 1, ..., out)``.

    Returns the number of ``x`` axes and the transposed array.
    """
    xs = [n for n, lab in enumerate(labels) if lab == X]
    slots = sorted((lab, n) for n, lab in enumerate(labels) if lab != X)
    order = xs + [n for _, n in slots] + [len(labels)]
    return len(xs), np.transpose(array, order)


def symmetrize(array: np.ndarray, n: int) -> np.ndarray:
    """Average over all permutations of the first ``n`` axes."""
    if n <= 1:
        return array
    rest = list(range(n, array.ndim))
    total = np.zeros(array.shape, dtype=object)
    for perm in permutations(range(n)):
        total = total + np.transpose(array, list(perm) + rest)
    return total * Q(1, factorial(n))


def arrays_equal(a: np.ndarray | None, b: np.ndarray | None) -> bool:
    if a is None and b is None:
        return True
    if a is None:
        return not np.any(b)
    if b is None:
        return not np.any(a)
    return a.shape == b.shape and bool(np.all(a == b))


class CanonicalForm:
    """Symmetrized coefficient arrays keyed by ``(x-degree, number of slots)``.

    Two expressions define the same map iff their canonical forms are equal.
    """

    def __init__(self, arrays: dict[tuple[int, int], np.ndarray]):
        self.arrays = {key: arr for key, arr in arrays.items() if np.any(arr)}

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        keys = set(self.arrays) | set(other.arrays)
        return all(arrays_equal(self.arrays.get(k), other.arrays.get(k)) for k in keys)

    def __hash__(self):
        return hash(tuple(sorted((k, tuple(v.flat)) for k, v in self.arrays.items())))

    def degrees(self) -> list[int]:
        return sorted({k[0] for k in self.arrays})

    def is_zero(self) -> bool:
        return not self.arrays

    def __repr__(self):
        return f"CanonicalForm(keys={sorted(self.arrays)})"


class FormBuilder:
    """Accumulates labelled arrays then symmetrizes once per key."""

    def __init__(self, algebra: AlgebraSpec, degree_cap: int | None = None):
        self.algebra = algebra
        self.degree_cap = degree_cap
        self._acc: dict[tuple[int, int], np.ndarray] = {}

    def add(self, array: np.ndarray, labels: Sequence[int], scale=1) -> None:
        nx, arr = arrange(array, labels)
        if self.degree_cap is not None and nx > self.degree_cap:
            from .poly import DegreeCapError

            raise DegreeCapError(f"degree {nx} exceeds the canonical-form cap {self.degree_cap}")
        key = (nx, len(labels) - nx)
        if scale != 1:
            arr = arr * scale
        if key in self._acc:
            self._acc[key] = self._acc[key] + arr
        else:
            self._acc[key] = arr

    def add_word(self, factors: Sequence[Element], labels: Sequence[int], scale=1) -> None:
        self.add(word_array(self.algebra, factors, len(labels)), labels, scale)

    def add_words(self, words) -> None:
        """Add ``(factors, labels)`` words, sharing work between words with equal labels."""
        if not self.algebra.is_associative:
            for factors, labels in words:
                self.add_word(factors, labels)
            return
        by_labels: dict[tuple[int, ...], list] = {}
        for factors, labels in words:
            by_labels.setdefault(tuple(labels), []).append(tuple(factors))
        for labels, factor_lists in by_labels.items():
            self.add(sum_words_array(self.algebra, factor_lists), labels)

    def build(self) -> CanonicalForm:
        return CanonicalForm({key: symmetrize(arr, key[0]) for key, arr in self._acc.items()})
