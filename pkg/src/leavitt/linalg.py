"""Formal linear combinations and exact Gaussian elimination.

Matrices are small (bounded complex slices), so plain dense lists of exact
scalars are all we need.
"""
from __future__ import annotations

from typing import Iterable

from .scalars import RATIONALS


class LinearCombination:
    """A finite linear combination: map from keys to nonzero exact scalars."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in dict(terms).items():
                if c:
                    self.terms[key] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def single(cls, key, coeff):
        el = cls()
        if coeff:
            el.terms[key] = coeff
        return el

    @classmethod
    def from_items(cls, items: Iterable[tuple[object, object]]):
        acc = {}
        for key, c in items:
            s = acc.get(key)
            s = c if s is None else s + c
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        el = cls()
        el.terms = acc
        return el

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self).from_items(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = type(self)()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def scaled(self, c):
        out = type(self)()
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def coefficient(self, key):
        return self.terms.get(key)

    def __repr__(self):
        return f"{type(self).__name__}({self.terms!r})"


def rref(rows: list[list], field=RATIONALS) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (in place on a copy). Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list], field=RATIONALS) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: list[list], field=RATIONALS) -> list[list]:
    """Basis of the right kernel {x : rows @ x = 0} of a dense matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, field)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    zero, one = field.zero(), field.one()
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def combinations_to_matrix(vectors: list[LinearCombination], index: dict, field=RATIONALS) -> list[list]:
    """Rows = vectors expressed in the coordinate order given by `index` (key -> column)."""
    zero = field.zero()
    rows = []
    for v in vectors:
        row = [zero] * len(index)
        for key, c in v.items():
            row[index[key]] = c
        rows.append(row)
    return rows


def sparse_rank(rows: list[dict], key=None) -> int:
    """Rank of a family of sparse rows (dicts key -> scalar) by forward
    elimination; exact, near-linear on the almost-disjoint rows produced by
    the differential. Keys must be totally ordered (or supply `key`)."""
    keyfn = key or (lambda k: k)
    pivots: dict = {}
    rank = 0
    for original in rows:
        row = {k: c for k, c in original.items() if c}
        while row:
            lead = min(row, key=keyfn)
            piv = pivots.get(lead)
            if piv is None:
                inv = row[lead]
                pivots[lead] = {k: c / inv for k, c in row.items()}
                rank += 1
                break
            f = row[lead]
            for k, c in piv.items():
                s = row.get(k)
                s = -f * c if s is None else s - f * c
                if s:
                    row[k] = s
                elif k in row:
                    del row[k]
    return rank


def span_equal(vecs_a: list[LinearCombination], vecs_b: list[LinearCombination], field=RATIONALS) -> bool:
    """Exact equality of spans of two families of combinations."""
    keys = sorted({k for v in vecs_a for k in v.terms} | {k for v in vecs_b for k in v.terms})
    index = {k: i for i, k in enumerate(keys)}
    if not keys:
        return not any(vecs_a) and not any(vecs_b)
    ra = rank(combinations_to_matrix(vecs_a, index, field), field)
    rb = rank(combinations_to_matrix(vecs_b, index, field), field)
    rab = rank(combinations_to_matrix(list(vecs_a) + list(vecs_b), index, field), field)
    return ra == rb == rab
