"""Exact linear algebra over Q.

Rows with rational entries are scaled to primitive integer rows and
eliminated fraction-free; no floating point is involved anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction


def integer_row(row: Sequence[Number]) -> list[int]:
    """Scale ``row`` by a positive rational to a primitive integer vector."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    return _primitive(ints)


def _primitive(v: list[int]) -> list[int]:
    g = gcd(*v)
    if g > 1:
        return [x // g for x in v]
    return v


class EchelonBasis:
    """Incrementally maintained echelon form of a row space.

    Rows are primitive integer vectors with pairwise distinct leading
    columns. ``add`` reports whether a vector enlarged the span.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[Number]) -> tuple[int, list[int]]:
        """Return ``(lead, residue)``; ``lead == -1`` when vec is in the span."""
        v = integer_row(vec)
        c = 0
        n = self.ncols
        while c < n:
            if v[c] == 0:
                c += 1
                continue
            row = self.rows.get(c)
            if row is None:
                return c, v
            a, b = row[c], v[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            v = _primitive([a * x - b * y for x, y in zip(v, row)])
            c += 1
        return -1, v

    def add(self, vec: Sequence[Number]) -> bool:
        lead, v = self.reduce(vec)
        if lead < 0:
            return False
        if v[lead] < 0:
            v = [-x for x in v]
        self.rows[lead] = v
        return True

    def contains(self, vec: Sequence[Number]) -> bool:
        return self.reduce(vec)[0] < 0


def rank(rows: Iterable[Sequence[Number]]) -> int:
    """Rank by Bareiss fraction-free elimination."""
    m = [integer_row(r) for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rk = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        for i in range(rk + 1, nrows):
            a = m[i][col]
            ri, rp = m[i], m[rk]
            m[i] = [(p * ri[k] - a * rp[k]) // prev for k in range(ncols)]
        prev = p
        rk += 1
        if rk == nrows:
            break
    return rk


def rref(rows: Iterable[Sequence[Number]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    basis = EchelonBasis(ncols)
    for r in rows:
        basis.add(r)
    pivots = sorted(basis.rows)
    out = [[Fraction(x, basis.rows[p][p]) for x in basis.rows[p]] for p in pivots]
    # back substitution
    for i in range(len(out) - 1, -1, -1):
        p = pivots[i]
        for k in range(i):
            f = out[k][p]
            if f:
                out[k] = [x - f * y for x, y in zip(out[k], out[i])]
    return out, pivots


def nullspace(rows: Iterable[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column, in column order."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[free]
        basis.append(x)
    return basis
