"""Binomial expansions and Macaulay's growth bound.

Everything here is integer arithmetic on Python ints, so there is no
overflow regime.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence


@dataclass(frozen=True)
class BinomialExpansion:
    """``n = sum C(top, bottom)`` with bottoms i, i-1, ..., j and strictly
    decreasing tops, ``top_j >= j >= 1``."""

    n: int
    i: int
    terms: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return sum(comb(top, bottom) for top, bottom in self.terms)

    def is_valid(self) -> bool:
        if not self.terms or self.terms[0][1] != self.i:
            return False
        for (t0, b0), (t1, b1) in zip(self.terms, self.terms[1:]):
            if b1 != b0 - 1 or t1 >= t0:
                return False
        top, bottom = self.terms[-1]
        return bottom >= 1 and top >= bottom and self.value() == self.n

    def __str__(self) -> str:
        return " + ".join(f"C({t},{b})" for t, b in self.terms)


def binomial_expand(n: int, i: int) -> BinomialExpansion:
    """Greedy i-binomial expansion of ``n``."""
    if n < 1 or i < 1:
        raise ValueError(f"binomial_expand needs n >= 1 and i >= 1, got n={n}, i={i}")
    terms = []
    rest, k = n, i
    while rest > 0:
        # largest top with C(top, k) <= rest; top >= k since C(k, k) = 1 <= rest
        top = k
        while comb(top + 1, k) <= rest:
            top += 1
        terms.append((top, k))
        rest -= comb(top, k)
        k -= 1
    return BinomialExpansion(n, i, tuple(terms))


@lru_cache(maxsize=None)
def macaulay_upper(n: int, i: int) -> int:
    """Macaulay's bound ``n^<i>``; ``0^<i> = 0``."""
    if i < 1:
        raise ValueError("i must be positive")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    return sum(comb(top + 1, bottom + 1) for top, bottom in binomial_expand(n, i).terms)


def is_o_sequence(h: Sequence[int]) -> bool:
    """Macaulay's criterion: ``h_0 = 1`` and ``h_{d+1} <= h_d^<d>`` for ``d >= 1``.

    Trailing zeros are allowed (they are the implied zeros past the socle
    degree), so the reverse of a difference vector can be fed in as is.
    """
    if not h or h[0] != 1 or any(x < 0 for x in h):
        return False
    for d in range(1, len(h) - 1):
        if h[d + 1] > macaulay_upper(h[d], d):
            return False
    return True


@lru_cache(maxsize=None)
def monomial_exponents(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``degree`` in lex order, ``x1^degree`` first."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    # combinations_with_replacement yields x1-heavy tuples first, which is lex order
    return tuple(out)


def lex_segment_growth(codim: int, d: int, size: int) -> int:
    """Number of degree-(d+1) monomials in ``R_1 * L`` where ``L`` is the
    lex-initial segment of ``size`` monomials of degree ``d``."""
    mons = monomial_exponents(codim, d)
    if not 0 <= size <= len(mons):
        raise ValueError(f"segment size {size} outside [0, {len(mons)}]")
    grown = set()
    for e in mons[:size]:
        for v in range(codim):
            f = list(e)
            f[v] += 1
            grown.add(tuple(f))
    return len(grown)


def lex_growth_oracle(codim: int, d: int, dim_v: int) -> int:
    """Brute-force value of the maximal growth of a degree-d quotient piece of
    dimension ``dim_v``: the quotient by a lex segment of codimension
    ``dim_v`` in ``R_d`` has this dimension in degree ``d+1``.

    Independent of :func:`macaulay_upper`; agreement is Macaulay's theorem.
    """
    total = comb(codim - 1 + d, d)
    if not 0 <= dim_v <= total:
        raise ValueError(f"dim_v={dim_v} exceeds dim R_{d}={total}")
    return comb(codim + d, d + 1) - lex_segment_growth(codim, d, total - dim_v)
