from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from levelalg.macaulay import (BinomialExpansion, binomial_expand, is_o_sequence, lex_growth_oracle,
                               lex_segment_growth, macaulay_upper, monomial_exponents)


def all_expansions(n, i):
    """Every sum C(t_i, i) + ... + C(t_j, j) = n with t_i > ... > t_j >= j >= 1."""
    out = []

    def rec(rest, k, max_top, terms):
        if rest == 0:
            out.append(tuple(terms))
            return
        if k < 1:
            return
        for t in range(k, max_top):
            c = comb(t, k)
            if c > rest:
                break
            rec(rest - c, k - 1, t, terms + [(t, k)])

    rec(n, i, n + i + 1, [])
    return out


@pytest.mark.parametrize("n,i,terms", [
    (10, 3, ((5, 3),)),
    (7, 3, ((4, 3), (3, 2))),
    (1, 4, ((4, 4),)),
    (1, 1, ((1, 1),)),
])
def test_expand_examples(n, i, terms):
    assert binomial_expand(n, i).terms == terms


def test_expand_string():
    assert str(binomial_expand(10, 3)) == "C(5,3)"
    assert str(binomial_expand(7, 3)) == "C(4,3) + C(3,2)"


def test_expand_rejects_nonpositive():
    with pytest.raises(ValueError):
        binomial_expand(0, 3)
    with pytest.raises(ValueError):
        binomial_expand(5, 0)


@pytest.mark.parametrize("n", range(1, 61))
@pytest.mark.parametrize("i", range(1, 5))
def test_expansion_unique_and_greedy(n, i):
    found = all_expansions(n, i)
    assert found == [binomial_expand(n, i).terms]


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 500), st.integers(1, 6))
def test_expansion_invariants(n, i):
    exp = binomial_expand(n, i)
    assert exp.is_valid()
    assert exp.value() == n


def test_invalid_expansion_detected():
    assert not BinomialExpansion(7, 3, ((4, 3), (2, 2))).is_valid()
    assert not BinomialExpansion(7, 3, ((3, 3), (3, 2), (2, 1))).is_valid()


@pytest.mark.parametrize("n,i,want", [(10, 3, 15), (7, 3, 9), (0, 4, 0), (3, 1, 6), (4, 1, 10)])
def test_upper_examples(n, i, want):
    assert macaulay_upper(n, i) == want


@pytest.mark.parametrize("i", range(2, 12))
def test_two_is_stable(i):
    assert macaulay_upper(2, i) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 500), st.integers(0, 500), st.integers(1, 6))
def test_upper_monotone(n, m, i):
    n, m = sorted((n, m))
    assert macaulay_upper(n, i) <= macaulay_upper(m, i)


def test_o_sequence_examples():
    assert is_o_sequence((1, 3, 6, 10, 9, 7, 5, 2))
    assert not is_o_sequence((1, 2, 4))
    assert is_o_sequence((1,))
    assert is_o_sequence((1, 1, 1, 1, 0))
    assert not is_o_sequence((1, 3, 0, 1))
    assert not is_o_sequence((2, 3))


def test_monomials_lex():
    assert monomial_exponents(3, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert len(monomial_exponents(4, 5)) == comb(8, 5)


@pytest.mark.parametrize("codim,d,size,want", [(3, 2, 6, 10), (3, 2, 0, 0), (2, 1, 2, 3), (3, 1, 1, 3)])
def test_lex_segment_growth(codim, d, size, want):
    assert lex_segment_growth(codim, d, size) == want


@pytest.mark.parametrize("codim", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_lex_oracle_matches_bound(codim, d):
    for dim_v in range(0, comb(codim - 1 + d, d) + 1):
        assert lex_growth_oracle(codim, d, dim_v) == macaulay_upper(dim_v, d)


def test_lex_growth_is_minimal_over_all_subsets():
    # among all monomial subsets of R_2 in 3 variables, lex segments grow least
    mons = monomial_exponents(3, 2)
    for size in range(len(mons) + 1):
        best = min(len({tuple(a + (v == k) for k, a in enumerate(e)) for e in sub for v in range(3)})
                   for sub in combinations(mons, size))
        assert lex_segment_growth(3, 2, size) == best
