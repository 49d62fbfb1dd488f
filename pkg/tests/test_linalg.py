from fractions import Fraction

from hypothesis import given, settings, strategies as st

from levelalg.linalg import EchelonBasis, integer_row, nullspace, rank, rref


def naive_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col] / m[rk][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


entry = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=7, max_cols=7):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=1, max_size=max_rows))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_naive(rows):
    assert rank(rows) == naive_rank(rows)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_low_rank_products(rows):
    # duplicate and combine rows: rank must not change
    extra = [[a + 2 * b for a, b in zip(rows[0], rows[-1])], list(rows[0])]
    assert rank(rows + extra) == rank(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_nullspace(rows):
    n = len(rows[0])
    ns = nullspace(rows, n)
    assert len(ns) == n - rank(rows)
    for x in ns:
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, x)) == 0
    if ns:
        assert rank(ns) == len(ns)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_shape(rows):
    red, piv = rref(rows, len(rows[0]))
    assert len(red) == rank(rows)
    for k, (row, p) in enumerate(zip(red, piv)):
        assert row[p] == 1
        assert all(red[j][p] == 0 for j in range(len(red)) if j != k)


def test_echelon_incremental():
    eb = EchelonBasis(3)
    assert eb.add([1, 2, 3])
    assert not eb.add([2, 4, 6])
    assert eb.add([0, 1, 0])
    assert eb.contains([1, 0, 3])
    assert not eb.contains([0, 0, 1])
    assert eb.rank == 2


def test_integer_row():
    assert integer_row([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
    assert integer_row([4, 6, 0]) == [2, 3, 0]
    assert integer_row([0, 0]) == [0, 0]
