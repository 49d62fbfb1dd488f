from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from levelalg.betti import (BettiTable, GorensteinShape, diesel_check, diesel_check_table, diesel_params,
                            functional_equation_check, gotzmann_check, koszul_betti_of_ideal,
                            koszul_betti_of_module, socle_from_table, third_difference, thm44_first_module)
from levelalg.forms import Form, parse_form
from levelalg.invsys import InverseModule, generic_power_sum, module_profile
from levelalg.level2 import enumerate_rrr2, rrr2_witness
from levelalg.macaulay import lex_growth_oracle, lex_segment_growth


def ideal(*texts):
    return [parse_form(t.replace("x", "y"), 3) for t in texts]


@pytest.fixture(scope="module")
def level_table():
    return koszul_betti_of_ideal(ideal("x1^2", "x1*x2", "x2^2", "x3^4"), 7)


def test_koszul_level_example(level_table):
    b = level_table
    assert b.degrees(1) == [2, 2, 2, 4]
    assert b.degrees(2) == [3, 3, 6, 6, 6]
    assert b.degrees(3) == [7, 7]
    assert socle_from_table(b) == (0, 0, 0, 0, 2)
    assert functional_equation_check((1, 3, 3, 3, 2), b)[0]


def test_koszul_gamma_one():
    b = koszul_betti_of_ideal(ideal("x1*x3", "x2*x3", "x2^2", "x1^4", "x3^5"), 8)
    assert b.degrees(1) == [2, 2, 2, 4, 5]
    assert socle_from_table(b) == (0, 0, 0, 0, 2)
    assert functional_equation_check((1, 3, 3, 3, 2), b)[0]


def test_koszul_complete_intersection():
    b = koszul_betti_of_ideal(ideal("x2", "x3", "x1^4"), 6)
    assert (b.degrees(1), b.degrees(2), b.degrees(3)) == ([1, 1, 4], [2, 5, 5], [6])


def test_koszul_square_of_maximal_ideal():
    gens = [Form.monomial(e) for e in [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]]
    b = koszul_betti_of_ideal(gens, 5)
    assert b.entries == {(1, 2): 6, (2, 3): 8, (3, 4): 3}
    assert socle_from_table(b) == (0, 3)


def test_koszul_cap_too_small():
    with pytest.raises(ValueError):
        koszul_betti_of_ideal(ideal("x1^2", "x1*x2", "x2^2", "x3^4"), 5)


def test_functional_equation_perturbation(level_table):
    ok, res = functional_equation_check((1, 3, 3, 3, 2), level_table.with_entry(1, 5, 1))
    assert not ok and res == [0, 0, 0, 0, 0, -1]


def test_functional_equation_trivial_quotient():
    assert not functional_equation_check((1,), BettiTable(3))[0]
    gens = [Form.monomial(e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    assert functional_equation_check((1,), koszul_betti_of_ideal(gens, 4))[0]


def test_table_text_roundtrip(level_table):
    t = BettiTable(3, level_table.entries, (1, 3, 3, 3, 2))
    assert BettiTable.from_text(t.to_text()) == t
    with pytest.raises(ValueError):
        BettiTable.from_text("1 2 3")
    with pytest.raises(ValueError):
        BettiTable(3, {(4, 5): 1})
    with pytest.raises(ValueError):
        socle_from_table(BettiTable(3, {(1, 2): 1}))


@pytest.mark.parametrize("T,want", [
    ((1, 3, 3, 3, 1), [1, 0, -3, 2, -2, 3, 0, -1]),
    ((1, 3, 4, 5, 5, 4, 3, 1), [1, 0, -2, 1, -1, 0, 1, -1, 2, 0, -1]),
    ((1, 3, 4, 4, 3, 1), [1, 0, -2, 0, 0, 0, 2, 0, -1]),
    ((1, 1), [1, -2, 0, 2, -1]),
])
def test_third_difference(T, want):
    assert third_difference(T) == want


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=10))
def test_third_difference_sums_to_zero(T):
    # (1 - z)^3 vanishes at z = 1
    assert sum(third_difference(T)) == 0
    assert len(third_difference(T)) == len(T) + 3


def test_diesel_params():
    p = diesel_params((1, 3, 3, 3, 1))
    assert (p.k, p.mu, p.forced_generators) == (2, 5, {2: 3, 4: 2})
    p = diesel_params((1, 3, 4, 4, 3, 1))
    assert (p.k, p.mu, p.forced_generators) == (2, 1, {2: 2})
    assert diesel_params((1, 1, 1)).degenerate
    with pytest.raises(ValueError):
        diesel_params((1, 3, 2))


def test_diesel_examples():
    T = (1, 3, 3, 3, 1)
    ok, trace = diesel_check(T, GorensteinShape((2, 2, 2, 4, 4), (5, 5, 5, 3, 3), 4))
    assert ok and trace["n"] == 5
    ok, trace = diesel_check(T, GorensteinShape((2, 2, 2), (5, 5, 5), 4))
    assert not ok and not trace["functional_equation"] and trace["residual"]
    ok, trace = diesel_check((1, 3, 4, 4, 3, 1), GorensteinShape((2, 2, 3, 3), (6, 6, 5, 5), 5))
    assert not ok and not trace["n_odd"]
    with pytest.raises(ValueError):
        GorensteinShape((3, 2), (5, 5), 4)


def test_diesel_table_structural_failure():
    ok, trace = diesel_check_table((1, 3, 3, 3, 1), BettiTable(3, {(1, 2): 3, (2, 5): 3, (3, 7): 2}))
    assert not ok and not trace["last_module"]


@pytest.mark.parametrize("m,e", [(3, 4), (4, 4), (6, 5), (5, 6)])
def test_generic_gorenstein_tables_pass(m, e):
    f = generic_power_sum(3, m, e, seed=11)
    mod = InverseModule([f])
    b = koszul_betti_of_module(mod)
    h = module_profile(mod)[0]
    assert socle_from_table(b) == (0,) * e + (1,)
    assert diesel_check_table(h, b)[0]


def test_thm44():
    assert thm44_first_module((1, 3, 4, 4, 3, 2)) == [[2, 2, 3, 4, 6]]
    assert thm44_first_module((1, 3, 3, 3, 2)) == [[2, 2, 2, 4], [2, 2, 2, 4, 5]]
    assert thm44_first_module((1, 3, 3, 3, 3, 2)) == [[2, 2, 2, 5], [2, 2, 2, 5, 6]]
    assert thm44_first_module((1, 3, 4, 5, 5, 4, 3, 2)) == [[2, 2, 4, 5, 8]]
    with pytest.raises(ValueError):
        thm44_first_module((1, 3, 5, 4, 3, 2))
    with pytest.raises(ValueError):
        thm44_first_module((1, 4, 4, 4, 2))


def test_rrr2_tables_round_trip():
    for h in enumerate_rrr2(3, 6, verify=False):
        if len(h) < 4:
            continue
        m = rrr2_witness(h)
        b = koszul_betti_of_module(m)
        e = len(h) - 1
        assert socle_from_table(b) == module_profile(m)[1]
        assert functional_equation_check(h, b)[0]
        assert b.degrees(1) in thm44_first_module(h)
        # the functional equation pins beta_{2,e+1} - beta_{1,e+1} to 3 - h_{e-2}
        assert b.beta(2, e + 1) - b.beta(1, e + 1) == 3 - h[e - 2]


@pytest.mark.parametrize("d", range(1, 5))
def test_gotzmann(d):
    assert gotzmann_check(3, d, comb(2 + d, d), comb(3 + d, d + 1))
    for size in range(comb(2 + d, d) + 1):
        # V is the complement of a lex segment of the given codimension
        grown = comb(3 + d, d + 1) - lex_growth_oracle(3, d, comb(2 + d, d) - size)
        assert gotzmann_check(3, d, size, grown)
        # a lex segment V itself, with its own growth
        assert gotzmann_check(3, d, size, lex_segment_growth(3, d, size))
    assert lex_segment_growth(3, d, comb(2 + d, d)) == comb(3 + d, d + 1)


def test_gotzmann_persistence_of_two():
    # complement 2 stays 2 in the next degree
    for d in range(2, 7):
        assert gotzmann_check(3, d, comb(2 + d, d) - 2, comb(3 + d, d + 1) - 2)
        assert not gotzmann_check(3, d, comb(2 + d, d) - 2, comb(3 + d, d + 1) - 3)
