
import pytest
from hypothesis import given, settings, strategies as st

from levelalg.bounds import Block, Recipe, build_recipe
from levelalg.invsys import GenericityError, verify_level
from levelalg.level2 import (Certificate, Verdict, census, check_a_lower_bound, count_shape_o_sequences, decide,
                             enumerate_rrr2, iarrobino_bound, is_rrr2_shape, rrr2_witness, screen_cor22,
                             screen_thm23, thm29_check)
from levelalg.macaulay import is_o_sequence, macaulay_upper


@pytest.mark.parametrize("h,u,delta,entry", [
    ((1, 6, 6, 6, 2), 1, 2, 4), ((1, 2, 2, 2), 1, 0, 2), ((1, 3, 3, 3, 2), 2, 1, 2),
])
def test_iarrobino(h, u, delta, entry):
    b = iarrobino_bound(h, u)
    assert (b.delta_u, b.guaranteed_entry) == (delta, entry)


def test_iarrobino_rejects():
    with pytest.raises(ValueError):
        iarrobino_bound((1, 3, 3, 1), 1)


@pytest.mark.parametrize("r", range(2, 10))
def test_iarrobino_rrr2_matches_closed_form(r):
    # for (1, r, ..., r, 2) the first entry bound is ceil((r - 2) / 3)
    assert iarrobino_bound((1, r, r, r, r, 2), 1).delta_u == -(-(r - 2) // 3)


def test_a_lower_bound():
    assert check_a_lower_bound(7) and check_a_lower_bound(2)
    assert not check_a_lower_bound(8)


def test_thm29():
    c = thm29_check((1, 3, 4, 4, 3, 2))
    assert c.verdict is Verdict.LEVEL and verify_level(c.witness, (1, 3, 4, 4, 3, 2))
    assert c.trace["gorenstein_part"] == [1, 2, 3, 3, 2, 1]
    assert thm29_check((1, 3, 5, 4, 3, 2)).verdict is Verdict.NOT_LEVEL
    c = thm29_check((1, 3, 3, 3, 3, 2))
    assert c.verdict is Verdict.LEVEL
    assert [str(f) for f in c.witness.generators] == ["y1*y3^4", "y2*y3^4"]
    c = thm29_check((1, 5, 5, 5, 5, 2))
    assert c.verdict is Verdict.UNKNOWN and c.trace["reason"] == "open for r >= 5"
    with pytest.raises(ValueError):
        thm29_check((1, 3, 4, 2))


def test_certificate_needs_witness():
    with pytest.raises(ValueError):
        Certificate(Verdict.LEVEL, "x")


def test_cor22():
    assert screen_cor22((1, 3, 6, 10, 9, 7, 5, 2)).verdict is Verdict.UNKNOWN
    assert screen_cor22((1, 2, 4, 3, 2)).verdict is Verdict.NOT_LEVEL
    assert screen_cor22((1, 3, 3, 3, 2)).verdict is Verdict.UNKNOWN


def test_thm23():
    c = screen_thm23((1, 3, 6, 10, 9, 7, 5, 2))
    assert c.verdict is Verdict.NOT_LEVEL
    mids = [p["h_double"] for p in c.trace["pairs"]]
    assert [1, 3, 2, 0, 1, 1, 1, 0] in mids
    assert all(p["status"] == "not an O-sequence" for p in c.trace["pairs"])
    assert screen_thm23((1, 3, 3, 3, 2)).verdict is Verdict.UNKNOWN
    assert screen_thm23((1, 3, 4, 4, 3, 2)).verdict is Verdict.UNKNOWN
    with pytest.raises(ValueError):
        screen_thm23((1, 4, 4, 2))


@pytest.mark.parametrize("h,verdict,stage", [
    ((1, 3, 6, 10, 9, 7, 5, 2), Verdict.NOT_LEVEL, "thm23-screen"),
    ((1, 3, 7, 5, 2), Verdict.NOT_LEVEL, "o-sequence"),
    ((1, 3, 5, 4, 3, 2), Verdict.NOT_LEVEL, "bounds"),
    ((1, 3, 4, 4, 3, 2), Verdict.LEVEL, "thm29"),
    ((1, 5, 11, 21, 36, 21, 11, 5, 2), Verdict.LEVEL, "witness-search"),
    ((1, 5, 5, 5, 5, 2), Verdict.LEVEL, "witness-search"),
    ((1, 2, 2), Verdict.LEVEL, "thm29"),
    ((1, 2), Verdict.LEVEL, "trivial"),
    ((1, 8, 7, 2), Verdict.UNKNOWN, "exhausted"),
    ((1, 3, 7, 2), Verdict.NOT_LEVEL, "o-sequence"),
])
def test_decide(h, verdict, stage):
    c = decide(h)
    assert (c.verdict, c.stage) == (verdict, stage)
    if verdict is Verdict.LEVEL:
        assert verify_level(c.witness, h)


def test_decide_unknown_notes_open_problems():
    assert decide((1, 8, 7, 2)).trace["note"] == "lower bound for a is open when r > 7"


def test_enumerate():
    assert enumerate_rrr2(2, 4) == [(1, 2, 2), (1, 2, 2, 2), (1, 2, 2, 2, 2)]
    assert enumerate_rrr2(3, 4) == [(1, 3, 2), (1, 3, 3, 2), (1, 3, 3, 3, 2), (1, 3, 4, 3, 2)]
    assert (1, 4, 4, 4, 2) in enumerate_rrr2(4, 4)
    with pytest.raises(ValueError):
        enumerate_rrr2(5, 4)


def shape_sequences(r, e):
    out = []

    def rec(prefix):
        if len(prefix) == e - 1:
            h = prefix + [r, 2]
            if is_o_sequence(h):
                out.append(h)
            return
        for v in range(1, macaulay_upper(prefix[-1], len(prefix) - 1) + 1):
            rec(prefix + [v])

    rec([1, r])
    return out


@pytest.mark.parametrize("r,e", [(2, 5), (3, 5), (3, 6), (3, 7), (4, 5), (4, 6)])
def test_unpruned_decide_matches_characterization(r, e):
    seqs = shape_sequences(r, e)
    assert len(seqs) == count_shape_o_sequences(r, e)
    levels = []
    for h in seqs:
        c = decide(h)
        assert c.verdict is not Verdict.UNKNOWN, h
        if c.verdict is Verdict.LEVEL:
            levels.append(tuple(h))
    members = [h for h in enumerate_rrr2(r, e, verify=False) if len(h) == e + 1]
    assert sorted(levels) == members


@pytest.mark.parametrize("r,e", [(2, 7), (3, 8), (4, 7)])
def test_census_accounts_for_everything(r, e):
    row = census(r, e)
    assert row.accounted == row.total == count_shape_o_sequences(r, e)
    assert row.members == [h for h in enumerate_rrr2(r, e) if len(h) == e + 1]


def test_rrr2_witnesses_verify():
    for r in (2, 3, 4):
        for h in enumerate_rrr2(r, 7, verify=False):
            assert is_rrr2_shape(h)
            assert verify_level(rrr2_witness(h, seed=2), h)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(3, 6), st.integers(1, 4), st.integers(1, 12), st.integers(0, 10 ** 6))
def test_decide_never_rejects_constructed_levels(r, e, v, gamma, seed):
    # any two-block power-sum module that is level must not be refuted
    v = min(v, r)
    rec = Recipe(r, e, (Block(tuple(range(1, v + 1)), max(1, gamma // 2)), Block(tuple(range(1, r + 1)), gamma)))
    try:
        m = build_recipe(rec, seed=seed)
    except GenericityError:
        return
    h = rec.predicted()
    assert verify_level(m, h)
    assert decide(h, seed=seed).verdict is not Verdict.NOT_LEVEL
