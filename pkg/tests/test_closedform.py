import pytest
from hypothesis import given, settings, strategies as st

from imark import engine
from imark.closedform import (
    IMark12,
    IMarkA2A,
    IMarkRangeDiv2,
    IMarkRangeDivT,
    IMarkRangeOutcome,
    Mark,
    MiMarkA2A,
    MiMarkRange,
    family_for,
    fast_grundy,
    fast_outcome,
    gen_mark_sequences,
    sweep,
)
from imark.engine import Convention, Outcome, validate_spec
from imark.errors import OutsideDomain

from conftest import GRUNDY_2_SET, GRUNDY_3_SET, MARK_A, MARK_B, MARK_G, MISERE_PERIODS, mark_floor_table

N_SWEEP = 4000


def test_dispatch():
    assert isinstance(family_for(validate_spec([1], [2])), IMark12)
    assert isinstance(family_for(validate_spec([1, 2], [3])), IMarkRangeDivT)
    assert isinstance(family_for(validate_spec([1, 2, 3], [2])), IMarkRangeDiv2)
    assert isinstance(family_for(validate_spec([1, 2], [5])), IMarkRangeOutcome)
    assert isinstance(family_for(validate_spec([2, 4], [2])), IMarkA2A)
    assert isinstance(family_for(validate_spec([6, 12], [2])), IMarkA2A)
    assert isinstance(family_for(validate_spec([1, 2], [3]), "misere"), MiMarkRange)
    assert isinstance(family_for(validate_spec([5, 10], [2]), "misere"), MiMarkA2A)
    # d = 1 (mod t) is not covered, neither is odd a > 1 under normal play
    assert family_for(validate_spec([1, 2], [4])) is None
    assert family_for(validate_spec([3, 6], [2])) is None
    assert family_for(validate_spec([4, 8], [2]), "misere") is None
    assert family_for(validate_spec([3, 5], [2])) is None


def test_spec_examples():
    ev = IMark12()
    assert [ev.grundy(n) for n in (4, 6, 8, 16)] == [2, 2, 1, 2]
    assert ev.grundy(10**18 + 1) == 0
    assert IMarkRangeDivT(3).grundy(9) == 3
    assert IMarkRangeOutcome(3, 5).outcome(6) is Outcome.P
    assert MiMarkA2A(1).period_string() == "NPN"


def test_imark12_two_test_matches_oracle(table_1_2):
    g = table_1_2.values
    for n in range(4, table_1_2.limit + 1, 2):
        assert IMark12.is_two(n) == (g[n] == 2), n


def test_grundy_sets_listed():
    ev = IMark12()
    assert [n for n in range(113) if ev.grundy(n) == 2] == GRUNDY_2_SET
    ev3 = IMarkRangeDiv2(3)
    assert [n for n in range(169) if ev3.grundy(n) == 3] == GRUNDY_3_SET


def _families():
    out = [IMark12()]
    out += [IMarkRangeDivT(t) for t in range(2, 8)]
    out += [IMarkRangeDiv2(t) for t in range(3, 9)]
    out += [IMarkA2A(a) for a in (1, 2, 4, 6, 8, 10)]
    out += [IMarkRangeOutcome(t, d) for t in range(2, 6) for d in range(2, 8) if d % t != 1 and d != t and d != 2]
    out += [MiMarkRange(t, (t,)) for t in range(3, 7)]
    out += [MiMarkA2A(a) for a in (1, 2, 3, 5, 7, 9)]
    return out


@pytest.mark.parametrize("ev", _families(), ids=lambda ev: ev.describe())
def test_agrees_with_oracle(ev):
    spec = ev.spec
    if ev.convention is Convention.MISERE:
        ref = engine.misere_table(spec, N_SWEEP)
        heaps, fast = sweep(ev, N_SWEEP, "outcome")
    elif ev.has_grundy:
        ref = engine.build_table(spec, N_SWEEP).values
        heaps, fast = sweep(ev, N_SWEEP, "grundy")
    else:
        ref = engine.build_table(spec, N_SWEEP).outcomes()
        heaps, fast = sweep(ev, N_SWEEP, "outcome")
    bad = heaps[fast != ref[heaps]]
    assert bad.size == 0, f"first mismatch at n={bad[:5]}"


def test_outcome_only_family_refuses_grundy():
    ev = IMarkRangeOutcome(3, 5)
    with pytest.raises(OutsideDomain):
        ev.grundy(7)
    with pytest.raises(OutsideDomain):
        MiMarkA2A(3).grundy(7)


def test_odd_only_domain():
    ev = IMarkA2A(6)
    assert ev.in_domain(13) and not ev.in_domain(12)
    with pytest.raises(OutsideDomain):
        ev.grundy(12)
    with pytest.raises(OutsideDomain):
        fast_outcome(ev, 12)


def test_bad_parameters():
    with pytest.raises(ValueError):
        IMarkRangeDiv2(2)
    with pytest.raises(ValueError):
        MiMarkA2A(4)
    with pytest.raises(ValueError):
        IMarkA2A(3)
    with pytest.raises(ValueError):
        fast_grundy(IMark12(), -1)
    with pytest.raises(ValueError):
        fast_grundy(IMark12(), 2**64)


def test_bootstrap_comes_from_oracle():
    ev = IMarkRangeDivT(5)
    assert len(ev.bootstrap) == 25
    assert list(ev.bootstrap.prefix) == engine.build_table(ev.spec, 24).values.tolist()
    assert len(ev.bootstrap.stripped_set) == 5


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**62), st.sampled_from([f for f in _families() if f.has_grundy]))
def test_coherence_at_scale(n, ev):
    if not ev.in_domain(n):
        return
    g = ev.grundy(n)
    # mex over in-domain options; odd-only families have no even options to check
    opts = [ev.grundy(m) for m in ev.options(n) if ev.in_domain(m)]
    assert g not in opts
    if len(opts) == len(ev.options(n)):
        assert g == engine.mex(opts)
    assert (ev.outcome(n) is Outcome.P) == (g == 0)


@pytest.mark.parametrize("t", range(2, 8))
def test_exception_column_div_t(t):
    ev = IMarkRangeDivT(t)
    vals = {ev.grundy(k * t) for k in range(t, 3000)}
    assert vals == {t - 1, t}


@pytest.mark.parametrize("t", range(3, 9))
def test_exception_column_div_2(t):
    ev = IMarkRangeDiv2(t)
    start = 18 // t + 1 if t == 3 else 4
    vals = {ev.grundy(k * t) for k in range(start, 3000)}
    expected = {2, 3} if t == 3 else {t - 1, t}
    assert vals == expected


@pytest.mark.parametrize("a", [1, 2, 3, 5, 7, 9, 11, 13, 21])
def test_misere_purity(a):
    ev = MiMarkA2A(a)
    for n in range(0, 20 * a):
        assert ev.outcome(n) == ev.outcome(n + 3 * a) == ev.outcome(n + 3 * a * 10**9)


@pytest.mark.parametrize("a, row", sorted(MISERE_PERIODS.items()))
def test_misere_period_strings(a, row):
    assert MiMarkA2A(a).period_string() == row


def test_gen_mark_sequences():
    s = gen_mark_sequences(16)
    assert list(s.a_values) == MARK_A
    assert list(s.b_values) == MARK_B[:16]
    assert gen_mark_sequences(17).b_values[-1] == 46
    assert gen_mark_sequences(5).a_values == (1, 3, 4, 5, 7)
    assert gen_mark_sequences(1) == gen_mark_sequences(1)
    with pytest.raises(ValueError):
        gen_mark_sequences(0)


def test_mark_sequences_partition():
    s = gen_mark_sequences(2000)
    a, b = set(s.a_values), set(s.b_values)
    assert not a & b
    assert set(range(max(s.a_values))) <= a | b | {0}


def test_mark_against_floor_brute_force():
    ev = Mark()
    N = 20000
    ref = mark_floor_table(N)
    assert ref[:17] == MARK_G
    assert [ev.grundy(n) for n in range(N + 1)] == ref
    assert ev.options(9) == [4, 8]


def test_mark_p_positions_are_b_sequence():
    ev = Mark()
    s = gen_mark_sequences(500)
    p_positions = [n for n in range(s.b_values[-1] + 1) if ev.outcome(n) is Outcome.P]
    assert p_positions == list(s.b_values)
