import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from imark import engine
from imark.engine import Convention, GrundyTable, Outcome, build_table, options, outcome, validate_spec
from imark.errors import BadElement, Duplicate, EmptySpec, LimitExceeded

from conftest import IMARK_1_2, IMARK_24_2


def test_validate_spec():
    assert validate_spec([1], [2]).subtraction == (1,)
    spec = validate_spec([4, 2], [2])
    assert spec.subtraction == (2, 4)
    with pytest.raises(EmptySpec):
        validate_spec([], [])
    with pytest.raises(BadElement):
        validate_spec([0], [2])
    with pytest.raises(BadElement):
        validate_spec([1], [1])
    with pytest.raises(Duplicate):
        validate_spec([1, 1], [2])
    with pytest.raises(Duplicate):
        validate_spec([1], [3, 3])


def test_options_examples():
    assert options(validate_spec([1], [2]), 4) == [2, 3]
    assert options(validate_spec([2, 4], [2]), 7) == [3, 5]
    assert options(validate_spec([3, 5], [2, 7]), 0) == []
    # n - s and n / d coincide: 4 - 2 == 4 / 2
    assert options(validate_spec([2], [2]), 4) == [2]


def test_build_table_examples():
    assert build_table(validate_spec([1], [2]), 16).values.tolist() == IMARK_1_2[:17]
    assert build_table(validate_spec([2, 4], [2]), 11).values.tolist() == IMARK_24_2[:12]
    assert build_table(validate_spec([4, 8], [2]), 0).values.tolist() == [0]


def test_outcome_examples():
    spec = validate_spec([1], [2])
    assert outcome(spec, Convention.NORMAL, 9) is Outcome.P
    assert outcome(spec, Convention.MISERE, 7) is Outcome.P
    assert outcome(validate_spec([3], [5]), "misere", 0) is Outcome.N


def test_budget_guard():
    spec = validate_spec([1], [2])
    with pytest.raises(LimitExceeded):
        build_table(spec, 100, budget=50)
    with pytest.raises(LimitExceeded):
        outcome(spec, Convention.MISERE, 100, budget=10)


def test_table_is_read_only(table_1_2):
    with pytest.raises(ValueError):
        table_1_2.values[0] = 5


spec_strategy = st.builds(
    lambda S, D: validate_spec(sorted(S), sorted(D)),
    st.sets(st.integers(1, 12), max_size=4),
    st.sets(st.integers(2, 9), min_size=1, max_size=3),
)


@settings(max_examples=60, deadline=None)
@given(spec_strategy, st.integers(0, 600))
def test_table_invariants(spec, N):
    table = build_table(spec, N)
    assert engine.check_mex(table) == []
    vals = table.values
    assert int(vals.max()) <= spec.max_options
    for n in range(N + 1):
        for m in options(spec, n):
            assert vals[m] != vals[n]


def _misere_by_recursion(spec, N):
    # independent recursive definition with memo
    memo = {}

    def is_p(n):
        if n not in memo:
            opts = options(spec, n)
            memo[n] = bool(opts) and all(not is_p(m) for m in opts)
        return memo[n]

    return [is_p(n) for n in range(N + 1)]


@settings(max_examples=40, deadline=None)
@given(spec_strategy, st.integers(0, 300))
def test_outcome_tables(spec, N):
    normal = engine.outcome_table(spec, Convention.NORMAL, N)
    table = build_table(spec, N)
    assert np.array_equal(normal, table.values == 0)
    assert engine.misere_table(spec, N).tolist() == _misere_by_recursion(spec, N)


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(2, 9), max_size=3), st.integers(2, 9))
def test_misere_terminal_flip_with_unit_subtraction(D, extra):
    spec = validate_spec([1, extra] if extra != 1 else [1], sorted(D))
    m = engine.misere_table(spec, 1)
    assert m[0] != m[1]


def test_binary_roundtrip(tmp_path, spec_24_2):
    table = build_table(spec_24_2, 5000)
    path = table.save(tmp_path / "t.imgt")
    data = path.read_bytes()
    assert data[:4] == b"IMGT" and data[4] == 1
    back = GrundyTable.load(path)
    assert back == table
    assert back.to_bytes() == data
    assert engine.check_mex(back) == []


def test_binary_layout(spec_1_2):
    raw = build_table(spec_1_2, 3).to_bytes()
    # magic, version, |S|=1, S, |D|=1, D, N=3, then 4 g-value bytes
    expected = b"IMGT" + bytes([1]) + (1).to_bytes(8, "little") * 2 + (1).to_bytes(8, "little") + (2).to_bytes(8, "little")
    expected += (3).to_bytes(8, "little") + bytes([0, 1, 0, 1])
    assert raw == expected


def test_bad_cache_rejected():
    with pytest.raises(ValueError):
        GrundyTable.from_bytes(b"NOPE" + bytes(20))


def test_csv_export(spec_1_2):
    text = build_table(spec_1_2, 4).to_csv()
    assert text == "n,g\n0,0\n1,1\n2,0\n3,1\n4,2\n"
