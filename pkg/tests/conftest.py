import pytest

from imark import engine
from imark.engine import validate_spec

# g-value tables as printed for the named games, heap sizes from 0.
IMARK_1_2 = [0, 1, 0, 1, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0, 1, 0,
             2, 0, 1, 0, 2, 0, 1, 0, 2, 0, 1, 0, 2, 0, 1, 0]
IMARK_12_2 = [0, 1, 2, 0, 1, 2, 3, 0, 2, 1, 0,
              2, 1, 0, 2, 1, 0, 2, 3, 0, 1, 2]
IMARK_24_2 = [0, 0, 1, 1, 2, 2, 0, 0, 1, 1, 3, 2,
              2, 0, 1, 1, 0, 2, 2, 0, 1, 1, 0, 2]
IMARK_48_2 = [0, 0, 1, 0, 2, 1, 2, 1, 1, 2, 0, 2,
              0, 0, 3, 0, 2, 1, 1, 1, 1, 2, 0, 2,
              3, 0, 2, 0, 0, 1, 1, 1, 1, 2, 0, 2]
MARK_G = [0, 1, 0, 2, 1, 2, 0, 1, 0, 2, 0, 1, 2, 1, 0, 2, 1]
MARK_A = [1, 3, 4, 5, 7, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 23]          # a_1..a_16
MARK_B = [0, 2, 6, 8, 10, 14, 18, 22, 24, 26, 30, 32, 34, 38, 40, 42, 46]    # b_0..b_16

# heaps with g == 2 in i-Mark({1},{2}) and g == 3 in i-Mark([1,2],{2})
GRUNDY_2_SET = [4, 6, 16, 20, 24, 28, 36, 44, 52, 60, 64, 68, 76, 80, 84, 92, 96, 100, 108, 112]
GRUNDY_3_SET = [6, 18, 42, 48, 54, 60, 66, 72, 78, 90, 102, 114, 126, 138, 150, 162, 168]

# misere outcome periods of i-Mark({a,2a},{2})
MISERE_PERIODS = {
    1: "NPN",
    2: "NNPPNN",
    3: "NNPPNNNPN",
    5: "NNPNNPPNPPNNNNN",
    7: "NNPNNNPPPNPPNNNNNNNPN",
    9: "NNPNNNPNPPPNNPPNNNNNNPNNNPN",
    11: "NNPNNNPNPNPPNNPPNNPNNNNPNNNPNNNPN",
}

# even a -> (preperiod length, number of exceptions), misere outcomes with period 3a
MISERE_PREPERIODS = {
    4: (7, 2), 6: (9, 2), 8: (61, 6), 10: (193, 6), 12: (105, 10), 14: (105, 8), 16: (313, 14),
}


def mark_floor_table(N):
    """Classic Mark g-values by direct mex over n-1 and floor(n/2)."""
    g = [0] * (N + 1)
    for n in range(1, N + 1):
        opts = {g[n - 1], g[n // 2]}
        m = 0
        while m in opts:
            m += 1
        g[n] = m
    return g


@pytest.fixture(scope="session")
def spec_1_2():
    return validate_spec([1], [2])


@pytest.fixture(scope="session")
def spec_24_2():
    return validate_spec([2, 4], [2])


@pytest.fixture(scope="session")
def table_1_2(spec_1_2):
    return engine.build_table(spec_1_2, 10**4)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
