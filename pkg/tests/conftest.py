import re
from fractions import Fraction

import pytest

from cantor_ap.exact_core import Interval


# --- naive oracles, deliberately independent of the library code paths ------

def naive_member(raw, x):
    """x in the union of a raw (unsorted, overlapping) list of (lo, hi) pairs."""
    return any(lo <= x <= hi for lo, hi in raw)


def naive_stage(N, L):
    """C_L by literally splitting every interval L times."""
    rho = Fraction(N - 1, 2 * N)
    comps = [(Fraction(0), Fraction(1))]
    for _ in range(L):
        nxt = []
        for lo, hi in comps:
            child = (hi - lo) * rho
            nxt.append((lo, lo + child))
            nxt.append((hi - child, hi))
        comps = nxt
    return comps


def as_pairs(s):
    return [(c.lo, c.hi) for c in s]


def iv(lo, hi):
    return Interval(Fraction(lo), Fraction(hi))


# --- one summary line per acceptance criterion -------------------------------

_acceptance = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        prev = _acceptance.get(key)
        if prev != "FAIL":
            _acceptance[key] = "PASS" if report.passed else (
                "SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), verdict in sorted(_acceptance.items()):
        terminalreporter.write_line(f"criterion {n} [{name}]: {verdict}")


@pytest.fixture
def unit():
    return iv(0, 1)
