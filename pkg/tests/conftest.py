from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import comb

import pytest

_criteria: dict[int, str] = {}
_outcomes: dict[int, list[str]] = defaultdict(list)


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker:
            number, title = marker.args
            _criteria[number] = title
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _outcomes[value].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _outcomes.get(number, [])
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = f"FAIL ({results.count('failed')} of {len(results)} checks failed)"
        terminalreporter.write_line(f"criterion {number}: {status:<8} {_criteria[number]}")


def subset_sum_oracle(blocks, n, weight):
    """Boundary sum by walking every subset as a Python set; no bitmask tricks."""
    from itertools import combinations

    total = Fraction(0)
    for k in range(n + 1):
        for xs in combinations(range(1, n + 1), k):
            x = set(xs)
            size = sum(len(b) for b in blocks if set(b) & x and set(b) - x)
            total += weight(k) * size
    return total


def weight_oracle(j, n):
    if j == 1:
        return lambda k: Fraction(1)
    if j == 2:
        return lambda k: Fraction(1, k) if k else Fraction(0)
    return lambda k: Fraction(1, comb(n, k) * k) if k else Fraction(0)


@pytest.fixture
def oracle():
    return subset_sum_oracle
