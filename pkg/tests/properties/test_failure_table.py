"""Full failure-rate table over random polynomials; run with `-m table`."""

import os

import pytest

from steklov.bench import run_failure_table
from steklov.models import BenchMethod

pytestmark = pytest.mark.table

STEKLOV_CEILINGS = {4: 0.005, 6: 0.04, 8: 0.06, 10: 0.09, 12: 0.09, 14: 0.09, 20: 0.14}


def test_failure_table() -> None:
    report = run_failure_table(list(STEKLOV_CEILINGS), 1000, BenchMethod.both, seed=42, workers=os.cpu_count() or 1)
    for degree, ceiling in STEKLOV_CEILINGS.items():
        steklov, quadratic = report.row("steklov", degree), report.row("quadratic", degree)
        assert steklov.failure_rate <= ceiling, degree
        assert steklov.failure_rate < quadratic.failure_rate, degree

    assert 0.18 <= report.row("quadratic", 4).failure_rate <= 0.34
    assert report.row("quadratic", 6).failure_rate >= 0.45
    assert report.row("quadratic", 20).failure_rate >= 0.80
