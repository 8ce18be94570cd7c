"""End-to-end runs on the builtin objectives."""

import pytest

from steklov.models import RunConfig, TrajectoryStatus, Verdict
from steklov.oracle import grid_global_min, poly_global_min
from steklov.trajectories import classify, run_quadratic, run_steklov, run_steklov_quartic


@pytest.mark.timeout(10)
def test_quartic(quartic_61) -> None:
    steklov = run_steklov_quartic(quartic_61.poly)
    assert steklov.x_final == pytest.approx(7.0, abs=1e-4)
    quadratic = run_quadratic(quartic_61, RunConfig.explicit(100.0))
    assert quadratic.x_final == pytest.approx(-2.0, abs=1e-3)


@pytest.mark.timeout(20)
def test_sextic(sextic) -> None:
    steklov = run_steklov(sextic, RunConfig.explicit(7.0))
    assert steklov.x_final == pytest.approx(9.0, abs=1e-3)
    assert steklov.f_final == pytest.approx(-27726.3, abs=0.05)
    quadratic = run_quadratic(sextic, RunConfig.explicit(4000.0))
    assert quadratic.x_final == pytest.approx(2.0, abs=1e-3)


@pytest.mark.timeout(60)
def test_degree10(degree10) -> None:
    truth = poly_global_min(degree10.poly)
    assert truth.min_value == pytest.approx(-2077224.75, rel=1e-6)

    steklov = run_steklov(degree10, RunConfig.explicit(7.0))
    assert steklov.status == TrajectoryStatus.reached_zero
    assert steklov.x_final == pytest.approx(9.0, abs=1e-3)
    assert classify(steklov, truth).verdict == Verdict.global_success

    quadratic = run_quadratic(degree10, RunConfig.explicit(2e6))
    assert quadratic.x_final == pytest.approx(-1.0, abs=1e-3)
    assert classify(quadratic, truth).verdict == Verdict.local_only


@pytest.mark.timeout(60)
def test_degree20(degree20) -> None:
    truth = poly_global_min(degree20.poly)
    assert truth.min_value == pytest.approx(-742786593463.8248, rel=1e-6)

    steklov = run_steklov(degree20, RunConfig.explicit(6.0))
    assert steklov.x_final == pytest.approx(-4.5, abs=1e-3)
    assert classify(steklov, truth).verdict == Verdict.global_success


@pytest.mark.timeout(10)
def test_non_polynomial(quad_sine) -> None:
    result = run_steklov(quad_sine, RunConfig.explicit(7.0))
    assert result.start.x0 == pytest.approx(-0.3896, abs=1e-3)
    assert result.x_final == pytest.approx(-0.5167, abs=1e-3)
    truth = grid_global_min(quad_sine, -20.0, 20.0, 100_000)
    assert classify(result, truth).verdict == Verdict.global_success
