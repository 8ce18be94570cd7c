import math

import pytest

from steklov.exceptions import SteklovNotCoerciveError, SteklovPreconditionError
from steklov.models import CriticalKind, ObjectiveFunction
from steklov.oracle import grid_global_min, poly_global_min

# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def test_quartic(quartic_61) -> None:
    truth = poly_global_min(quartic_61.poly)
    assert truth.minimizers == pytest.approx((7.0,))
    assert truth.min_value == pytest.approx(-833.0)
    assert [c.x for c in truth.critical_points] == pytest.approx([-2.0, 1.0, 7.0])
    assert [c.value for c in truth.critical_points] == pytest.approx([-104.0, 31.0, -833.0])
    assert [c.kind for c in truth.critical_points] == [CriticalKind.min, CriticalKind.max, CriticalKind.min]


def test_symmetric_quartic_reports_both_minimizers(make_poly) -> None:
    truth = poly_global_min(make_poly(1, 0, -0.98, 0, 1).poly)
    assert truth.minimizers == pytest.approx((-0.7, 0.7))


def test_sextic(sextic) -> None:
    truth = poly_global_min(sextic.poly)
    assert truth.minimizers == pytest.approx((9.0,))
    assert truth.min_value == pytest.approx(-27726.3)
    minima = [c.x for c in truth.critical_points if c.kind == CriticalKind.min]
    assert minima == pytest.approx([-4.0, 2.0, 9.0])


def test_degree10(degree10) -> None:
    truth = poly_global_min(degree10.poly)
    assert truth.minimizers == pytest.approx((9.0,), abs=1e-6)
    assert truth.min_value == pytest.approx(-2077224.75, rel=1e-6)


def test_degree20(degree20) -> None:
    truth = poly_global_min(degree20.poly)
    assert truth.minimizers == pytest.approx((-4.5,), abs=1e-6)
    assert truth.min_value == pytest.approx(-742786593463.8248, rel=1e-6)


def test_flat_minimum_is_found(make_poly) -> None:
    truth = poly_global_min(make_poly(1, 0, 0, 0, 0).poly)
    assert truth.minimizers == pytest.approx((0.0,), abs=1e-6)
    assert truth.critical_points[0].kind == CriticalKind.inflection


@pytest.mark.parametrize("descending", [[1, 0, 0, 0], [-1, 0, 0, 0, 0], [3.0]])
def test_not_coercive(make_poly, descending) -> None:
    with pytest.raises(SteklovNotCoerciveError):
        poly_global_min(make_poly(*descending).poly)


# ---------------------------------------------------------------------------
# Grid search
# ---------------------------------------------------------------------------


def test_grid_non_polynomial(quad_sine) -> None:
    truth = grid_global_min(quad_sine, -20.0, 20.0, 100_000)
    assert truth.minimizers == pytest.approx((-0.5167,), abs=1e-3)
    assert truth.search_radius == 20.0


def test_grid_parabola(make_poly) -> None:
    truth = grid_global_min(make_poly(1, -6, 9), 0.0, 10.0, 1000)
    assert truth.minimizers == pytest.approx((3.0,), abs=1e-6)
    assert truth.min_value == pytest.approx(0.0, abs=1e-12)


def test_grid_cosine() -> None:
    obj = ObjectiveFunction(f=math.cos, df=lambda x: -math.sin(x), label="cos")
    truth = grid_global_min(obj, 0.0, 2.0 * math.pi, 1000)
    assert truth.minimizers == pytest.approx((math.pi,), abs=1e-6)
    assert truth.min_value == pytest.approx(-1.0)


def test_grid_agrees_with_polynomial_oracle(sextic) -> None:
    exact = poly_global_min(sextic.poly)
    grid = grid_global_min(sextic, -exact.search_radius, exact.search_radius, 200_000)
    assert grid.minimizers == pytest.approx(exact.minimizers, abs=1e-5)
    assert grid.min_value == pytest.approx(exact.min_value, rel=1e-7)


def test_grid_preconditions(quad_sine) -> None:
    with pytest.raises(SteklovPreconditionError):
        grid_global_min(quad_sine, 1.0, 1.0, 10)
    with pytest.raises(SteklovPreconditionError):
        grid_global_min(quad_sine, 0.0, 1.0, 1)
