import math

import numpy as np
import pytest

from steklov.bench import gen_poly, instance_rng
from steklov.models import GenSpec, ObjectiveFunction
from steklov.oracle import grid_global_min, poly_global_min
from steklov.polyalg import differentiate

pytestmark = pytest.mark.slow

SEED = 1234
PANELS = 100_000
LOCATION_TOLERANCE = 1e-5


@pytest.mark.parametrize("degree", [4, 6, 8])
def test_grid_search_agrees_with_critical_points(degree: int) -> None:
    spec = GenSpec(degree=degree, seed=SEED)
    eps = float(np.finfo(float).eps)
    for index in range(200):
        p = gen_poly(spec, instance_rng(SEED, degree, index))
        exact = poly_global_min(p)
        grid = grid_global_min(ObjectiveFunction.from_polynomial(p), -exact.search_radius, exact.search_radius, PANELS)
        assert grid.min_value == pytest.approx(exact.min_value, rel=1e-7, abs=1e-9), (degree, index)
        if len(exact.minimizers) == 1 and len(grid.minimizers) == 1:
            (x_star,) = exact.minimizers
            # Function values locate a minimizer only to sqrt(eps |f| / f'').
            curvature = differentiate(differentiate(p))(x_star)
            resolution = 10.0 * math.sqrt(eps * (1.0 + abs(exact.min_value)) / curvature)
            tolerance = max(LOCATION_TOLERANCE, resolution)
            assert grid.minimizers[0] == pytest.approx(x_star, abs=tolerance), (degree, index, resolution)
