from typing import Annotated, Final

import numpy as np
from pydantic import Field

# Classification tolerances: relative value gap and relative location distance.
VALUE_GAP_TOLERANCE: Final[float] = 1e-6
LOCATION_TOLERANCE: Final[float] = 1e-3

# Ties between global minimizers, relative to 1 + |min|.
TIE_TOLERANCE: Final[float] = 1e-9

# Step-1 residual bound, relative to 1 + local derivative scale.
START_RESIDUAL_TOLERANCE: Final[float] = 1e-10

# Margin added on top of threshold values (quasi-convexity, curvature bound).
THRESHOLD_MARGIN: Final[float] = 1e-6

DEFAULT_RTOL: Final[float] = 1e-8
DEFAULT_ATOL: Final[float] = 1e-12
DEFAULT_MAX_STEPS: Final[int] = 1_000_000

# Benchmark start parameters per degree.
STEKLOV_T0_DEFAULTS: Final[dict[int, float]] = {4: 6.0}
STEKLOV_T0_FALLBACK: Final[float] = 7.0
QUADRATIC_T0_DEFAULTS: Final[dict[int, float]] = {
    4: 1e3,
    6: 1e4,
    8: 1e5,
    10: 1e8,
    12: 1e8,
    14: 1e8,
    20: 1e10,
}

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
PositiveFloat = Annotated[float, Field(gt=0, allow_inf_nan=False)]


def real_cbrt(value: float) -> float:
    """Sign-preserving real cube root."""
    return float(np.cbrt(value))


def two_thirds_power(value: float) -> float:
    """`value^(2/3)` read as `(value^2)^(1/3)`, hence never negative."""
    return float(np.cbrt(value * value))


def sign(value: float) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def default_steklov_t0(degree: int) -> float:
    return STEKLOV_T0_DEFAULTS.get(degree, STEKLOV_T0_FALLBACK)


def default_quadratic_t0(degree: int) -> float:
    """Tabulated value for `degree`, or the next tabulated degree above it."""
    if degree in QUADRATIC_T0_DEFAULTS:
        return QUADRATIC_T0_DEFAULTS[degree]
    larger = [d for d in QUADRATIC_T0_DEFAULTS if d > degree]
    return QUADRATIC_T0_DEFAULTS[min(larger)] if larger else max(QUADRATIC_T0_DEFAULTS.values())
