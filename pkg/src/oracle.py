"""Brute-force ground truth for global minimization.

Polynomials are solved exactly up to root-finding accuracy by enumerating the
real critical points. Other smooth objectives fall back to a dense grid scan
followed by bounded local refinement of the most promising basins.
"""

import logging

import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import minimize_scalar

from ._util import TIE_TOLERANCE
from .exceptions import SteklovNotCoerciveError, SteklovPreconditionError
from .models import CriticalKind, CriticalPoint, ObjectiveFunction, OracleResult, Polynomial
from .polyalg import differentiate, real_roots

logger = logging.getLogger(__name__)

# |p''| at a critical point below this, relative to the evaluation scale, is an inflection.
INFLECTION_TOLERANCE = 1e-9

REFINED_BASINS = 5


def _ties(candidates: list[tuple[float, float]]) -> tuple[list[float], float]:
    best = min(v for _, v in candidates)
    cutoff = TIE_TOLERANCE * (1.0 + abs(best))
    return sorted(x for x, v in candidates if v - best <= cutoff), best


def _curvature_kind(d2: Polynomial, x: float) -> CriticalKind:
    curvature = d2(x)
    scale = 1.0 + float(npp.polyval(abs(x), np.abs(d2.array)))
    if abs(curvature) <= INFLECTION_TOLERANCE * scale:
        return CriticalKind.inflection
    return CriticalKind.min if curvature > 0.0 else CriticalKind.max


def poly_global_min(p: Polynomial) -> OracleResult:
    """Global minimizers of a coercive polynomial from its real critical points."""
    if p.degree < 2 or p.degree % 2 or p.leading <= 0.0:
        raise SteklovNotCoerciveError(f"Polynomial {p} is not coercive")

    dp = differentiate(p)
    d2 = differentiate(dp)
    roots = real_roots(dp)
    critical = tuple(CriticalPoint(x=r, value=p(r), kind=_curvature_kind(d2, r)) for r in roots.roots)

    minimizers, best = _ties([(c.x, c.value) for c in critical])
    logger.debug("Oracle: %d critical points, minimum %g at %s", len(critical), best, minimizers)
    return OracleResult(
        minimizers=tuple(minimizers),
        min_value=best,
        critical_points=critical,
        search_radius=roots.radius,
    )


def _grid_values(obj: ObjectiveFunction, xs: np.ndarray) -> np.ndarray:
    if obj.poly is not None:
        return obj.poly.evaluate_many(xs)
    return np.fromiter((obj.f(float(x)) for x in xs), dtype=float, count=len(xs))


def _basins(values: np.ndarray) -> np.ndarray:
    """Grid indices that are no larger than their neighbours."""
    padded = np.concatenate(([np.inf], values, [np.inf]))
    is_basin = (values <= padded[:-2]) & (values <= padded[2:])
    return np.flatnonzero(is_basin)


def grid_global_min(obj: ObjectiveFunction, lo: float, hi: float, panels: int) -> OracleResult:
    """Global minimizers on [lo, hi] by grid scan and refinement of the best basins."""
    if not lo < hi:
        raise SteklovPreconditionError(f"Grid search needs lo < hi, got [{lo}, {hi}]")
    if panels < 2:
        raise SteklovPreconditionError(f"Grid search needs at least 2 panels, got {panels}")

    xs = np.linspace(lo, hi, panels + 1)
    values = _grid_values(obj, xs)
    basins = _basins(values)
    best_basins = basins[np.argsort(values[basins], kind="stable")[:REFINED_BASINS]]

    xatol = 1e-10 * (hi - lo)
    candidates: list[tuple[float, float]] = []
    for i in best_basins:
        left, right = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, panels)])
        refined = minimize_scalar(obj.f, bounds=(left, right), method="bounded", options={"xatol": xatol})
        x, v = float(refined.x), float(refined.fun)
        if v > values[i]:
            x, v = float(xs[i]), float(values[i])
        candidates.append((x, v))

    minimizers, best = _ties(candidates)
    distinct: list[float] = []
    for x in minimizers:
        if not distinct or x - distinct[-1] > 10.0 * xatol:
            distinct.append(x)

    critical = tuple(CriticalPoint(x=x, value=v, kind=CriticalKind.min) for x, v in sorted(candidates))
    return OracleResult(
        minimizers=tuple(distinct),
        min_value=best,
        critical_points=critical,
        search_radius=max(abs(lo), abs(hi)),
    )
