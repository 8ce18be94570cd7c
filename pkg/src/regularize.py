"""Steklov and quadratic regularization of univariate objectives.

The Steklov function is the window average `mu(x, t) = (1/2t) * int_{x-t}^{x+t} f`.
Its x-partials and the mixed t-x partial have closed forms in f and f', so
the trajectory algorithms never integrate numerically. For polynomials every
quantity is summed from Taylor coefficients at x, which is exact and stays
well-conditioned as t approaches zero.
"""

import logging
import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq, minimize_scalar

from ._util import START_RESIDUAL_TOLERANCE, THRESHOLD_MARGIN, real_cbrt, sign, two_thirds_power
from .exceptions import (
    SteklovConvexificationError,
    SteklovMissingBracketError,
    SteklovMissingDerivativeError,
    SteklovNoBracketError,
    SteklovNonpositiveTError,
    SteklovNotCoerciveError,
    SteklovPreconditionError,
    SteklovUnboundedCurvatureError,
)
from .models import DepressedQuartic, ObjectiveFunction, Polynomial, RegularizerKind, StartMode, StartPoint
from .polyalg import antiderivative, differentiate, real_roots, root_bound, taylor_coefficients

logger = logging.getLogger(__name__)

QUADRATURE_RTOL = 1e-10

# Below this window half-width generic partials switch to their small-t limits.
SMALL_T = 1e-3
MIN_CURVATURE_WINDOW = 1e-6

VERIFY_GRID_POINTS = 10_000
_EXTREMA_GRID_POINTS = 4097
_GROWTH_FACTOR = 1.5
_MAX_GROWTH = 20

_MAX_BRACKET_RADIUS = 1e12
_MONOTONICITY_SAMPLES = 257
_NEWTON_STEPS = 5


class SteklovPartials(NamedTuple):
    mu_x: float
    mu_xx: float
    mu_tx: float


class QuadraticPartials(NamedTuple):
    phi: float
    phi_x: float
    phi_xx: float
    phi_tx: float


def _require_positive(t: float) -> None:
    if not t > 0.0:
        raise SteklovNonpositiveTError(f"Regularization parameter must be positive, got t={t}")


@lru_cache(maxsize=256)
def _antiderivative(p: Polynomial) -> Polynomial:
    return antiderivative(p)


# ---------------------------------------------------------------------------
# Steklov regularization
# ---------------------------------------------------------------------------


def steklov_value(obj: ObjectiveFunction, x: float, t: float) -> float:
    _require_positive(t)
    if obj.poly is not None:
        # (P(x+t) - P(x-t)) / 2t keeps only the odd Taylor terms of P at x.
        d = taylor_coefficients(_antiderivative(obj.poly), x)
        return math.fsum(d[j] * t ** (j - 1) for j in range(1, len(d), 2))

    integral, _ = quad(obj.f, x - t, x + t, epsabs=1e-14, epsrel=QUADRATURE_RTOL, limit=400)
    return integral / (2.0 * t)


def _polynomial_partials(p: Polynomial, x: float, t: float) -> SteklovPartials:
    d = taylor_coefficients(p, x)
    n = len(d) - 1
    mu_x = mu_xx = mu_tx = 0.0
    for k in range(1, n + 1, 2):
        w = t ** (k - 1)
        mu_x += d[k] * w
        if k + 1 <= n:
            mu_xx += (k + 1) * d[k + 1] * w
    for k in range(2, n, 2):
        mu_tx += k * d[k + 1] * t ** (k - 1)
    return SteklovPartials(mu_x, mu_xx, mu_tx)


def _generic_partials(obj: ObjectiveFunction, x: float, t: float) -> SteklovPartials:
    df_plus, df_minus = obj.df(x + t), obj.df(x - t)
    if t >= SMALL_T:
        mu_x = (obj.f(x + t) - obj.f(x - t)) / (2.0 * t)
        mu_xx = (df_plus - df_minus) / (2.0 * t)
        mu_tx = (0.5 * (df_plus + df_minus) - mu_x) / t
        return SteklovPartials(mu_x, mu_xx, mu_tx)

    # Second-order limits: mu_tx ~ t f'''/3, mu_x ~ f' + t^2 f'''/6, mu_xx ~ f''.
    df0 = obj.df(x)
    mu_tx = (df_plus - 2.0 * df0 + df_minus) / (3.0 * t) if t > 0.0 else 0.0
    if obj.d2f is not None:
        mu_xx = obj.d2f(x)
    else:
        # Exact window average of f''; the window is floored where f' differences cancel.
        h = max(t, MIN_CURVATURE_WINDOW)
        mu_xx = (obj.df(x + h) - obj.df(x - h)) / (2.0 * h)
    return SteklovPartials(df0 + 0.5 * t * mu_tx, mu_xx, mu_tx)


def steklov_partials_unchecked(obj: ObjectiveFunction, x: float, t: float) -> SteklovPartials:
    """`steklov_partials` extended continuously to t = 0."""
    if obj.poly is not None:
        return _polynomial_partials(obj.poly, x, t)
    return _generic_partials(obj, x, t)


def steklov_partials(obj: ObjectiveFunction, x: float, t: float) -> SteklovPartials:
    _require_positive(t)
    return steklov_partials_unchecked(obj, x, t)


def steklov_surface(obj: ObjectiveFunction, xs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Values of mu on the grid `ts x xs`; rows with t = 0 hold f itself."""
    out = np.empty((len(ts), len(xs)))
    for i, t in enumerate(ts):
        if t == 0.0:
            out[i] = [obj.f(float(x)) for x in xs]
        else:
            out[i] = [steklov_value(obj, float(x), float(t)) for x in xs]
    return out


# ---------------------------------------------------------------------------
# Depressed quartics
# ---------------------------------------------------------------------------


def quartic_mu_closed(q: DepressedQuartic, x: float, t: float) -> float:
    t2 = t * t
    return x**4 + (q.a2 + 2.0 * t2) * x * x + q.a1 * x + q.a0 + t2 * q.a2 / 3.0 + t2 * t2 / 5.0


def quartic_start(q: DepressedQuartic) -> StartPoint:
    """Convexifying `t0` and the unique minimizer `x0` of mu(., t0)."""
    if q.a2 >= 0.0:
        raise SteklovPreconditionError(f"Closed-form start needs a2 < 0, got a2={q.a2}")
    if q.a1 == 0.0:
        raise SteklovPreconditionError("Closed-form start needs a1 != 0 (symmetric quartic)")

    t0 = math.sqrt(-q.a2 / 2.0)
    x0 = -real_cbrt(q.a1 / 4.0)
    return StartPoint(t0=t0, x0=x0, residual=abs(4.0 * x0**3 + q.a1), mode=StartMode.closed_form_quartic)


def _flatness_radicand(q: DepressedQuartic) -> float:
    return -(3.0 * two_thirds_power(q.a1) + 2.0 * q.a2)


def quartic_flat_point(q: DepressedQuartic) -> tuple[float, float] | None:
    """Simultaneous root `(x_hat, t_hat)` of mu_x and mu_xx, if any."""
    radicand = _flatness_radicand(q)
    if radicand < 0.0:
        return None
    return real_cbrt(q.a1) / 2.0, 0.5 * math.sqrt(radicand)


def quartic_quasiconvexity(q: DepressedQuartic) -> tuple[bool, float]:
    """Whether f is quasi-convex, and the smallest t making mu(., t) quasi-convex."""
    is_quasiconvex = -16.0 * (8.0 * q.a2**3 + 27.0 * q.a1**2) <= 0.0
    return is_quasiconvex, 0.5 * math.sqrt(max(0.0, _flatness_radicand(q)))


# ---------------------------------------------------------------------------
# Convexification
# ---------------------------------------------------------------------------


def _evaluate_many(fn, xs: np.ndarray) -> np.ndarray:
    if isinstance(fn, Polynomial):
        return fn.evaluate_many(xs)
    return np.fromiter((fn(float(x)) for x in xs), dtype=float, count=len(xs))


def _derivative_extreme(obj: ObjectiveFunction, lo: float, hi: float, *, largest: bool) -> float:
    xs = np.linspace(lo, hi, _EXTREMA_GRID_POINTS)
    values = _evaluate_many(obj.df, xs)
    i = int(np.argmax(values) if largest else np.argmin(values))
    left, right = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    orientation = -1.0 if largest else 1.0
    refined = minimize_scalar(lambda x: orientation * obj.df(x), bounds=(left, right), method="bounded")
    candidates = (float(values[i]), obj.df(float(refined.x)))
    return max(candidates) if largest else min(candidates)


def _level_crossing(obj: ObjectiveFunction, level: float, start: float, direction: float) -> float:
    """Point beyond `start` (in `direction`) where f' crosses `level`."""

    def g(x: float) -> float:
        return obj.df(x) - level

    if g(start) == 0.0:
        return start
    width = max(1.0, abs(start))
    for _ in range(60):
        end = start + direction * width
        if sign(g(end)) != sign(g(start)):
            lo, hi = sorted((start, end))
            return brentq(g, lo, hi, xtol=1e-12, rtol=1e-12)
        width *= 2.0
    raise SteklovConvexificationError(f"f' never reaches {level:g} beyond {start:g}")


def _mu_xx_grid(obj: ObjectiveFunction, xs: np.ndarray, t: float) -> np.ndarray:
    return (_evaluate_many(obj.df, xs + t) - _evaluate_many(obj.df, xs - t)) / (2.0 * t)


def convexification_t0(
    obj: ObjectiveFunction,
    *,
    bracket: tuple[float, float] | None = None,
    grid_points: int = VERIFY_GRID_POINTS,
) -> float:
    """A t0 with mu_xx(., t0) > 0 on a verification grid.

    The candidate is the width between the points where f' leaves the range
    it takes on the non-convex core; it grows by a constant factor until the
    grid check passes.
    """
    if obj.poly is not None:
        p = obj.poly
        if p.degree % 2 or p.leading <= 0.0:
            raise SteklovNotCoerciveError(f"Convexification needs even degree and positive leading term: {p}")
        d2 = differentiate(differentiate(p))
        radius = root_bound(d2) if bracket is None else max(abs(bracket[0]), abs(bracket[1]))
        lo, hi = -radius, radius
    elif bracket is None:
        raise SteklovMissingBracketError(f"Objective {obj.label!r} needs a search interval to convexify")
    else:
        lo, hi = bracket

    alpha = _derivative_extreme(obj, lo, hi, largest=False)
    beta = _derivative_extreme(obj, lo, hi, largest=True)
    a_tilde = _level_crossing(obj, alpha, lo, -1.0)
    b_tilde = _level_crossing(obj, beta, hi, 1.0)
    t0 = max(b_tilde - a_tilde, np.finfo(float).tiny)

    for attempt in range(_MAX_GROWTH + 1):
        xs = np.linspace(lo - t0, hi + t0, grid_points)
        if bool(np.all(_mu_xx_grid(obj, xs, t0) > 0.0)):
            logger.debug("Convexifying t0=%g for %s after %d growth steps", t0, obj.label, attempt)
            return float(t0)
        logger.warning("Candidate t0=%g fails the convexity check for %s; growing", t0, obj.label)
        t0 *= _GROWTH_FACTOR

    raise SteklovConvexificationError(f"No convexifying t0 found for {obj.label}")


# ---------------------------------------------------------------------------
# Quadratic regularization
# ---------------------------------------------------------------------------


def quad_partials(
    obj: ObjectiveFunction, x: float, t: float, *, with_curvature: bool = True
) -> QuadraticPartials:
    """phi = f + (t/2) x^2 and its partials; phi_xx is NaN without curvature."""
    if obj.d2f is None and with_curvature:
        raise SteklovMissingDerivativeError(f"Objective {obj.label!r} has no second derivative")
    phi_xx = obj.d2f(x) + t if with_curvature and obj.d2f is not None else math.nan
    return QuadraticPartials(obj.f(x) + 0.5 * t * x * x, obj.df(x) + t * x, phi_xx, x)


def quad_t0(obj: ObjectiveFunction, *, l0: float | None = None) -> float:
    """Smallest t making phi(., t) convex, plus a small margin."""
    if l0 is None:
        if obj.poly is None:
            raise SteklovUnboundedCurvatureError(f"Objective {obj.label!r} needs an explicit curvature bound")
        d2 = differentiate(differentiate(obj.poly))
        if d2.degree == 0:
            l0 = d2.coeffs[0]
        elif d2.degree % 2 or d2.leading < 0.0:
            raise SteklovUnboundedCurvatureError(f"f'' of {obj.poly} is unbounded below")
        else:
            l0 = min(d2(r) for r in real_roots(differentiate(d2)).roots)
    return max(0.0, -l0) + THRESHOLD_MARGIN * (1.0 + abs(l0))


# ---------------------------------------------------------------------------
# Step 1: minimizer of the regularized function at t0
# ---------------------------------------------------------------------------


def _step_one_equation(obj: ObjectiveFunction, t0: float, kind: RegularizerKind):
    if kind == RegularizerKind.steklov:
        return (lambda x: obj.f(x + t0) - obj.f(x - t0)), (lambda x: obj.df(x + t0) - obj.df(x - t0))
    slope = (lambda x: obj.d2f(x) + t0) if obj.d2f is not None else None
    return (lambda x: obj.df(x) + t0 * x), slope


def _sign_changes(values: np.ndarray) -> list[int]:
    signs = np.sign(values)
    nonzero = np.flatnonzero(signs)
    return [int(nonzero[i]) for i in range(len(nonzero) - 1) if signs[nonzero[i]] != signs[nonzero[i + 1]]]


def solve_x0(
    obj: ObjectiveFunction,
    t0: float,
    kind: RegularizerKind,
    *,
    mode: StartMode = StartMode.convex_search,
) -> StartPoint:
    """Root of mu_x(., t0) or phi_x(., t0) by bracketing, refinement and Newton polish."""
    _require_positive(t0)
    g, slope = _step_one_equation(obj, t0, kind)

    radius = 1.0
    while sign(g(-radius)) == sign(g(radius)) and g(0.0) != 0.0:
        radius *= 2.0
        if radius > _MAX_BRACKET_RADIUS:
            raise SteklovNoBracketError(f"No sign change of the Step-1 equation within |x| <= {_MAX_BRACKET_RADIUS:g}")

    monotone = True
    if g(0.0) == 0.0:
        x0 = 0.0
    else:
        xs = np.linspace(-radius, radius, _MONOTONICITY_SAMPLES)
        values = np.array([g(float(x)) for x in xs])
        changes = _sign_changes(values)
        if len(changes) > 1:
            monotone = False
            logger.warning(
                "Step-1 equation changes sign %d times at t0=%g; t0 may be too small, using the smallest root",
                len(changes),
                t0,
            )
        if changes:
            i = changes[0]
            j = i + 1
            while values[j] == 0.0:
                j += 1
            lo, hi = float(xs[i]), float(xs[j])
        else:
            lo, hi = -radius, radius
        x0 = brentq(g, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=400)

    if slope is not None:
        for _ in range(_NEWTON_STEPS):
            gx, dg = g(x0), slope(x0)
            if gx == 0.0 or dg == 0.0 or not math.isfinite(dg):
                break
            candidate = x0 - gx / dg
            if not abs(g(candidate)) < abs(gx):
                break
            x0 = candidate

    if kind == RegularizerKind.steklov:
        residual = abs(g(x0)) / (2.0 * t0)
        scale = abs(obj.df(x0 + t0)) + abs(obj.df(x0 - t0))
    else:
        residual = abs(g(x0))
        scale = abs(obj.df(x0)) + abs(t0 * x0)
    if residual > START_RESIDUAL_TOLERANCE * (1.0 + scale):
        logger.warning("Step-1 residual %g exceeds tolerance at x0=%g, t0=%g", residual, x0, t0)

    logger.debug("Step 1 (%s): t0=%g x0=%.12g residual=%g", kind, t0, x0, residual)
    return StartPoint(t0=t0, x0=x0, residual=residual, mode=mode, monotone=monotone)


def shift_start_point(start: StartPoint, alpha: float, a: float) -> StartPoint:
    """Start point for g(x) = f(alpha x - a) given one for f."""
    if not alpha > 0.0:
        raise SteklovPreconditionError(f"Scale must be positive, got alpha={alpha}")
    return StartPoint(
        t0=start.t0 / alpha,
        x0=(start.x0 + a) / alpha,
        residual=start.residual * alpha * alpha,
        mode=start.mode,
        monotone=start.monotone,
    )
