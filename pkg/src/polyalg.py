"""Dense univariate polynomial arithmetic.

Coefficients are stored in ascending-degree order. Everything here is a pure
function of its inputs and returns new immutable values.
"""

import logging
import sys
from fractions import Fraction
from itertools import pairwise

import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import brentq

from .exceptions import SteklovDegenerateInputError, SteklovPreconditionError
from .models import DepressedQuartic, Polynomial, RootSet

logger = logging.getLogger(__name__)

ROOT_WIDTH_TOLERANCE = 1e-12
ROOT_CLUSTER_TOLERANCE = 1e-7
# Reported roots satisfy |p(r)| <= ROOT_RESIDUAL_TOLERANCE * root_residual_scale(p, r).
ROOT_RESIDUAL_TOLERANCE = 1e-10

# A critical point counts as a multiple root when |p| is within this many
# rounding errors of the Horner evaluation at that point.
_MULTIPLE_ROOT_ULPS = 1e3

ZERO = Polynomial(coeffs=(0.0,))


def evaluate(p: Polynomial, x: float) -> float:
    """Horner evaluation of `p` at `x`."""
    return p(x)


def differentiate(p: Polynomial) -> Polynomial:
    if p.degree == 0:
        return ZERO
    return Polynomial.from_array(npp.polyder(p.array))


def antiderivative(p: Polynomial) -> Polynomial:
    """The antiderivative vanishing at zero."""
    return Polynomial.from_array(npp.polyint(p.array, lbnd=0.0, k=0.0))


def compose_affine(p: Polynomial, alpha: float, a: float) -> Polynomial:
    """Expand `q(x) = p(alpha * x - a)` coefficientwise.

    The expansion runs in exact rational arithmetic and each coefficient is
    rounded once, so every coefficient of the result is the correctly rounded
    coefficient of the exact composition.
    """
    if alpha == 0.0:
        raise SteklovDegenerateInputError("Affine composition needs a nonzero scale")

    shift, scale = Fraction(-a), Fraction(alpha)
    acc = [Fraction(p.coeffs[-1])]
    for c in reversed(p.coeffs[:-1]):
        nxt = [v * shift for v in acc] + [Fraction(0)]
        for k, v in enumerate(acc):
            nxt[k + 1] += v * scale
        nxt[0] += Fraction(c)
        acc = nxt
    return Polynomial(coeffs=tuple(float(v) for v in acc))


def depress_quartic(p: Polynomial) -> DepressedQuartic:
    """Remove the cubic term of a monic quartic by the shift `y = x + b3/4`."""
    if p.degree != 4 or not p.is_monic:
        raise SteklovPreconditionError(f"Expected a monic quartic, got {p}")

    shift = p.coeffs[3] / 4.0
    q = compose_affine(p, 1.0, shift)
    a0, a1, a2 = (q.coeffs + (0.0, 0.0, 0.0))[:3]
    return DepressedQuartic(a2=a2, a1=a1, a0=a0, shift=shift)


def quartic_discriminant(q: DepressedQuartic) -> float:
    """Discriminant of the depressed quartic's derivative; `<= 0` iff quasi-convex."""
    return -16.0 * (8.0 * q.a2**3 + 27.0 * q.a1**2)


def taylor_coefficients(p: Polynomial, x: float) -> list[float]:
    """`p^(k)(x) / k!` for k = 0..degree, by repeated synthetic division."""
    b = list(p.coeffs)
    n = len(b) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            b[j] += x * b[j + 1]
    return b


def root_bound(p: Polynomial) -> float:
    """Radius containing all real roots: the smaller of the Cauchy and Fujiwara bounds."""
    if p.degree == 0:
        return 1.0
    ratios = np.abs(p.array[:-1] / p.leading)
    cauchy = 1.0 + float(ratios.max())
    n = p.degree
    powers = [ratios[n - k] ** (1.0 / k) for k in range(1, n)]
    powers.append((ratios[0] / 2.0) ** (1.0 / n))
    fujiwara = 2.0 * float(max(powers))
    return min(cauchy, fujiwara) if fujiwara > 0.0 else cauchy


def _evaluation_scale(p: Polynomial, x: float) -> float:
    return float(npp.polyval(abs(x), np.abs(p.array)))


def root_residual_scale(p: Polynomial, x: float) -> float:
    """Bound on the size of `p` near `x` for roots located to the root width tolerance."""
    return _evaluation_scale(p, x) + (1.0 + abs(x)) * _evaluation_scale(differentiate(p), x)


def _is_multiple_root(p: Polynomial, x: float) -> bool:
    return abs(p(x)) <= _MULTIPLE_ROOT_ULPS * sys.float_info.epsilon * _evaluation_scale(p, x)


def _isolate(p: Polynomial, lo: float, hi: float) -> list[float]:
    """Roots of `p` in [lo, hi], unsorted and possibly clustered."""
    if p.degree == 0:
        return []
    if p.degree == 1:
        r = -p.coeffs[0] / p.coeffs[1]
        return [r] if lo <= r <= hi else []

    # Between consecutive critical points p is monotone, so each panel holds
    # at most one simple root.
    critical = sorted(_isolate(differentiate(p), lo, hi))
    knots = [lo, *critical, hi]
    roots = [k for k in knots if p(k) == 0.0]
    for left, right in pairwise(knots):
        f_left, f_right = p(left), p(right)
        if f_left * f_right < 0.0:
            roots.append(
                brentq(p, left, right, xtol=ROOT_WIDTH_TOLERANCE, rtol=ROOT_WIDTH_TOLERANCE, maxiter=200)
            )
    roots.extend(c for c in critical if _is_multiple_root(p, c))
    return roots


def _merge_clusters(p: Polynomial, roots: list[float]) -> list[float]:
    merged: list[float] = []
    for r in sorted(roots):
        if merged and abs(r - merged[-1]) <= ROOT_CLUSTER_TOLERANCE * (1.0 + abs(r)):
            if abs(p(r)) < abs(p(merged[-1])):
                merged[-1] = r
            continue
        merged.append(r)
    return merged


def real_roots(p: Polynomial, *, radius: float | None = None) -> RootSet:
    """All real roots of `p`, each reported once, in increasing order.

    Roots are isolated recursively: the real roots of `p'` split the search
    interval into panels on which `p` is monotone, and each sign change is
    refined with Brent's method. Unlike a fixed sign-change grid, this cannot
    miss two simple roots that are closer than a grid spacing. Critical
    points where `|p|` is within rounding of zero are reported as multiple
    roots, and roots within `ROOT_CLUSTER_TOLERANCE` are merged.
    """
    if p.is_zero:
        raise SteklovDegenerateInputError("The zero polynomial has no isolated roots")

    bound = radius if radius is not None else root_bound(p)
    roots = _merge_clusters(p, _isolate(p, -bound, bound))
    loose = [r for r in roots if abs(p(r)) > ROOT_RESIDUAL_TOLERANCE * root_residual_scale(p, r)]
    if loose:
        logger.warning("Roots %s of %s exceed the residual tolerance", loose, p)
    logger.debug("Found %d real roots of a degree-%d polynomial within radius %g", len(roots), p.degree, bound)
    return RootSet(roots=tuple(roots), radius=bound)
