"""Trajectory methods for global minimization.

Each method picks a regularization level t0 at which the regularized
objective is (quasi-)convex, finds its minimizer x0 and follows the curve of
minimizers x(t) back to t = 0 by integrating an ODE. The endpoint x(0) is the
candidate global minimizer of f.

* Steklov: the valley ODE dx/dt = -mu_tx / mu_xx on the window average mu.
* Steklov quartic: the closed-form start and ODE for depressed quartics.
* Quadratic: dx/dt = -x / (f'' + t) on phi = f + (t/2) x^2, the baseline.

Forward branches run the same ODEs upwards from every critical point of f
and show where the valleys of f merge.
"""

import logging
import math
from collections.abc import Callable

from ._util import LOCATION_TOLERANCE, THRESHOLD_MARGIN, VALUE_GAP_TOLERANCE
from .exceptions import (
    SteklovError,
    SteklovMissingDerivativeError,
    SteklovNonpositiveTError,
    SteklovPreconditionError,
)
from .ivp import integrate
from .models import (
    BranchEnd,
    Classification,
    DepressedQuartic,
    ForwardBranch,
    IvpProblem,
    Method,
    ObjectiveFunction,
    OracleResult,
    Polynomial,
    RegularizerKind,
    RunConfig,
    RunResult,
    ScaleShiftCheck,
    StartMode,
    StartPoint,
    T0Mode,
    Trajectory,
    TrajectoryStatus,
    Verdict,
)
from .models.trajectory import RightHandSide
from .oracle import poly_global_min
from .polyalg import compose_affine, depress_quartic, quartic_discriminant
from .regularize import (
    convexification_t0,
    quad_partials,
    quad_t0,
    quartic_quasiconvexity,
    quartic_start,
    solve_x0,
    steklov_partials_unchecked,
)

logger = logging.getLogger(__name__)

SYMMETRIC_QUARTIC = "SymmetricQuartic"
SHORTCUT = "ConvexOrQuasiConvexShortcut"


def _quotient(numerator: float, denominator: float) -> float:
    if denominator == 0.0:
        return math.copysign(math.inf, numerator) if numerator else 0.0
    return numerator / denominator


def _steklov_rhs(obj: ObjectiveFunction) -> RightHandSide:
    def rhs(t: float, x: float) -> tuple[float, float]:
        partials = steklov_partials_unchecked(obj, x, t)
        return _quotient(-partials.mu_tx, partials.mu_xx), partials.mu_xx

    return rhs


def _quadratic_rhs(obj: ObjectiveFunction) -> RightHandSide:
    if obj.d2f is None:
        raise SteklovMissingDerivativeError(f"Objective {obj.label!r} has no second derivative")
    d2f = obj.d2f

    def rhs(t: float, x: float) -> tuple[float, float]:
        denominator = d2f(x) + t
        return _quotient(-x, denominator), denominator

    return rhs


def _start_failed(method: Method, exc: SteklovError) -> RunResult:
    logger.info("%s run failed before integration: %s", method, exc)
    return RunResult(
        method=method,
        start=None,
        trajectory=Trajectory.empty(TrajectoryStatus.start_failed),
        x_final=math.nan,
        f_final=math.nan,
        status=TrajectoryStatus.start_failed,
        warnings=(f"{type(exc).__name__}: {exc}",),
    )


def _follow(
    method: Method,
    start: StartPoint,
    rhs: Callable[[float, float], tuple[float, float]],
    cfg: RunConfig,
    f: Callable[[float], float],
    to_original: Callable[[float], float] = float,
) -> RunResult:
    trajectory = integrate(
        IvpProblem(
            rhs=rhs,
            t_start=start.t0,
            x_start=start.x0,
            rtol=cfg.rtol,
            atol=cfg.atol,
            max_steps=cfg.max_steps,
        )
    )
    samples = tuple((t, to_original(x)) for t, x in trajectory.samples)
    if not cfg.record_trajectory:
        samples = samples[-1:]
    trajectory = trajectory.model_copy(update={"samples": samples})

    x_final = trajectory.x_final
    warnings: tuple[str, ...] = ()
    if not start.monotone:
        warnings += ("NotMonotone",)
    if not trajectory.succeeded:
        warnings += (f"Integration stopped at t={trajectory.ts[-1]:g}: {trajectory.status}",)

    logger.debug(
        "%s: t0=%g x0=%g -> x=%g (%s, %d steps)",
        method,
        start.t0,
        start.x0,
        x_final,
        trajectory.status,
        trajectory.steps_taken,
    )
    return RunResult(
        method=method,
        start=start.model_copy(update={"x0": to_original(start.x0)}),
        trajectory=trajectory,
        x_final=x_final,
        f_final=f(x_final),
        status=trajectory.status,
        warnings=warnings,
        minimizers=(x_final,) if trajectory.succeeded else (),
    )


# ---------------------------------------------------------------------------
# Steklov trajectory
# ---------------------------------------------------------------------------


def _quasiconvexifying_t0(p: Polynomial) -> float:
    _, threshold = quartic_quasiconvexity(depress_quartic(p))
    return threshold + THRESHOLD_MARGIN * (1.0 + threshold)


def _steklov_t0(obj: ObjectiveFunction, cfg: RunConfig) -> float:
    match cfg.t0_mode:
        case T0Mode.explicit:
            assert cfg.t0 is not None
            return cfg.t0
        case T0Mode.quasi_convexify:
            if obj.poly is None or obj.poly.degree != 4:
                raise SteklovPreconditionError("Quasi-convexifying t0 is only available for quartics")
            return _quasiconvexifying_t0(obj.poly)
        case _:
            return convexification_t0(obj, bracket=cfg.bracket)


def run_steklov(obj: ObjectiveFunction, cfg: RunConfig | None = None) -> RunResult:
    """Follow the valley of the Steklov function from t0 down to t = 0."""
    cfg = cfg or RunConfig()
    try:
        t0 = _steklov_t0(obj, cfg)
        mode = StartMode.user_supplied if cfg.t0_mode == T0Mode.explicit else StartMode.convex_search
        start = solve_x0(obj, t0, RegularizerKind.steklov, mode=mode)
    except SteklovError as exc:
        return _start_failed(Method.steklov, exc)

    return _follow(Method.steklov, start, _steklov_rhs(obj), cfg, obj.f)


# ---------------------------------------------------------------------------
# Quartic Steklov trajectory
# ---------------------------------------------------------------------------


def _closed(method: Method, p: Polynomial, minimizers: list[float], warning: str) -> RunResult:
    minimizers = sorted(minimizers)
    x_final = minimizers[0]
    logger.debug("%s resolved without integration (%s): %s", method, warning, minimizers)
    return RunResult(
        method=method,
        start=None,
        trajectory=Trajectory.empty(TrajectoryStatus.reached_zero),
        x_final=x_final,
        f_final=p(x_final),
        status=TrajectoryStatus.reached_zero,
        warnings=(warning,),
        minimizers=tuple(minimizers),
    )


def _quartic_start(q: DepressedQuartic, cfg: RunConfig) -> StartPoint:
    depressed = ObjectiveFunction.from_polynomial(q.as_polynomial())
    match cfg.t0_mode:
        case T0Mode.explicit:
            assert cfg.t0 is not None
            return solve_x0(depressed, cfg.t0, RegularizerKind.steklov, mode=StartMode.user_supplied)
        case T0Mode.quasi_convexify:
            t0 = _quasiconvexifying_t0(q.as_polynomial())
            return solve_x0(depressed, t0, RegularizerKind.steklov)
        case _:
            return quartic_start(q)


def run_steklov_quartic(p: Polynomial, cfg: RunConfig | None = None) -> RunResult:
    """Closed-form Steklov trajectory for a monic quartic."""
    cfg = cfg or RunConfig()
    method = Method.steklov_quartic
    try:
        q = depress_quartic(p)
        if q.a2 >= 0.0 or quartic_discriminant(q) <= 0.0:
            logger.warning("Quartic %s is quasi-convex; minimizing it directly", p)
            return _closed(method, p, list(poly_global_min(p).minimizers), SHORTCUT)
        if q.a1 == 0.0:
            root = math.sqrt(-q.a2 / 2.0)
            return _closed(method, p, [q.to_original(-root), q.to_original(root)], SYMMETRIC_QUARTIC)
        start = _quartic_start(q, cfg)
    except SteklovError as exc:
        return _start_failed(method, exc)

    a2 = q.a2

    def rhs(t: float, x: float) -> tuple[float, float]:
        denominator = 6.0 * x * x + 2.0 * t * t + a2
        return _quotient(-4.0 * t * x, denominator), denominator

    return _follow(method, start, rhs, cfg, p, q.to_original)


# ---------------------------------------------------------------------------
# Quadratic regularization trajectory
# ---------------------------------------------------------------------------


def run_quadratic(obj: ObjectiveFunction, cfg: RunConfig | None = None) -> RunResult:
    """Follow the minimizers of f + (t/2) x^2 from t0 down to t = 0."""
    cfg = cfg or RunConfig()
    try:
        if obj.d2f is None:
            raise SteklovMissingDerivativeError(f"Objective {obj.label!r} has no second derivative")
        match cfg.t0_mode:
            case T0Mode.explicit:
                assert cfg.t0 is not None
                t0, mode = cfg.t0, StartMode.user_supplied
            case T0Mode.quasi_convexify:
                raise SteklovPreconditionError("Quadratic regularization has no quasi-convexifying t0")
            case _:
                t0, mode = quad_t0(obj), StartMode.convex_search
        start = solve_x0(obj, t0, RegularizerKind.quadratic, mode=mode)
    except SteklovError as exc:
        return _start_failed(Method.quadratic, exc)

    return _follow(Method.quadratic, start, _quadratic_rhs(obj), cfg, obj.f)


# ---------------------------------------------------------------------------
# Dispatch and evaluation
# ---------------------------------------------------------------------------


def run_method(method: Method, obj: ObjectiveFunction, cfg: RunConfig | None = None) -> RunResult:
    match method:
        case Method.steklov:
            return run_steklov(obj, cfg)
        case Method.steklov_quartic:
            if obj.poly is None:
                raise SteklovPreconditionError("The quartic method needs a polynomial objective")
            return run_steklov_quartic(obj.poly, cfg)
        case Method.quadratic:
            return run_quadratic(obj, cfg)
    raise ValueError(f"Unknown method {method!r}")


def classify(result: RunResult, truth: OracleResult) -> Classification:
    """Compare a run's endpoint with the oracle's global minimizers."""
    gap = result.f_final - truth.min_value
    nearest = min(truth.minimizers, key=lambda m: abs(result.x_final - m))
    distance = abs(result.x_final - nearest)

    if result.status != TrajectoryStatus.reached_zero or not math.isfinite(result.x_final):
        verdict = Verdict.did_not_converge
    elif gap <= VALUE_GAP_TOLERANCE * (1.0 + abs(truth.min_value)) or distance <= LOCATION_TOLERANCE * (
        1.0 + abs(nearest)
    ):
        verdict = Verdict.global_success
    else:
        verdict = Verdict.local_only

    return Classification(
        verdict=verdict,
        gap=gap if math.isfinite(gap) else math.inf,
        distance=distance if math.isfinite(distance) else math.inf,
    )


def valley_residuals(result: RunResult, obj: ObjectiveFunction) -> list[tuple[float, float, float]]:
    """`(t, mu_x, mu_xx)` at every recorded sample; phi partials for quadratic runs."""
    rows = []
    for t, x in result.trajectory.samples:
        if result.method == Method.quadratic:
            phi = quad_partials(obj, x, t)
            rows.append((t, phi.phi_x, phi.phi_xx))
        else:
            mu = steklov_partials_unchecked(obj, x, t)
            rows.append((t, mu.mu_x, mu.mu_xx))
    return rows


# ---------------------------------------------------------------------------
# Forward branches
# ---------------------------------------------------------------------------


def _branch_end(status: TrajectoryStatus) -> BranchEnd:
    match status:
        case TrajectoryStatus.reached_zero:
            return BranchEnd.reached_t_max
        case TrajectoryStatus.step_budget_exhausted:
            return BranchEnd.step_budget_exhausted
        case _:
            return BranchEnd.folded


def forward_branches(
    obj: ObjectiveFunction,
    t_max: float,
    kind: RegularizerKind = RegularizerKind.steklov,
    cfg: RunConfig | None = None,
) -> list[ForwardBranch]:
    """Trace the critical point curves of the regularized function upwards from every critical point of f.

    At t = 0 the regularized function is f itself, so each critical point of f
    starts a branch. A branch from a local maximum and one from a neighbouring
    local minimum meet where the regularized function turns flat and both end
    `Folded`. When the trajectory method succeeds, the branch that survives to
    `t_max` starts at the global minimizer.
    """
    if obj.poly is None:
        raise SteklovPreconditionError("Forward branches need the critical points of a polynomial objective")
    if not t_max > 0.0:
        raise SteklovNonpositiveTError(f"Branches need a positive end level, got t_max={t_max}")
    cfg = cfg or RunConfig()
    forward = _steklov_rhs(obj) if kind == RegularizerKind.steklov else _quadratic_rhs(obj)

    # Integrate in s = t_max - t, so the integrator still runs towards zero.
    def rhs(s: float, x: float) -> tuple[float, float]:
        velocity, denominator = forward(t_max - s, x)
        return -velocity, denominator

    branches = []
    for point in poly_global_min(obj.poly).critical_points:
        trajectory = integrate(
            IvpProblem(
                rhs=rhs,
                t_start=t_max,
                x_start=point.x,
                rtol=cfg.rtol,
                atol=cfg.atol,
                max_steps=cfg.max_steps,
            )
        )
        branch = ForwardBranch(
            origin=point,
            samples=tuple((t_max - s, x) for s, x in trajectory.samples),
            end=_branch_end(trajectory.status),
            steps_taken=trajectory.steps_taken,
        )
        logger.debug("%s branch from %s at x=%g: %s at t=%g", kind, point.kind, point.x, branch.end, branch.t_end)
        branches.append(branch)
    return branches


# ---------------------------------------------------------------------------
# Scale and shift invariance
# ---------------------------------------------------------------------------


def scale_shift_check(method: Method, p: Polynomial, alpha: float, a: float, t0: float) -> ScaleShiftCheck:
    """Run `method` on f = p and on g(z) = p(alpha z - a) and compare the endpoints.

    The Steklov run on g starts at t0 / alpha, which maps its window onto the
    window used for f. The quadratic run on g starts at alpha^2 t0, which is
    the matching level for a pure scaling; with a shift the penalty on g is
    centred at x = -a instead of 0 and no level matches.
    """
    if method == Method.steklov_quartic:
        raise SteklovPreconditionError("The quartic method needs a monic quartic; use the generic Steklov method")
    if not alpha > 0.0:
        raise SteklovPreconditionError(f"Scale must be positive, got alpha={alpha}")

    g = compose_affine(p, alpha, a)
    t0_g = t0 / alpha if method == Method.steklov else alpha * alpha * t0
    f_result = run_method(method, ObjectiveFunction.from_polynomial(p), RunConfig.explicit(t0, record_trajectory=False))
    g_cfg = RunConfig.explicit(t0_g, record_trajectory=False)
    g_result = run_method(method, ObjectiveFunction.from_polynomial(g), g_cfg)
    check = ScaleShiftCheck(method=method, alpha=alpha, a=a, x_final=f_result.x_final, z_final=g_result.x_final)
    logger.info(
        "%s on f(%g z - %g): z=%g, transported x=%g (deviation %g)",
        method,
        alpha,
        a,
        check.z_final,
        check.transported,
        check.deviation,
    )
    return check
