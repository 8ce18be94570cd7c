"""Adaptive stiff integration of the scalar trajectory ODEs.

Problems run with decreasing t from `t_start` down to `t_end` (normally 0)
on SciPy's Radau IIA stepper, which is implicit and L-stable with an embedded
error estimate. The loop drives the stepper one accepted step at a time so
that step budgets, the minimum step size and the denominator of the
right-hand side are checked after every step. Failures are reported as
trajectory statuses, never raised.
"""

import logging
import math

from scipy.integrate import Radau
from scipy.optimize import brentq

from ._util import sign
from .models import IvpProblem, Trajectory, TrajectoryStatus

logger = logging.getLogger(__name__)

DENOMINATOR_FLOOR = 1e-10


def _localize_crossing(problem: IvpProblem, solver: Radau, t_old: float, t_new: float) -> tuple[float, float]:
    """Point inside the last step where the denominator changes sign."""
    interpolant = solver.dense_output()

    def denominator(t: float) -> float:
        return problem.rhs(t, float(interpolant(t)[0]))[1]

    lo, hi = sorted((t_new, t_old))
    try:
        t_cross = brentq(denominator, lo, hi, xtol=problem.effective_min_step)
    except ValueError:
        t_cross = t_new
    return t_cross, float(interpolant(t_cross)[0])


def integrate(problem: IvpProblem) -> Trajectory:
    def fun(t: float, y):
        return [problem.rhs(t, float(y[0]))[0]]

    _, denominator = problem.rhs(problem.t_start, problem.x_start)
    floor = problem.denom_floor if problem.denom_floor is not None else DENOMINATOR_FLOOR * abs(denominator)
    min_step = problem.effective_min_step
    samples = [(problem.t_start, problem.x_start)]

    if denominator == 0.0 or not math.isfinite(denominator):
        return Trajectory(
            samples=tuple(samples),
            status=TrajectoryStatus.singular_denominator,
            final_denominator=denominator,
        )

    solver = Radau(
        fun,
        problem.t_start,
        [problem.x_start],
        problem.t_end,
        rtol=problem.rtol,
        atol=problem.atol,
    )

    steps = 0
    status = TrajectoryStatus.step_budget_exhausted
    while steps < problem.max_steps:
        t_old = solver.t
        solver.step()
        if solver.status == "failed":
            status = TrajectoryStatus.step_underflow
            break
        steps += 1

        t, x = float(solver.t), float(solver.y[0])
        _, new_denominator = problem.rhs(t, x)

        if not (math.isfinite(x) and math.isfinite(new_denominator)):
            status = TrajectoryStatus.singular_denominator
            break

        if sign(new_denominator) != sign(denominator):
            t_cross, x_cross = _localize_crossing(problem, solver, t_old, t)
            if t_cross < samples[-1][0]:
                samples.append((t_cross, x_cross))
            denominator = problem.rhs(*samples[-1])[1]
            status = TrajectoryStatus.singular_denominator
            break

        samples.append((t, x))
        denominator = new_denominator

        if abs(denominator) < floor:
            status = TrajectoryStatus.singular_denominator
            break
        if solver.status == "finished":
            status = TrajectoryStatus.reached_zero
            break
        if solver.step_size < min_step:
            status = TrajectoryStatus.step_underflow
            break

    logger.debug(
        "IVP from t=%g x=%g: %s after %d steps at t=%g",
        problem.t_start,
        problem.x_start,
        status,
        steps,
        samples[-1][0],
    )
    return Trajectory(
        samples=tuple(samples),
        status=status,
        steps_taken=steps,
        final_denominator=denominator,
    )
