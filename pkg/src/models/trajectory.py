from collections.abc import Callable
from enum import StrEnum
from typing import Annotated, Self

from pydantic import Field, model_validator

from .._util import DEFAULT_ATOL, DEFAULT_MAX_STEPS, DEFAULT_RTOL, FiniteFloat, PositiveFloat
from ._util import Model
from .oracle import CriticalPoint

# (t, x) -> (dx/dt, raw denominator of the right-hand side)
RightHandSide = Callable[[float, float], tuple[float, float]]


class TrajectoryStatus(StrEnum):
    reached_zero = "ReachedZero"
    singular_denominator = "SingularDenominator"
    step_budget_exhausted = "StepBudgetExhausted"
    step_underflow = "StepUnderflow"
    start_failed = "StartFailed"  # Step 1 raised; nothing was integrated


class IvpProblem(Model):
    """Scalar IVP integrated with decreasing t from `t_start` to `t_end`."""

    rhs: RightHandSide
    t_start: PositiveFloat
    t_end: FiniteFloat = 0.0
    x_start: FiniteFloat
    rtol: PositiveFloat = DEFAULT_RTOL
    atol: PositiveFloat = DEFAULT_ATOL
    max_steps: Annotated[int, Field(ge=1)] = DEFAULT_MAX_STEPS
    min_step: PositiveFloat | None = None  # default 1e-14 * t_start
    denom_floor: Annotated[float, Field(ge=0)] | None = None  # default 1e-10 * |denominator at start|

    @model_validator(mode="after")
    def _decreasing(self) -> Self:
        if not self.t_end < self.t_start:
            raise ValueError("t_end must be smaller than t_start")
        return self

    @property
    def effective_min_step(self) -> float:
        return self.min_step if self.min_step is not None else 1e-14 * self.t_start


class Trajectory(Model):
    """Accepted integration steps, ordered by strictly decreasing t."""

    samples: tuple[tuple[float, float], ...]
    status: TrajectoryStatus
    steps_taken: Annotated[int, Field(ge=0)] = 0
    final_denominator: float = float("nan")

    @model_validator(mode="after")
    def _ordered(self) -> Self:
        ts = [t for t, _ in self.samples]
        if any(b >= a for a, b in zip(ts, ts[1:], strict=False)):
            raise ValueError("Trajectory samples must have strictly decreasing t")
        if self.status == TrajectoryStatus.reached_zero and self.samples and ts[-1] != 0.0:
            raise ValueError("A trajectory that reached zero must end at t = 0")
        return self

    @property
    def ts(self) -> list[float]:
        return [t for t, _ in self.samples]

    @property
    def xs(self) -> list[float]:
        return [x for _, x in self.samples]

    @property
    def x_final(self) -> float:
        return self.samples[-1][1] if self.samples else float("nan")

    @property
    def succeeded(self) -> bool:
        return self.status == TrajectoryStatus.reached_zero

    @classmethod
    def empty(cls, status: TrajectoryStatus) -> Self:
        return cls(samples=(), status=status)


class BranchEnd(StrEnum):
    reached_t_max = "ReachedTMax"
    folded = "Folded"  # curvature vanished: the branch met another one at a flat point
    step_budget_exhausted = "StepBudgetExhausted"


class ForwardBranch(Model):
    """Curve of critical points of the regularized function traced from t = 0 upwards.

    `samples` starts at `(0, origin.x)` and is ordered by strictly increasing t.
    """

    origin: CriticalPoint
    samples: tuple[tuple[float, float], ...]
    end: BranchEnd
    steps_taken: Annotated[int, Field(ge=0)] = 0

    @model_validator(mode="after")
    def _ordered(self) -> Self:
        ts = [t for t, _ in self.samples]
        if not ts or ts[0] != 0.0:
            raise ValueError("A forward branch must start at t = 0")
        if any(b <= a for a, b in zip(ts, ts[1:], strict=False)):
            raise ValueError("Forward branch samples must have strictly increasing t")
        return self

    @property
    def t_end(self) -> float:
        return self.samples[-1][0]

    @property
    def x_end(self) -> float:
        return self.samples[-1][1]
