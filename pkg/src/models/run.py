from enum import StrEnum
from typing import Annotated, Self

from pydantic import Field, model_validator

from .._util import DEFAULT_ATOL, DEFAULT_MAX_STEPS, DEFAULT_RTOL, LOCATION_TOLERANCE, PositiveFloat
from ._util import Model
from .objective import StartPoint
from .trajectory import Trajectory, TrajectoryStatus


class Method(StrEnum):
    steklov = "steklov"
    steklov_quartic = "steklov-quartic"
    quadratic = "quadratic"


class T0Mode(StrEnum):
    convexify = "convexify"
    quasi_convexify = "quasi-convexify"
    explicit = "explicit"


class RunConfig(Model):
    t0: PositiveFloat | None = None
    t0_mode: T0Mode = T0Mode.convexify
    rtol: PositiveFloat = DEFAULT_RTOL
    atol: PositiveFloat = DEFAULT_ATOL
    max_steps: Annotated[int, Field(ge=1)] = DEFAULT_MAX_STEPS
    record_trajectory: bool = True
    # Search interval for convexifying generic (non-polynomial) objectives.
    bracket: tuple[float, float] | None = None

    @model_validator(mode="after")
    def _explicit_needs_t0(self) -> Self:
        if self.t0_mode == T0Mode.explicit and self.t0 is None:
            raise ValueError("Explicit t0 mode requires t0")
        if self.bracket is not None and not self.bracket[0] < self.bracket[1]:
            raise ValueError("Bracket must satisfy lo < hi")
        return self

    @classmethod
    def explicit(cls, t0: float, **kwargs) -> Self:
        return cls(t0=t0, t0_mode=T0Mode.explicit, **kwargs)


class RunResult(Model):
    method: Method
    start: StartPoint | None
    trajectory: Trajectory
    x_final: float
    f_final: float
    status: TrajectoryStatus
    warnings: tuple[str, ...] = ()
    # All reported global minimizers; more than one only for symmetric quartics.
    minimizers: tuple[float, ...] = ()

    @property
    def succeeded(self) -> bool:
        return self.status == TrajectoryStatus.reached_zero


class Verdict(StrEnum):
    global_success = "GlobalSuccess"
    local_only = "LocalOnly"
    did_not_converge = "DidNotConverge"


class Classification(Model):
    verdict: Verdict
    gap: float
    distance: float


class ScaleShiftCheck(Model):
    """Endpoints of one method on f and on g(z) = f(alpha z - a).

    The method is scale and shift invariant for this pair when the endpoint
    on g is the endpoint on f carried over by z = (x + a) / alpha.
    """

    method: Method
    alpha: float
    a: float
    x_final: float
    z_final: float

    @property
    def transported(self) -> float:
        return (self.x_final + self.a) / self.alpha

    @property
    def deviation(self) -> float:
        return abs(self.z_final - self.transported)

    @property
    def invariant(self) -> bool:
        return self.deviation <= LOCATION_TOLERANCE * (1.0 + abs(self.transported))
