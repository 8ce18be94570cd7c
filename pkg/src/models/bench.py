from enum import StrEnum
from typing import Annotated, Literal, Self

from pydantic import Field, computed_field, model_validator

from ._util import Model


class BenchMethod(StrEnum):
    steklov = "steklov"
    quadratic = "quadratic"
    both = "both"


class GenSpec(Model):
    degree: Annotated[int, Field(ge=4)]
    extremum_range: tuple[float, float] = (-5.0, 5.0)
    seed: Annotated[int, Field(ge=0, lt=2**64)] = 0

    @model_validator(mode="after")
    def _valid(self) -> Self:
        if self.degree % 2:
            raise ValueError(f"Degree must be even, got {self.degree}")
        lo, hi = self.extremum_range
        if not lo < hi:
            raise ValueError("Extremum range must satisfy lo < hi")
        return self


class BenchRow(Model):
    method: Literal["steklov", "quadratic"]
    degree: int
    t0: float
    samples: Annotated[int, Field(ge=1)]
    n_global: Annotated[int, Field(ge=0)]
    n_local: Annotated[int, Field(ge=0)]
    n_noconverge: Annotated[int, Field(ge=0)]

    @model_validator(mode="after")
    def _counts_add_up(self) -> Self:
        if self.n_global + self.n_local + self.n_noconverge != self.samples:
            raise ValueError("Verdict counts must add up to the sample count")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def failure_rate(self) -> float:
        return (self.n_local + self.n_noconverge) / self.samples


class BenchReport(Model):
    schema_version: Literal[1] = Field(default=1, serialization_alias="schema")
    rows: tuple[BenchRow, ...]
    seed: int
    method: BenchMethod
    tolerances: dict[str, float]
    generator: str
    wall_time: float

    def row(self, method: str, degree: int) -> BenchRow:
        for r in self.rows:
            if r.method == method and r.degree == degree:
                return r
        raise KeyError((method, degree))
