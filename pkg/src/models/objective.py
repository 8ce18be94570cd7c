from collections.abc import Callable
from enum import StrEnum
from typing import Self

from .._util import FiniteFloat, PositiveFloat
from ._util import Model
from .polynomial import Polynomial

Evaluator = Callable[[float], float]


class ObjectiveFunction(Model):
    """Evaluation bundle for a smooth univariate objective.

    `poly` is set iff the objective is a polynomial; in that case the
    evaluators are the polynomial and its derivatives.
    """

    f: Evaluator
    df: Evaluator
    d2f: Evaluator | None = None
    poly: Polynomial | None = None
    label: str = ""

    @classmethod
    def from_polynomial(cls, p: Polynomial, label: str | None = None) -> Self:
        from ..polyalg import differentiate

        dp = differentiate(p)
        return cls(f=p, df=dp, d2f=differentiate(dp), poly=p, label=label or str(p))


class RegularizerKind(StrEnum):
    steklov = "steklov"
    quadratic = "quadratic"


class StartMode(StrEnum):
    closed_form_quartic = "closed_form_quartic"
    convex_search = "convex_search"
    user_supplied = "user_supplied"


class StartPoint(Model):
    """Step-1 outcome: the minimizer `x0` of the regularized function at `t0`."""

    t0: PositiveFloat
    x0: FiniteFloat
    residual: FiniteFloat
    mode: StartMode
    monotone: bool = True
