from enum import StrEnum

from .._util import FiniteFloat
from ._util import Model


class CriticalKind(StrEnum):
    min = "min"
    max = "max"
    inflection = "inflection"


class CriticalPoint(Model):
    x: FiniteFloat
    value: FiniteFloat
    kind: CriticalKind


class OracleResult(Model):
    """Brute-force ground truth: every global minimizer up to tolerance."""

    minimizers: tuple[FiniteFloat, ...]
    min_value: FiniteFloat
    critical_points: tuple[CriticalPoint, ...] = ()
    search_radius: FiniteFloat
