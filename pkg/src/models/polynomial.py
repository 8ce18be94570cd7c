from collections.abc import Sequence
from typing import Self

import numpy as np
from numpy.polynomial import polynomial as npp
from pydantic import field_validator, model_validator

from .._util import FiniteFloat
from ._util import Model


class Polynomial(Model):
    """Dense real univariate polynomial.

    `coeffs[k]` multiplies `x**k`. Trailing zero coefficients are stripped on
    construction, so `coeffs[degree]` is nonzero unless the polynomial is zero.
    """

    coeffs: tuple[FiniteFloat, ...]

    @field_validator("coeffs")
    @classmethod
    def _normalize(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value:
            raise ValueError("Polynomial needs at least one coefficient")
        end = len(value)
        while end > 1 and value[end - 1] == 0.0:
            end -= 1
        return tuple(float(c) for c in value[:end])

    @classmethod
    def from_descending(cls, coeffs: Sequence[float]) -> Self:
        """Build from the human-facing highest-degree-first order."""
        return cls(coeffs=tuple(reversed(coeffs)))

    @classmethod
    def from_array(cls, coeffs: np.ndarray) -> Self:
        return cls(coeffs=tuple(float(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0.0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1.0

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        return npp.polyval(xs, self.array)

    def to_descending(self) -> list[float]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0.0 and self.degree > 0:
                continue
            power = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(f"{c:+g}{'*' if power else ''}{power}")
        return " ".join(terms)


class DepressedQuartic(Model):
    """Monic quartic `x^4 + a2 x^2 + a1 x + a0` with no cubic term.

    `shift` is `b3/4` of the quartic it came from; minimizers map back via
    `x_original = x_depressed - shift`.
    """

    a2: FiniteFloat
    a1: FiniteFloat
    a0: FiniteFloat = 0.0
    shift: FiniteFloat = 0.0

    def as_polynomial(self) -> Polynomial:
        return Polynomial(coeffs=(self.a0, self.a1, self.a2, 0.0, 1.0))

    def to_original(self, x: float) -> float:
        return x - self.shift

    def to_depressed(self, x: float) -> float:
        return x + self.shift


class RootSet(Model):
    roots: tuple[FiniteFloat, ...]
    radius: FiniteFloat

    @model_validator(mode="after")
    def _strictly_increasing(self) -> Self:
        if any(b <= a for a, b in zip(self.roots, self.roots[1:], strict=False)):
            raise ValueError("Roots must be strictly increasing")
        return self
