from collections.abc import Callable

import numpy as np
import pytest

from steklov.fixtures import get_builtin
from steklov.models import ObjectiveFunction, Polynomial

SEED = 20240917


@pytest.fixture(scope="session")
def quartic_61() -> ObjectiveFunction:
    """x^4 - 8x^3 - 18x^2 + 56x: local minima at -2 and 7, maximum at 1."""
    return get_builtin("p4_sec61")


@pytest.fixture(scope="session")
def sextic() -> ObjectiveFunction:
    return get_builtin("p6_sec62")


@pytest.fixture(scope="session")
def degree10() -> ObjectiveFunction:
    return get_builtin("p10_sec63")


@pytest.fixture(scope="session")
def degree20() -> ObjectiveFunction:
    return get_builtin("p20_sec63")


@pytest.fixture(scope="session")
def quad_sine() -> ObjectiveFunction:
    return get_builtin("quad_sine")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def make_poly() -> Callable[..., ObjectiveFunction]:
    def _factory(*descending: float) -> ObjectiveFunction:
        return ObjectiveFunction.from_polynomial(Polynomial.from_descending(descending))

    return _factory


@pytest.fixture(scope="session")
def random_depressed_quartic() -> Callable[[np.random.Generator], Polynomial]:
    """Monic quartic x^4 + a2 x^2 + a1 x + a0 with a2 < 0 and a1 != 0."""

    def _factory(rng: np.random.Generator) -> Polynomial:
        a2 = -rng.uniform(0.1, 20.0)
        a1 = rng.uniform(0.05, 20.0) * (1 if rng.random() < 0.5 else -1)
        a0 = rng.uniform(-10.0, 10.0)
        return Polynomial(coeffs=(a0, a1, a2, 0.0, 1.0))

    return _factory
