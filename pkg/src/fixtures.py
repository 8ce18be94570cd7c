"""Named objectives used by the CLI, the examples and the tests."""

import math
from fractions import Fraction

from .models import ObjectiveFunction, Polynomial
from .models._util import Model

_F10_DESCENDING = [
    1,
    Fraction(-260, 9),
    Fraction(1035, 4),
    -120,
    -9415,
    32172,
    Fraction(175765, 2),
    Fraction(-1369360, 3),
    -148560,
    1209600,
    0,
]

_F20_DESCENDING = [
    1,
    Fraction(-680, 19),
    Fraction(3935, 9),
    Fraction(-15755, 17),
    Fraction(-196105, 8),
    Fraction(2230697, 12),
    Fraction(20765145, 112),
    Fraction(-1351162585, 208),
    Fraction(10221013715, 768),
    Fraction(6382409515, 64),
    Fraction(-12625444643, 32),
    Fraction(-200463718805, 288),
    Fraction(2498521767895, 512),
    Fraction(465297612345, 448),
    Fraction(-2045419187205, 64),
    Fraction(198942566751, 16),
    Fraction(3627285358725, 32),
    -56515087125,
    -201131555625,
    0,
    0,
]


class Builtin(Model):
    name: str
    description: str
    objective: ObjectiveFunction
    # Interval holding the non-convex part; needed to convexify non-polynomials.
    search_interval: tuple[float, float] | None = None


def _poly(name: str, descending: list, description: str) -> Builtin:
    p = Polynomial.from_descending([float(c) for c in descending])
    return Builtin(name=name, description=description, objective=ObjectiveFunction.from_polynomial(p, label=name))


def _quad_sine() -> Builtin:
    objective = ObjectiveFunction(
        f=lambda x: 0.06 * x * x + math.sin(3.0 * x),
        df=lambda x: 0.12 * x + 3.0 * math.cos(3.0 * x),
        d2f=lambda x: 0.12 - 9.0 * math.sin(3.0 * x),
        label="quad_sine",
    )
    return Builtin(
        name="quad_sine",
        description="0.06 x^2 + sin 3x",
        objective=objective,
        search_interval=(-20.0, 20.0),
    )


_REGISTRY: dict[str, Builtin] = {
    b.name: b
    for b in (
        _quad_sine(),
        _poly("p4_sec61", [1, -8, -18, 56, 0], "quartic with local minima at -2 and 7"),
        _poly(
            "p6_sec62",
            [1, Fraction(-66, 5), Fraction(-9, 2), 422, -474, -2160, 0],
            "sextic with local minima at -4, 2 and 9",
        ),
        _poly("p10_sec63", _F10_DESCENDING, "degree-10 polynomial with global minimizer 9"),
        _poly("p20_sec63", _F20_DESCENDING, "degree-20 polynomial with global minimizer -4.5"),
        _poly("p4_quasiconvex", [1, 0, -0.09, -0.03, -1], "quasi-convex quartic with global minimizer near 0.2698"),
        _poly("p4_symmetric", [1, 0, -0.98, 0, 1], "symmetric quartic with minimizers -0.7 and 0.7"),
        _poly(
            "p4_branches",
            [1, Fraction(-4, 15), Fraction(-41, 50), Fraction(21, 125), 1],
            "quartic with critical points -0.6, 0.1 and 0.7",
        ),
    )
}


def list_builtins() -> list[Builtin]:
    return list(_REGISTRY.values())


def get_builtin(name: str) -> ObjectiveFunction:
    return lookup(name).objective


def lookup(name: str) -> Builtin:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"Unknown builtin {name!r}; choose from {', '.join(_REGISTRY)}") from None
