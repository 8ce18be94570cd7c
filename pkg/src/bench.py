"""Randomized failure-rate experiment for the trajectory methods.

Random monic polynomials are built from uniformly drawn critical points, and
each instance runs with an explicit t0 per degree. The endpoint is then
classified against the polynomial oracle. Every instance seeds its own
generator from `(seed, degree, index)`, so serial and parallel runs agree.
"""

import logging
import time
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np
from numpy.polynomial import polynomial as npp

from ._util import (
    DEFAULT_ATOL,
    DEFAULT_MAX_STEPS,
    DEFAULT_RTOL,
    LOCATION_TOLERANCE,
    VALUE_GAP_TOLERANCE,
    default_quadratic_t0,
    default_steklov_t0,
)
from .models import (
    BenchMethod,
    BenchReport,
    BenchRow,
    GenSpec,
    Method,
    ObjectiveFunction,
    Polynomial,
    RunConfig,
    Verdict,
)
from .oracle import poly_global_min
from .polyalg import antiderivative
from .trajectories import classify, run_quadratic, run_steklov

logger = logging.getLogger(__name__)

GENERATOR = "numpy.random.PCG64"

_RUNNERS = {Method.steklov: run_steklov, Method.quadratic: run_quadratic}


def instance_rng(seed: int, degree: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, degree, index])))


def gen_poly(
    spec: GenSpec,
    rng: np.random.Generator | None = None,
    *,
    draws: Sequence[float] | None = None,
) -> Polynomial:
    """Monic polynomial whose critical points are exactly the drawn locations.

    With `draws` given they are used verbatim instead of sampling from `rng`.
    """
    if draws is None:
        rng = rng if rng is not None else np.random.default_rng(spec.seed)
        lo, hi = spec.extremum_range
        draws = rng.uniform(lo, hi, spec.degree - 1).tolist()
    elif len(draws) != spec.degree - 1:
        raise ValueError(f"Degree {spec.degree} needs {spec.degree - 1} critical points, got {len(draws)}")

    derivative = Polynomial.from_array(spec.degree * npp.polyfromroots(draws))
    return antiderivative(derivative)


def _methods(method: BenchMethod) -> list[Method]:
    if method == BenchMethod.both:
        return [Method.steklov, Method.quadratic]
    return [Method(method.value)]


def resolve_t0_map(
    method: BenchMethod, degrees: Iterable[int], t0_map: Mapping[str, Mapping[int, float]] | None = None
) -> dict[Method, dict[int, float]]:
    """Per-method t0 for each degree, falling back to the tabulated defaults."""
    defaults = {Method.steklov: default_steklov_t0, Method.quadratic: default_quadratic_t0}
    overrides = t0_map or {}
    return {
        m: {d: float(overrides.get(m.value, {}).get(d, defaults[m](d))) for d in degrees} for m in _methods(method)
    }


def _run_instance(
    item: tuple[int, int],
    *,
    seed: int,
    t0s: Mapping[Method, Mapping[int, float]],
    extremum_range: tuple[float, float],
    fixed_draws: Mapping[int, Sequence[float]],
    rtol: float,
    atol: float,
    max_steps: int,
) -> dict[Method, Verdict]:
    degree, index = item
    spec = GenSpec(degree=degree, extremum_range=extremum_range, seed=seed)
    p = gen_poly(spec, instance_rng(seed, degree, index), draws=fixed_draws.get(degree))
    obj = ObjectiveFunction.from_polynomial(p)
    truth = poly_global_min(p)

    verdicts = {}
    for method, per_degree in t0s.items():
        cfg = RunConfig.explicit(
            per_degree[degree], rtol=rtol, atol=atol, max_steps=max_steps, record_trajectory=False
        )
        verdicts[method] = classify(_RUNNERS[method](obj, cfg), truth).verdict
    return verdicts


def run_failure_table(
    degrees: Sequence[int],
    samples: int,
    method: BenchMethod = BenchMethod.both,
    t0_map: Mapping[str, Mapping[int, float]] | None = None,
    seed: int = 42,
    *,
    workers: int = 1,
    extremum_range: tuple[float, float] = (-5.0, 5.0),
    fixed_draws: Mapping[int, Sequence[float]] | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> BenchReport:
    """Failure rates per degree and method.

    `fixed_draws` pins the critical points for a degree, so every sample of
    that degree runs on the same polynomial.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    for degree in degrees:
        GenSpec(degree=degree, extremum_range=extremum_range, seed=seed)

    t0s = resolve_t0_map(method, degrees, t0_map)
    worker = partial(
        _run_instance,
        seed=seed,
        t0s=t0s,
        extremum_range=extremum_range,
        fixed_draws=fixed_draws or {},
        rtol=rtol,
        atol=atol,
        max_steps=max_steps,
    )

    started = time.perf_counter()
    rows = []
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for degree in degrees:
            items = [(degree, i) for i in range(samples)]
            if executor is None:
                outcomes = list(map(worker, items))
            else:
                outcomes = list(executor.map(worker, items, chunksize=max(1, samples // (4 * workers))))

            for m, per_degree in t0s.items():
                counts = Counter(o[m] for o in outcomes)
                row = BenchRow(
                    method=m.value,
                    degree=degree,
                    t0=per_degree[degree],
                    samples=samples,
                    n_global=counts[Verdict.global_success],
                    n_local=counts[Verdict.local_only],
                    n_noconverge=counts[Verdict.did_not_converge],
                )
                rows.append(row)
                logger.info(
                    "degree %d, %s, t0=%g: failure rate %.1f%%", degree, m.value, row.t0, 100.0 * row.failure_rate
                )
    finally:
        if executor is not None:
            executor.shutdown()

    return BenchReport(
        rows=tuple(rows),
        seed=seed,
        method=method,
        tolerances={
            "value_gap": VALUE_GAP_TOLERANCE,
            "location": LOCATION_TOLERANCE,
            "rtol": rtol,
            "atol": atol,
        },
        generator=GENERATOR,
        wall_time=time.perf_counter() - started,
    )
