import argparse
import csv
import json
import math
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Literal, Self, TextIO

import numpy as np
from pydantic import model_validator

from ..bench import run_failure_table
from ..exceptions import SteklovUsageError
from ..fixtures import list_builtins, lookup
from ..models import (
    BenchReport,
    Classification,
    Method,
    ObjectiveFunction,
    OracleResult,
    Polynomial,
    RegularizerKind,
    RunConfig,
    RunResult,
    Verdict,
)
from ..models._util import Model
from ..oracle import grid_global_min, poly_global_min
from ..regularize import quad_partials, steklov_surface
from ..trajectories import classify, forward_branches, run_method, valley_residuals

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

ORACLE_PANELS = 100_000
BENCH_CSV_HEADER = ["method", "degree", "t0", "samples", "n_global", "n_local", "n_noconverge", "failure_rate"]


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------


def _float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def parse_coefficients(text: str) -> list[float]:
    return [_float(part) for part in text.split(",")]


def parse_positive(text: str) -> float:
    value = _float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def parse_range(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    bounds = _float(lo), _float(hi)
    if not bounds[0] < bounds[1]:
        raise argparse.ArgumentTypeError(f"range must satisfy lo < hi: {text!r}")
    return bounds


def parse_grid(text: str) -> tuple[int, int]:
    parts = text.split(",")
    try:
        sizes = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected nx[,nt], got {text!r}") from None
    if len(sizes) == 1:
        sizes.append(50)
    if len(sizes) != 2 or min(sizes) < 2:
        raise argparse.ArgumentTypeError(f"grid needs nx, nt >= 2, got {text!r}")
    return sizes[0], sizes[1]


def parse_degrees(text: str) -> list[int]:
    try:
        degrees = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated degrees, got {text!r}") from None
    if any(d < 4 or d % 2 for d in degrees):
        raise argparse.ArgumentTypeError(f"degrees must be even and at least 4: {text!r}")
    return degrees


def parse_t0_override(text: str) -> tuple[str, int, float]:
    key, sep, value = text.partition("=")
    method, colon, degree = key.partition(":")
    if not (sep and colon) or method not in (Method.steklov, Method.quadratic):
        raise argparse.ArgumentTypeError(f"expected steklov|quadratic:DEGREE=T0, got {text!r}")
    try:
        return method, int(degree), parse_positive(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree in {text!r}") from None


# ---------------------------------------------------------------------------
# Objectives
# ---------------------------------------------------------------------------


class FunctionSpec(Model):
    kind: Literal["PolyCoeffs", "Builtin"]
    coeffs: tuple[float, ...] | None = None
    name: str | None = None

    @model_validator(mode="after")
    def _one_source(self) -> Self:
        if (self.coeffs is None) == (self.name is None):
            raise ValueError("Give exactly one of coefficients or a builtin name")
        if (self.kind == "PolyCoeffs") != (self.coeffs is not None):
            raise ValueError(f"{self.kind} objective does not match the given source")
        return self

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Self:
        if args.poly is not None:
            return cls(kind="PolyCoeffs", coeffs=tuple(args.poly))
        return cls(kind="Builtin", name=args.builtin)

    def objective(self) -> ObjectiveFunction:
        if self.name is not None:
            return lookup(self.name).objective
        assert self.coeffs is not None
        p = Polynomial.from_descending(self.coeffs)
        return ObjectiveFunction.from_polynomial(p)

    def search_interval(self) -> tuple[float, float] | None:
        return lookup(self.name).search_interval if self.name is not None else None

    def require_trajectory_ready(self, obj: ObjectiveFunction) -> None:
        p = obj.poly
        if self.kind == "PolyCoeffs" and p is not None and (p.degree < 2 or p.degree % 2 or not p.is_monic):
            raise SteklovUsageError(f"Trajectory methods need an even-degree monic polynomial (leading 1), got {p}")


def _run(args: argparse.Namespace) -> tuple[FunctionSpec, ObjectiveFunction, RunResult]:
    spec = FunctionSpec.from_args(args)
    obj = spec.objective()
    spec.require_trajectory_ready(obj)
    if args.max_steps < 1:
        raise SteklovUsageError("--max-steps must be at least 1")

    options = {
        "rtol": args.rtol,
        "atol": args.atol,
        "max_steps": args.max_steps,
        "bracket": args.bracket or spec.search_interval(),
    }
    if args.t0 is not None:
        cfg = RunConfig.explicit(args.t0, **options)
    else:
        cfg = RunConfig(t0_mode=args.t0_mode, **options)
    return spec, obj, run_method(args.method, obj, cfg)


def _oracle(spec: FunctionSpec, obj: ObjectiveFunction) -> OracleResult:
    if obj.poly is not None:
        return poly_global_min(obj.poly)
    interval = spec.search_interval()
    if interval is None:
        raise SteklovUsageError(f"No search interval to verify {obj.label!r} against")
    return grid_global_min(obj, *interval, ORACLE_PANELS)


def _verify(spec: FunctionSpec, obj: ObjectiveFunction, result: RunResult) -> Classification:
    return classify(result, _oracle(spec, obj))


def _warn(result: RunResult, verdict: Classification | None) -> None:
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if verdict is not None and verdict.verdict == Verdict.local_only:
        print("warning: local minimum (oracle check)", file=sys.stderr)


@contextmanager
def _output(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
        return
    with Path(path).open("w", newline="", encoding="utf-8") as stream:
        yield stream


def _csv_writer(stream: TextIO):
    return csv.writer(stream, lineterminator="\n")


def _number(value: float) -> str:
    return repr(float(value))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_minimize(args: argparse.Namespace) -> int:
    spec, obj, result = _run(args)
    verdict = _verify(spec, obj, result) if args.verify else None
    _warn(result, verdict)

    start = result.start
    if args.out == "json":
        payload = result.model_dump(mode="json", exclude={"trajectory"})
        payload["steps"] = result.trajectory.steps_taken
        if verdict is not None:
            payload["verification"] = verdict.model_dump(mode="json")
        print(json.dumps(payload, indent=2))
    else:
        lines = [
            ("method", result.method.value),
            ("x_final", _number(result.x_final)),
            ("f_final", _number(result.f_final)),
            ("status", result.status.value),
            ("t0", _number(start.t0) if start else "-"),
            ("x0", _number(start.x0) if start else "-"),
            ("steps", str(result.trajectory.steps_taken)),
        ]
        if len(result.minimizers) > 1:
            lines.append(("minimizers", " ".join(_number(m) for m in result.minimizers)))
        if verdict is not None:
            lines.append(("verdict", verdict.verdict.value))
        for key, value in lines:
            print(f"{key:<11}{value}")

    return EXIT_OK if result.succeeded else EXIT_FAILURE


def write_bench_csv(report: BenchReport, stream: TextIO) -> None:
    writer = _csv_writer(stream)
    writer.writerow(BENCH_CSV_HEADER)
    for row in report.rows:
        writer.writerow(
            [
                row.method,
                row.degree,
                _number(row.t0),
                row.samples,
                row.n_global,
                row.n_local,
                row.n_noconverge,
                _number(row.failure_rate),
            ]
        )


def _print_table(report: BenchReport) -> None:
    methods = sorted({r.method for r in report.rows}, key=["steklov", "quadratic"].index)
    header = "degree" + "".join(f"  {m + ' t0':>14}  {m + ' fail':>16}" for m in methods)
    print(header)
    for degree in dict.fromkeys(r.degree for r in report.rows):
        cells = []
        for m in methods:
            row = report.row(m, degree)
            cells.append(f"  {row.t0:>14g}  {100.0 * row.failure_rate:>15.1f}%")
        print(f"{degree:>6}" + "".join(cells))


def cmd_bench(args: argparse.Namespace) -> int:
    if args.samples < 1 or args.workers < 1 or args.max_steps < 1:
        raise SteklovUsageError("--samples, --workers and --max-steps must be at least 1")
    for path in args.out:
        if Path(path).suffix not in (".csv", ".json"):
            raise SteklovUsageError(f"Report files must end in .csv or .json: {path}")

    t0_map: dict[str, dict[int, float]] = {}
    for method, degree, t0 in args.t0:
        t0_map.setdefault(method, {})[degree] = t0

    report = run_failure_table(
        args.degrees,
        args.samples,
        args.method,
        t0_map,
        args.seed,
        workers=args.workers,
        rtol=args.rtol,
        max_steps=args.max_steps,
    )
    for path in args.out:
        with _output(path) as stream:
            if path.endswith(".csv"):
                write_bench_csv(report, stream)
            else:
                stream.write(report.model_dump_json(by_alias=True, indent=2) + "\n")
    _print_table(report)
    return EXIT_OK


def cmd_surface(args: argparse.Namespace) -> int:
    obj = FunctionSpec.from_args(args).objective()
    (lo, hi), (nx, nt) = args.xrange, args.grid
    xs = np.linspace(lo, hi, nx)
    ts = np.linspace(0.0, args.t0, nt)

    if args.regularizer == RegularizerKind.steklov:
        values = steklov_surface(obj, xs, ts)
    else:
        values = np.array(
            [[quad_partials(obj, float(x), float(t), with_curvature=False).phi for x in xs] for t in ts]
        )

    with _output(args.out) as stream:
        writer = _csv_writer(stream)
        writer.writerow(["x", "t", "value"])
        for i, t in enumerate(ts):
            for j, x in enumerate(xs):
                writer.writerow([_number(x), _number(t), _number(values[i, j])])
    return EXIT_OK


def _write_branches(args: argparse.Namespace) -> int:
    obj = FunctionSpec.from_args(args).objective()
    kind = RegularizerKind.quadratic if args.method == Method.quadratic else RegularizerKind.steklov
    cfg = RunConfig(rtol=args.rtol, atol=args.atol, max_steps=args.max_steps)
    branches = forward_branches(obj, args.branches, kind, cfg)

    with _output(args.out) as stream:
        writer = _csv_writer(stream)
        writer.writerow(["origin", "kind", "t", "x"])
        for branch in branches:
            origin = _number(branch.origin.x)
            for t, x in branch.samples:
                writer.writerow([origin, branch.origin.kind.value, _number(t), _number(x)])
        for branch in branches:
            stream.write(
                f"# origin={_number(branch.origin.x)} end={branch.end.value}"
                f" t={_number(branch.t_end)} x={_number(branch.x_end)}\n"
            )
    return EXIT_OK


def cmd_trajectory(args: argparse.Namespace) -> int:
    if args.branches is not None:
        return _write_branches(args)

    spec, obj, result = _run(args)
    verdict = _verify(spec, obj, result) if args.verify else None
    _warn(result, verdict)

    prefix = "phi" if result.method == Method.quadratic else "mu"
    with _output(args.out) as stream:
        writer = _csv_writer(stream)
        writer.writerow(["t", "x", f"{prefix}_x", f"{prefix}_xx"])
        residuals = valley_residuals(result, obj)
        for (t, x), (_, d1, d2) in zip(result.trajectory.samples, residuals, strict=True):
            writer.writerow([_number(t), _number(x), _number(d1), _number(d2)])
        trailer = f"# status={result.status.value}"
        if verdict is not None:
            trailer += f" verdict={verdict.verdict.value}"
        stream.write(trailer + "\n")

    return EXIT_OK if result.succeeded else EXIT_FAILURE


def cmd_fixtures(args: argparse.Namespace) -> int:  # noqa: ARG001
    for builtin in list_builtins():
        p = builtin.objective.poly
        kind = f"degree {p.degree}" if p is not None else "smooth"
        print(f"{builtin.name:<12}{kind:<12}{builtin.description}")
    return EXIT_OK
