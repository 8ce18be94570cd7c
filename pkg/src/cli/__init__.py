"""Command-line front end.

Exit codes: 0 on success, 1 on usage errors, 2 when an algorithm ran but
did not reach t = 0.
"""

import argparse
import logging.config
import sys
from collections.abc import Sequence
from typing import Any, NoReturn

from pydantic import ValidationError

from ..exceptions import SteklovError, SteklovUsageError
from ..models import BenchMethod, Method, RegularizerKind, T0Mode
from ..settings import Settings, get_settings
from . import commands
from .commands import EXIT_FAILURE, EXIT_OK, EXIT_USAGE

logger = logging.getLogger(__name__)


def _logging_config(settings: Settings) -> dict[str, Any]:
    date_format = "%Y-%m-%dT%H:%M:%S%z"
    if settings.log_json:
        formatter: dict[str, Any] = {
            "()": "pythonjsonlogger.json.JsonFormatter",
            "fmt": "%(asctime)s %(levelname)s %(name)s %(message)s",
            "rename_fields": {
                "asctime": "timestamp",
                "levelname": "level",
                "name": "logger",
            },
            "datefmt": date_format,
        }
    else:
        formatter = {
            "format": "%(asctime)s - %(levelname)s - %(name)s - %(message)s",
            "datefmt": date_format,
        }
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": formatter,
        },
        "handlers": {
            "default": {
                "formatter": "default",
                "class": "logging.StreamHandler",
                "stream": sys.stderr,
            },
        },
        "loggers": {
            "": {  # Root logger
                "handlers": ["default"],
                "level": settings.log_level,
            },
        },
    }


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise SteklovUsageError(message)


def _add_function_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--poly",
        type=commands.parse_coefficients,
        help="polynomial coefficients, highest degree first, e.g. 1,-8,-18,56,0",
    )
    source.add_argument("--builtin", help="name of a builtin objective (see the fixtures command)")


def _add_run_arguments(parser: argparse.ArgumentParser, settings: Settings) -> None:
    _add_function_arguments(parser)
    parser.add_argument("--method", type=Method, choices=list(Method), default=Method.steklov)
    parser.add_argument("--t0", type=commands.parse_positive, help="explicit regularization start level")
    parser.add_argument(
        "--t0-mode",
        type=T0Mode,
        choices=[T0Mode.convexify, T0Mode.quasi_convexify],
        default=T0Mode.convexify,
        help="how to pick t0 when --t0 is not given",
    )
    parser.add_argument("--bracket", type=commands.parse_range, help="lo:hi interval for convexifying non-polynomials")
    parser.add_argument("--rtol", type=commands.parse_positive, default=settings.rtol)
    parser.add_argument("--atol", type=commands.parse_positive, default=settings.atol)
    parser.add_argument("--max-steps", type=int, default=settings.max_steps)
    parser.add_argument("--verify", action="store_true", help="check the result against the brute-force oracle")


def build_parser(settings: Settings | None = None) -> argparse.ArgumentParser:
    settings = settings or get_settings()
    parser = _Parser(prog="steklov", description="Global minimization by Steklov regularization trajectories")
    subparsers = parser.add_subparsers(dest="command", required=True)

    minimize = subparsers.add_parser("minimize", help="run one trajectory method and report its endpoint")
    _add_run_arguments(minimize, settings)
    minimize.add_argument("--out", choices=["text", "json"], default="text")
    minimize.set_defaults(handler=commands.cmd_minimize)

    bench = subparsers.add_parser("bench", help="failure rates over random polynomials")
    bench.add_argument("--degrees", type=commands.parse_degrees, default=[4, 6, 8, 10, 12, 14, 20])
    bench.add_argument("--samples", type=int, default=1000)
    bench.add_argument("--seed", type=int, default=settings.seed)
    bench.add_argument("--method", type=BenchMethod, choices=list(BenchMethod), default=BenchMethod.both)
    bench.add_argument(
        "--t0",
        action="append",
        default=[],
        type=commands.parse_t0_override,
        metavar="METHOD:DEGREE=T0",
        help="override the tabulated t0, e.g. steklov:8=6.5 (repeatable)",
    )
    bench.add_argument("--out", action="append", default=[], help="write the report to a .csv or .json file")
    bench.add_argument("--workers", type=int, default=settings.workers)
    bench.add_argument("--rtol", type=commands.parse_positive, default=settings.rtol)
    bench.add_argument("--max-steps", type=int, default=settings.max_steps)
    bench.set_defaults(handler=commands.cmd_bench)

    surface = subparsers.add_parser("surface", help="regularized values over an (x, t) grid as CSV")
    _add_function_arguments(surface)
    surface.add_argument("--t0", type=commands.parse_positive, required=True)
    surface.add_argument("--xrange", type=commands.parse_range, required=True, help="lo:hi")
    surface.add_argument("--grid", type=commands.parse_grid, default=(200, 50), help="nx[,nt]")
    surface.add_argument(
        "--regularizer", type=RegularizerKind, choices=list(RegularizerKind), default=RegularizerKind.steklov
    )
    surface.add_argument("--out", default="-", help="output file, '-' for standard output")
    surface.set_defaults(handler=commands.cmd_surface)

    trajectory = subparsers.add_parser("trajectory", help="every accepted integration step as CSV")
    _add_run_arguments(trajectory, settings)
    trajectory.add_argument("--out", default="-", help="output file, '-' for standard output")
    trajectory.add_argument(
        "--branches",
        type=commands.parse_positive,
        metavar="T_MAX",
        help="trace every critical point of f forward up to T_MAX instead of running the method",
    )
    trajectory.set_defaults(handler=commands.cmd_trajectory)

    fixtures = subparsers.add_parser("fixtures", help="list the builtin objectives")
    fixtures.set_defaults(handler=commands.cmd_fixtures)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    settings = get_settings()
    logging.config.dictConfig(_logging_config(settings))
    try:
        args = build_parser(settings).parse_args(argv)
        return args.handler(args)
    except (SteklovError, ValidationError, KeyError, OSError) as exc:
        print(f"steklov: error: {exc}", file=sys.stderr)
        logger.debug("Command failed", exc_info=True)
        return EXIT_USAGE


__all__ = ["EXIT_FAILURE", "EXIT_OK", "EXIT_USAGE", "build_parser", "main"]
