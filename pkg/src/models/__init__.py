from .bench import BenchMethod, BenchReport, BenchRow, GenSpec
from .objective import ObjectiveFunction, RegularizerKind, StartMode, StartPoint
from .oracle import CriticalKind, CriticalPoint, OracleResult
from .polynomial import DepressedQuartic, Polynomial, RootSet
from .run import Classification, Method, RunConfig, RunResult, ScaleShiftCheck, T0Mode, Verdict
from .trajectory import BranchEnd, ForwardBranch, IvpProblem, Trajectory, TrajectoryStatus

__all__ = [
    "BenchMethod",
    "BranchEnd",
    "BenchReport",
    "BenchRow",
    "Classification",
    "CriticalKind",
    "CriticalPoint",
    "DepressedQuartic",
    "ForwardBranch",
    "GenSpec",
    "IvpProblem",
    "Method",
    "ObjectiveFunction",
    "OracleResult",
    "Polynomial",
    "RegularizerKind",
    "RootSet",
    "RunConfig",
    "RunResult",
    "ScaleShiftCheck",
    "StartMode",
    "StartPoint",
    "T0Mode",
    "Trajectory",
    "TrajectoryStatus",
    "Verdict",
]
