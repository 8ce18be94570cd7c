import csv
import io
import json

import pytest

from steklov.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, _logging_config, main
from steklov.settings import Settings

P61 = "1,-8,-18,56,0"


def _fields(text: str) -> dict[str, str]:
    return dict(line.split(maxsplit=1) for line in text.strip().splitlines())


# ---------------------------------------------------------------------------
# minimize
# ---------------------------------------------------------------------------


def test_minimize_quartic(capsys) -> None:
    assert main(["minimize", "--poly", P61, "--method", "steklov-quartic"]) == EXIT_OK
    fields = _fields(capsys.readouterr().out)
    assert float(fields["x_final"]) == pytest.approx(7.0, abs=1e-4)
    assert fields["status"] == "ReachedZero"
    assert fields["method"] == "steklov-quartic"


def test_minimize_builtin(capsys) -> None:
    assert main(["minimize", "--builtin", "quad_sine", "--method", "steklov", "--t0", "7"]) == EXIT_OK
    fields = _fields(capsys.readouterr().out)
    assert float(fields["x_final"]) == pytest.approx(-0.5167, abs=1e-3)
    assert float(fields["x0"]) == pytest.approx(-0.3896, abs=1e-3)


def test_minimize_verify_flags_local_minimum(capsys) -> None:
    code = main(["minimize", "--poly", P61, "--method", "quadratic", "--t0", "100", "--verify"])
    assert code == EXIT_OK
    captured = capsys.readouterr()
    fields = _fields(captured.out)
    assert float(fields["x_final"]) == pytest.approx(-2.0, abs=1e-3)
    assert fields["verdict"] == "LocalOnly"
    assert "local minimum (oracle check)" in captured.err


def test_minimize_symmetric_reports_both(capsys) -> None:
    assert main(["minimize", "--builtin", "p4_symmetric", "--method", "steklov-quartic"]) == EXIT_OK
    minimizers = _fields(capsys.readouterr().out)["minimizers"].split()
    assert [float(m) for m in minimizers] == pytest.approx([-0.7, 0.7])


def test_minimize_json(capsys) -> None:
    argv = ["minimize", "--poly", P61, "--method", "steklov", "--t0", "6", "--out", "json", "--verify"]
    assert main(argv) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["x_final"] == pytest.approx(7.0, abs=1e-4)
    assert payload["status"] == "ReachedZero"
    assert payload["verification"]["verdict"] == "GlobalSuccess"
    assert payload["steps"] > 0


def test_minimize_algorithmic_failure(capsys) -> None:
    code = main(["minimize", "--poly", P61, "--method", "steklov", "--t0", "6", "--max-steps", "1"])
    assert code == EXIT_FAILURE
    assert _fields(capsys.readouterr().out)["status"] == "StepBudgetExhausted"


@pytest.mark.parametrize(
    "argv",
    [
        ["minimize"],
        ["minimize", "--builtin", "no_such_function"],
        ["minimize", "--poly", "1,0,0,0"],
        ["minimize", "--poly", "2,0,-1,0,0"],
        ["minimize", "--poly", "1,x,3"],
        ["minimize", "--poly", P61, "--method", "newton"],
        ["minimize", "--poly", P61, "--t0", "-1"],
        ["bench", "--degrees", "5"],
        ["bench", "--out", "report.txt", "--samples", "1", "--degrees", "4"],
        ["surface", "--poly", P61, "--t0", "5", "--xrange", "9:-4"],
        ["nonsense"],
    ],
)
def test_usage_errors(argv, capsys) -> None:
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def test_bench_writes_reports(tmp_path, capsys) -> None:
    csv_path, json_path = tmp_path / "table.csv", tmp_path / "table.json"
    argv = ["bench", "--degrees", "4", "--samples", "2", "--seed", "7", "--method", "steklov"]
    assert main([*argv, "--out", str(csv_path), "--out", str(json_path)]) == EXIT_OK
    assert "degree" in capsys.readouterr().out

    lines = csv_path.read_text().splitlines()
    assert lines[0] == "method,degree,t0,samples,n_global,n_local,n_noconverge,failure_rate"
    assert len(lines) == 2
    assert lines[1].startswith("steklov,4,6.0,2,")

    report = json.loads(json_path.read_text())
    assert report["schema"] == 1
    assert report["seed"] == 7
    assert report["generator"] == "numpy.random.PCG64"

    again = tmp_path / "again.csv"
    assert main([*argv, "--out", str(again)]) == EXIT_OK
    assert again.read_bytes() == csv_path.read_bytes()


# ---------------------------------------------------------------------------
# surface and trajectory
# ---------------------------------------------------------------------------


def test_surface(tmp_path) -> None:
    out = tmp_path / "surface.csv"
    argv = ["surface", "--poly", P61, "--t0", "5", "--xrange=-4:9", "--grid", "14,6", "--out", str(out)]
    assert main(argv) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 14 * 6
    assert float(rows[0]["t"]) == 0.0
    assert float(rows[-1]["t"]) == 5.0
    for row in rows[:14]:
        x = float(row["x"])
        assert float(row["value"]) == pytest.approx(x**4 - 8 * x**3 - 18 * x**2 + 56 * x, abs=1e-9)


def test_surface_quadratic(capsys) -> None:
    argv = ["surface", "--poly", P61, "--t0", "2", "--xrange=-1:1", "--grid", "3,2", "--regularizer", "quadratic"]
    assert main(argv) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [(r["x"], r["t"]) for r in rows[:3]] == [("-1.0", "0.0"), ("0.0", "0.0"), ("1.0", "0.0")]
    assert float(rows[5]["value"]) == pytest.approx(1 - 8 - 18 + 56 + 1.0)


def test_trajectory(tmp_path) -> None:
    out = tmp_path / "trajectory.csv"
    assert main(["trajectory", "--poly", P61, "--method", "steklov-quartic", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,mu_x,mu_xx"
    assert lines[-1] == "# status=ReachedZero"
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[:-1]))))
    assert float(rows[-1]["t"]) == 0.0
    assert float(rows[-1]["x"]) == pytest.approx(7.0, abs=1e-4)


def test_trajectory_convex(capsys) -> None:
    assert main(["trajectory", "--poly", "1,-6,9", "--method", "steklov", "--t0", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[:-1]))))
    assert all(float(r["x"]) == pytest.approx(3.0, abs=1e-6) for r in rows)


def test_trajectory_quadratic_columns(capsys) -> None:
    argv = ["trajectory", "--poly", P61, "--method", "quadratic", "--t0", "100", "--verify"]
    assert main(argv) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,x,phi_x,phi_xx"
    assert lines[-1] == "# status=ReachedZero verdict=LocalOnly"


def test_trajectory_branches(capsys) -> None:
    assert main(["trajectory", "--builtin", "p4_branches", "--branches", "1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "origin,kind,t,x"
    trailers = [line for line in lines if line.startswith("#")]
    assert len(trailers) == 3
    assert "end=ReachedTMax" in trailers[0]
    assert all("end=Folded" in line for line in trailers[1:])
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[: -len(trailers)]))))
    assert {r["kind"] for r in rows} == {"min", "max"}
    assert min(float(r["t"]) for r in rows) == 0.0


def test_trajectory_branches_need_polynomial(capsys) -> None:
    assert main(["trajectory", "--builtin", "quad_sine", "--branches", "1"]) == EXIT_USAGE
    assert "critical points" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# fixtures and logging
# ---------------------------------------------------------------------------


def test_fixtures(capsys) -> None:
    assert main(["fixtures"]) == EXIT_OK
    out = capsys.readouterr().out
    names = ("quad_sine", "p4_sec61", "p6_sec62", "p10_sec63", "p20_sec63", "p4_quasiconvex", "p4_symmetric")
    for name in (*names, "p4_branches"):
        assert name in out
    assert "degree 20" in out


def test_json_logging_config() -> None:
    config = _logging_config(Settings(log_json=True, log_level="DEBUG"))
    assert config["formatters"]["default"]["()"] == "pythonjsonlogger.json.JsonFormatter"
    assert config["loggers"][""]["level"] == "DEBUG"
    assert "()" not in _logging_config(Settings())["formatters"]["default"]
