import json
import subprocess
import sys


from strongapprox.cli import main
from strongapprox.scenario import bundled_scenario_bytes


def test_run_text(capsysbinary):
    assert main(["run", "examples/inner_p1_quaternion"]) == 0
    out = capsysbinary.readouterr().out.decode()
    assert "verdict: strong approximation away from S FAILS" in out


def test_run_json_with_oracle(capsysbinary):
    assert main(["run", "examples/inner_p1_quaternion", "--format", "json", "--oracle", "--workers", "2"]) == 0
    data = json.loads(capsysbinary.readouterr().out)
    assert data["oracle"]["passed"] is True


def test_validate(capsys):
    assert main(["validate", "examples/outer_q5_cubic"]) == 0
    assert "ok" in capsys.readouterr().out


def test_validation_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text(bundled_scenario_bytes("inner_p1_quaternion").decode().replace("degree = 3", "degree = -3"))
    assert main(["validate", str(bad)]) == 1
    assert "curve.places[4].degree" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.toml")]) == 1


def test_unsupported_exit_code(tmp_path):
    raw = bundled_scenario_bytes("outer_q5_cubic").decode()
    raw = raw.replace("t = { unramified = true", "t = { unramified = false")
    path = tmp_path / "unsupported.toml"
    path.write_text(raw)
    assert main(["run", str(path)]) == 2


def test_budget_exit_code(tmp_path):
    raw = bundled_scenario_bytes("inner_p1_quaternion").decode()
    raw = raw.replace("numerator = 1\ndenominator = 2", "numerator = 1\ndenominator = 1009")
    raw = raw.replace("budget = 1000000", "budget = 1000")
    path = tmp_path / "big.toml"
    path.write_text(raw)
    assert main(["run", str(path)]) == 0
    assert main(["run", str(path), "--oracle"]) == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "strongapprox", "run", "examples/outer_q5_cubic", "--format", "json"],
        capture_output=True,
        check=True,
    )
    assert json.loads(proc.stdout)["verdict"]["failure_proven"] is True
