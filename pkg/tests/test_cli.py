import csv
import json
from types import SimpleNamespace

import pytest

from app.cli import CommandName, RunConfig, run
from app.cli.__main__ import main
from app.cli.commands import maxent as maxent_commands
from app.cli.demo import ghz_state
from app.constants import EXIT_NOT_CONVERGED, EXIT_OK, EXIT_VALIDATION
from app.io import write_json, write_state
from app.maxent import SolverMethod


def run_cli(capsys, *argv) -> tuple[int, dict]:
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def bell_file(tmp_path, bell_pair):
    path = tmp_path / "bell.json"
    write_state(path, bell_pair)
    return path


def test_bell(capsys):
    code, report = run_cli(capsys, "bell", "--t", "0.5,0,0")
    assert code == EXIT_OK
    assert report["command"] == "bell"
    assert report["results"]["separable"]
    assert report["results"]["lambda"] == pytest.approx([0.375, 0.125, 0.375, 0.125])


def test_bell_singlet_by_lambda(capsys):
    code, report = run_cli(capsys, "bell", "--lambda", "0,0,0,1", "--bits")
    assert code == EXIT_OK
    assert report["results"]["entangled"]
    assert report["results"]["mutual_information"] == pytest.approx(2.0)


def test_bell_needs_one_parametrization(capsys):
    code, report = run_cli(capsys, "bell")
    assert code == EXIT_VALIDATION
    assert "exactly one" in report["diagnostics"][0]


def test_ck_of_the_whole_system_is_zero(capsys, bell_file):
    code, report = run_cli(capsys, "ck", "--state", str(bell_file), "--k", "2")
    assert code == EXIT_OK
    assert report["results"]["c"] == 0.0


def test_bad_state_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    write_json(path, {"shape": {"sizes": [2]}, "probabilities": [0.2, 0.2]})
    code, report = run_cli(capsys, "ck", "--state", str(path), "--k", "1")
    assert code == EXIT_VALIDATION
    assert str(path) in report["diagnostics"][0]


def test_multi_information_in_bits(capsys, bell_file):
    code, report = run_cli(capsys, "multiinfo", "--state", str(bell_file), "--bits")
    assert code == EXIT_OK
    assert report["units"] == "bits"
    assert report["results"]["multi_information"] == pytest.approx(2.0)
    assert report["results"]["divergence"] == pytest.approx(2.0, abs=1e-6)


def test_project_with_hypergraph(capsys, tmp_path, bell_file):
    U = tmp_path / "U.json"
    write_json(U, {"N": 2, "generators": [[0], [1]]})
    code, report = run_cli(capsys, "project", "--state", str(bell_file), "--hypergraph", str(U), "--method", "dual")
    assert code == EXIT_OK
    assert report["results"]["method"] == "dual"
    assert report["results"]["pi"]["shape"]["sizes"] == [2, 2]


def test_toric_kernel_csv(capsys, tmp_path):
    out = tmp_path / "kernel.csv"
    code, report = run_cli(capsys, "toric", "--shape", "2,2,2", "--k", "2", "--out", str(out))
    assert code == EXIT_OK
    assert report["results"]["kernel_rank"] == 1
    with open(out, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["000", "001", "010", "011", "100", "101", "110", "111"]
    assert rows[1] == ["1", "-1", "-1", "1", "-1", "1", "1", "-1"]


def test_feasibility_exhaustive(capsys):
    code, report = run_cli(capsys, "feasibility", "--shape", "2,2,2", "--k", "2", "--exhaustive")
    assert code == EXIT_OK
    results = report["results"]
    assert not results["weight_one"]["feasible"]
    assert results["exhaustive"]["small_sets_feasible"]


def test_feasibility_of_one_support(capsys):
    code, report = run_cli(capsys, "feasibility", "--shape", "2,2,2", "--k", "2", "--support", "000,111")
    assert code == EXIT_OK
    assert report["results"]["support"] == {"support": ["000", "111"], "feasible": True}


def test_dims(capsys):
    code, report = run_cli(capsys, "dims", "--shape", "2,2,2", "--quantum", "--verify")
    assert code == EXIT_OK
    assert [row["dim_model"] for row in report["results"]["models"]] == [9, 36, 63]
    assert all(row["rank"] == row["dim_total"] for row in report["results"]["models"])


def test_basis(capsys):
    code, report = run_cli(capsys, "basis", "--n", "3")
    assert code == EXIT_OK
    assert len(report["results"]["elements"]) == 9
    assert report["results"]["adjoint_deviation"] <= 1e-12


def test_fig1_csv(capsys, tmp_path):
    out = tmp_path / "fig1.csv"
    code, report = run_cli(capsys, "fig1", "--grid", "2", "--out", str(out))
    assert code == EXIT_OK
    assert report["results"]["counts"]["points"] == 4 + 6 + 1 + 8
    with open(out, newline="") as f:
        assert len(list(csv.reader(f))) == 1 + 19


def test_report_goes_to_out(capsys, tmp_path):
    out = tmp_path / "report.json"
    assert main(["bell", "--t", "0,0,0", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["results"]["mutual_information"] == pytest.approx(0.0, abs=1e-12)


def test_demo_subset(capsys):
    code, report = run_cli(capsys, "demo", "--only", "7,9")
    assert code == EXIT_OK
    assert report["results"]["passed"] == 2
    assert [c["index"] for c in report["results"]["criteria"]] == [7, 9]


def test_demo_rejects_unknown_criteria(capsys):
    code, report = run_cli(capsys, "demo", "--only", "12")
    assert code == EXIT_VALIDATION
    assert "Unknown criteria" in report["diagnostics"][0]


def test_non_standard_tolerance_is_reported(capsys):
    code, report = run_cli(capsys, "demo", "--only", "9", "--tol", "0.1")
    assert code == EXIT_OK
    assert "tol=0.1" in report["non_standard"]
    assert report["tolerance"] == 0.1


def test_theorem1_digest_is_deterministic():
    config = RunConfig(command=CommandName.THEOREM1, arguments={"samples": 200}, seed=4)
    first, second = run(config), run(config)
    assert first.exit_code == EXIT_OK
    assert first.digest == second.digest
    assert run(config.model_copy(update={"seed": 5})).digest != first.digest


def test_unconverged_exit_code(monkeypatch):
    stalled = SimpleNamespace(
        divergence=0.1,
        constraint_residual=1.0,
        tolerance=1e-8,
        iterations=500,
        method=SolverMethod.DUAL,
        diagnostics=["dual: iteration limit"],
        converged=False,
    )
    monkeypatch.setattr(maxent_commands, "read_state", lambda path: ghz_state())
    monkeypatch.setattr(maxent_commands, "project_k", lambda *args: stalled)
    report = run(RunConfig(command=CommandName.CK, arguments={"state": "ghz.json", "k": 2}))
    assert report.exit_code == EXIT_NOT_CONVERGED
    assert report.diagnostics == ["dual: iteration limit"]
