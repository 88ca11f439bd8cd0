import json
import math

import pytest

from exppoly.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_extract_root_worked_example(capsys):
    code, out, err = run_cli(capsys, "extract-root", "Y^2 - 2*z*Y + z^2 - exp[2*z]")
    assert code == 0
    lines = out.strip().splitlines()
    assert set(lines[:-1]) == {"exp[z] + z", "-exp[z] + z"}
    assert lines[-1] == "verified=true"


def test_extract_root_refined_basis(capsys):
    code, out, _ = run_cli(capsys, "extract-root", "Y^2 - exp[2*z]")
    assert code == 0
    assert set(out.strip().splitlines()[:-1]) == {"exp[z]", "-exp[z]"}


def test_extract_root_empty(capsys):
    code, out, _ = run_cli(capsys, "extract-root", "Y^2 - z")
    assert code == 0
    assert out.strip().splitlines()[-1] == "verified=true"


def test_indep_dependence_exit_code(capsys):
    code, out, _ = run_cli(capsys, "indep", "exp[z]; exp[2*z]")
    assert code == 1
    payload = json.loads(out)
    assert payload["dependence"] == [2, -1]
    code, out, _ = run_cli(capsys, "indep", "exp[z]; exp[i*z]")
    assert code == 0
    assert json.loads(out)["independent"] is True


def test_analyze_csv_counting_column(tmp_path, capsys):
    out_path = tmp_path / "samples.csv"
    code, _, _ = run_cli(
        capsys,
        "analyze",
        "exp[z] - 1",
        "--r-grid",
        "1:22:8",
        "--format",
        "csv",
        "--out",
        str(out_path),
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    header = lines[0].split(",")
    assert header[:4] == ["r", "T", "m", "N"]
    row7 = next(line for line in lines[1:] if line.startswith("7,"))
    n_column = float(row7.split(",")[3])
    expected = math.log(7) + 2 * math.log(7 / (2 * math.pi))
    assert abs(n_column - expected) < 1e-6
    manifest = json.loads((tmp_path / "samples.csv.manifest.json").read_text())
    assert manifest["command"] == "analyze"
    assert "wall_time_s" in manifest


def test_zeros_json(capsys):
    code, out, _ = run_cli(capsys, "zeros", "exp[z] - 1", "--r", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["winding"] == 3
    assert len(payload["zeros"]) == 3


def test_disc_reports_zero_discriminant(capsys):
    code, out, _ = run_cli(capsys, "disc", "Y^2 - 2*exp[z]*Y + exp[2*z]")
    assert code == 0
    payload = json.loads(out)
    assert payload["is_zero"] is True


def test_disc_value(capsys):
    code, out, _ = run_cli(capsys, "disc", "Y^2 - exp[z]")
    assert code == 0
    payload = json.loads(out)
    assert payload["discriminant"] == "4*exp[z]"
    assert payload["squarefree"] is True


def test_du_command(capsys):
    code, out, _ = run_cli(capsys, "du", "exp[z^2]")
    assert code == 0
    assert json.loads(out)["result"] == "2*z*exp[z^2]"


def test_squarefree_command(capsys):
    code, out, _ = run_cli(capsys, "squarefree", "(exp[z] - 1)^2 * (exp[z] + 1)")
    assert code == 0
    payload = json.loads(out)
    assert payload["is_squarefree"] is False
    assert {f["multiplicity"] for f in payload["factors"]} == {1, 2}


def test_separate_command(capsys):
    code, out, _ = run_cli(capsys, "separate", "Y^2 - exp[2*z]", "--var", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["t"] == "-1/2"
    assert payload["factor"] == 2


def test_separate_precondition_exit_2(capsys):
    code, _, err = run_cli(
        capsys, "separate", "Y^2 - exp[z^2] - exp[z]", "--var", "0"
    )
    assert code == 2
    diag = json.loads(err.strip().splitlines()[-1])
    assert diag["level"] == "error"


def test_extract_root_hypothesis_failure_exit_2(capsys):
    code, _, err = run_cli(capsys, "extract-root", "Y^2 - 2*exp[z]*Y + exp[2*z]")
    assert code == 2
    assert "discriminant" in err


def test_usage_error_exit_3(capsys):
    code, _, err = run_cli(capsys, "analyze", "exp[z]", "--r-grid", "nonsense")
    assert code == 3
    code, _, _ = run_cli(capsys, "zeros", "exp[z^y]", "--r", "3")
    assert code == 3


def test_gcd_count_command(capsys):
    code, out, _ = run_cli(
        capsys, "gcd-count", "exp[z] + 1", "exp[z^2] + 1", "--r-grid", "2:10:3"
    )
    assert code == 0
    payload = json.loads(out)
    assert all(entry["n_gcd"] == 0 for entry in payload["gcd_counting"])


def test_smt_check_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "smt-check",
        "exp[z] + exp[i*z] + exp[z^2]",
        "--r-grid",
        "2:8:4",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True


def test_check_first_main(capsys):
    code, out, _ = run_cli(
        capsys, "check", "first-main", "exp[z]", "--a", "1", "--r-grid", "5:50:10"
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_check_transversal(capsys):
    code, out, _ = run_cli(
        capsys,
        "check",
        "transversal",
        "x0^2 - x1^2",
        "x0 + 2*x1",
        "--z0",
        "0",
    )
    assert code == 0


def test_byte_stable_output(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(
            capsys,
            "zeros",
            "exp[z] - 1",
            "--r",
            "7",
            "--out",
            str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text("[analyze]\nr-grid = 1:8:4\nformat = json\n")
    code, out, _ = run_cli(
        capsys, "analyze", "exp[z]", "--r-grid", "1:4:2", "--config", str(config)
    )
    # explicit flag wins over config
    assert code == 0
    assert len(json.loads(out)["samples"]) == 2
