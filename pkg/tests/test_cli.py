import shutil
import subprocess

import pytest

from qgrad.cli import main, read_config, UsageError

QUICK = ["--dim", "3", "--runs", "2", "--max-evals", "2000"]


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_csv_output_and_column_order(capsys):
    code, out, _ = run_cli(capsys, "run", "--function", "elp", *QUICK, "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed,evals_used,best_f,success,iterations"
    assert [line.split(",")[0] for line in lines[1:3]] == ["0", "1"]
    assert lines[3].startswith("summary,")


def test_rerun_gives_identical_csv(capsys):
    args = ["run", "--function", "rtg", *QUICK, "--seed", "17", "--format", "csv"]
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_table_with_compare(capsys):
    code, out, _ = run_cli(capsys, "run", "--function", "ackl", *QUICK, "--compare")
    assert code == 0
    assert "F(x_best)" in out and "(published)" in out and "12,465" in out


def test_compare_goes_to_stderr_for_machine_formats(capsys):
    code, out, err = run_cli(capsys, "run", "--function", "ackl", *QUICK, "--format", "json", "--compare")
    assert code == 0
    assert out.lstrip().startswith("{")
    assert "(published)" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--function", "sphere"],
        ["run"],
        ["run", "--function", "elp", "--runs", "0"],
        ["run", "--function", "elp", "--beta", "1.0"],
        ["run", "--function", "elp", "--runs", "two"],
        ["run", "--function", "ros", "--dim", "1"],
        ["fly"],
    ],
)
def test_invalid_arguments_exit_1(argv, capsys):
    code, _, err = run_cli(capsys, *argv)
    assert code == 1
    assert err


def test_unwritable_output_exits_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "run", "--function", "elp", *QUICK,
                           "--out", str(tmp_path / "no" / "such" / "dir.csv"))
    assert code == 2
    assert "dir.csv" in err


def test_missing_config_exits_2(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "run", "--config", str(tmp_path / "absent.cfg"))
    assert code == 2


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "# quick Rastrigin check\n"
        "function = rtg\n"
        "runs = 3\n"
        "dim = 3\n"
        "max-evals = 2000\n"
        "seed 5\n"
        "format = csv\n"
    )
    code, out, _ = run_cli(capsys, "run", "--config", str(cfg))
    assert code == 0
    rows = out.splitlines()[1:-1]
    assert [r.split(",")[0] for r in rows] == ["5", "6", "7"]

    code, out, _ = run_cli(capsys, "run", "--config", str(cfg), "--runs", "1", "--seed", "40")
    rows = out.splitlines()[1:-1]
    assert [r.split(",")[0] for r in rows] == ["40"]


def test_config_errors(tmp_path):
    bad_key = tmp_path / "a.cfg"
    bad_key.write_text("colour = red\n")
    with pytest.raises(UsageError, match="colour"):
        read_config(bad_key)
    bad_value = tmp_path / "b.cfg"
    bad_value.write_text("runs = many\n")
    with pytest.raises(UsageError, match="runs"):
        read_config(bad_value)


def test_bad_config_exits_1(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("function = elp\nrunz = 3\n")
    code, _, err = run_cli(capsys, "run", "--config", str(cfg))
    assert code == 1 and "runz" in err


@pytest.mark.skipif(shutil.which("qgrad") is None, reason="console script not installed")
def test_console_script(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        ["qgrad", "run", "--function", "sch", *QUICK, "--format", "json", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert '"success_count"' in out.read_text()
    proc = subprocess.run(["qgrad", "run", "--function", "nope"], capture_output=True, text=True)
    assert proc.returncode == 1
