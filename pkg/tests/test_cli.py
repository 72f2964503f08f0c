"""CLI contracts: exit codes, file outputs, determinism."""

import json
import subprocess
import sys

from ffplanes.cli import main
from ffplanes.runners import SweepConfig, run_sweep, run_verify


def test_verify_default_full_configuration(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    code = main(["verify", "--field", "5", "--dim", "2", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.startswith("# schema: ffplanes.verify.v1\n")
    row = text.strip().splitlines()[-1]
    assert row.startswith("0,full,5,1,5,2,")
    assert ",25,40,5,5,4," in row  # sizes, maxline, distinct counts
    summary = json.loads((tmp_path / "verify.csv.json").read_text())
    assert summary["failures"] == 0
    assert summary["instances"] == 1
    assert summary["orbit_checks"][0]["status"] == "ran"


def test_verify_corrupt_mode_fails(tmp_path):
    out = tmp_path / "bad.csv"
    code = main([
        "verify", "--field", "3", "--dim", "2", "--selftest-corrupt",
        "--out", str(out),
    ])
    assert code == 1
    summary = json.loads((tmp_path / "bad.csv.json").read_text())
    assert summary["failures"] >= 1


def test_verify_random_sizes_and_empty_skip(tmp_path):
    out = tmp_path / "run.csv"
    code = main([
        "verify", "--field", "3", "--dim", "2", "--esize", "0,4",
        "--fsize", "6", "--trials", "2", "--seed", "9", "--out", str(out),
    ])
    assert code == 0
    summary = json.loads((tmp_path / "run.csv.json").read_text())
    assert summary["skipped"]  # the empty size was skipped with a notice
    rows = out.read_text().strip().splitlines()[2:]
    assert len(rows) == 2  # only the nonempty size contributes


def test_sweep_row_count_and_determinism():
    config = SweepConfig(
        fields=((3, 1),), dims=(2,), e_sizes=(3, 6), f_sizes=(4, 8),
        trials=3, seed=11,
    )
    a = run_sweep(config)
    b = run_sweep(config)
    assert a.exit_code == 0
    assert a.csv_text == b.csv_text  # byte-identical
    rows = a.csv_text.strip().splitlines()[2:]
    assert len(rows) == 2 * 2 * 3
    assert a.summary["cells"][0]["min_distinct_all"] >= 1


def test_verify_determinism():
    config = SweepConfig(fields=((5, 1),), dims=(2,), e_sizes=(10,), f_sizes=(12,), trials=3, seed=4)
    assert run_verify(config).csv_text == run_verify(config).csv_text


def test_sharpness_command(tmp_path):
    out = tmp_path / "sharp.csv"
    code = main(["sharpness", "--prime", "3", "--dim", "2", "--out", str(out)])
    assert code == 0
    summary = json.loads((tmp_path / "sharp.csv.json").read_text())
    assert summary["subfield_closed"] is True
    assert summary["distinct_nonzero"] <= 2


def test_sharpness_rejects_even_characteristic(capsys):
    assert main(["sharpness", "--prime", "2", "--dim", "2"]) == 2
    assert "error:" in capsys.readouterr().err


def test_fourier_test_command(tmp_path):
    out = tmp_path / "fourier.csv"
    code = main([
        "fourier-test", "--field", "3", "--dim", "2", "--trials", "5",
        "--seed", "3", "--out", str(out),
    ])
    assert code == 0
    rows = out.read_text().strip().splitlines()[2:]
    assert len(rows) == 5


def test_orbit_check_command(tmp_path):
    out = tmp_path / "orbit.csv"
    code = main(["orbit-check", "--field", "3", "--dim", "2", "--out", str(out)])
    assert code == 0
    summary = json.loads((tmp_path / "orbit.csv.json").read_text())
    assert summary["group_order"] == 8
    assert summary["invariance"]["failures"] == 0
    assert summary["witness"]["failures"] == 0


def test_orbit_check_budget(capsys):
    assert main(["orbit-check", "--field", "5", "--dim", "2", "--budget", "10"]) == 2
    assert "error:" in capsys.readouterr().err


def test_stdout_mode(capsys):
    code = main(["verify", "--field", "3", "--dim", "2"])
    assert code == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("# schema: ffplanes.verify.v1\n")
    assert json.loads(captured.err)["failures"] == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ffplanes.cli", "sharpness", "--prime", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("# schema: ffplanes.sharpness.v1\n")
