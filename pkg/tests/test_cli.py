import csv
import io
import json
import shutil
import subprocess

import pytest

from ringres.body import body_to_text, preset
from ringres.cli import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main, run
from ringres.output import worker_count


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_locate(capsys):
    assert run(["resonance", "locate", "--p", "1", "--q", "1", "--body", "AS"]) == EXIT_OK
    (row,) = _rows(capsys.readouterr().out)
    assert float(row["r_res_km"]) == pytest.approx(1124.59, abs=0.01)
    assert float(row["d"]) < 0.01


def test_kam_check(capsys):
    assert run(["kam-check", "--body", "HA"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 6
    assert {r["verdict"] for r in rows} == {"non-degenerate"}


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["resonance"],
        ["resonance", "locate", "--p", "1"],
        ["equilibria", "--res", "1:4"],
        ["equilibria", "--e", "1.5"],
        ["equilibria", "--body", "XX"],
        ["potential", "sample", "--ell-max", "12"],
    ],
)
def test_configuration_errors(argv, capsys):
    assert run(argv) == EXIT_CONFIG


def test_numeric_failure():
    argv = ["potential", "sample", "--body", "HA", "--ell-max", "8", "--r-range", "20", "50", "--grid", "3"]
    assert run(argv) == EXIT_NUMERIC


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "reproduce-paper" in capsys.readouterr().out


def test_output_is_deterministic(capsys):
    argv = ["equilibria", "--body", "HA", "--res", "1:2", "--e", "0.1"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first
    kinds = [r["kind"] for r in _rows(first)]
    assert kinds.count("centre") >= 1 and kinds.count("saddle") >= 1


def test_out_directory(tmp_path, capsys):
    out = tmp_path / "run"
    assert run(["resonance", "reduce", "--res", "1:3", "--e", "0.1", "--out", str(out)]) == EXIT_OK
    stdout = capsys.readouterr().out
    files = sorted(p.name for p in out.iterdir())
    assert "config.json" in files and "manifest.json" in files
    (csv_name,) = [f for f in files if f.endswith(".csv")]
    assert (out / csv_name).read_text() == stdout
    cfg = json.loads((out / "config.json").read_text())
    assert cfg["res"] == "1:3" and cfg["e"] == 0.1
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["outputs"] == [csv_name]
    assert "numpy" in manifest["versions"]


def test_body_file(tmp_path, capsys):
    path = tmp_path / "ha.txt"
    path.write_text(body_to_text(preset("HA")))
    run(["resonance", "locate", "--p", "1", "--q", "2", "--body", str(path)])
    from_file = _rows(capsys.readouterr().out)
    run(["resonance", "locate", "--p", "1", "--q", "2", "--body", "HA"])
    assert _rows(capsys.readouterr().out) == from_file


def test_series_dump_round_trips(capsys):
    from ringres.series import PoissonSeries

    run(["hamiltonian", "expand", "--res", "1:1", "--rho-order", "4", "--ell-max", "3"])
    s = PoissonSeries.from_csv(capsys.readouterr().out)
    assert len(s) > 20


def test_amplitude_table(capsys):
    assert run(["amplitude", "--e-range", "0.001", "0.01", "--steps", "2"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows and all(float(r["separatrix_km2_s"]) > 0 for r in rows)


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("RINGRES_THREADS", "1")
    assert worker_count(8) == 1
    monkeypatch.setenv("RINGRES_THREADS", "3")
    assert worker_count(8) == 3
    monkeypatch.delenv("RINGRES_THREADS")
    assert worker_count(8) == 8


def test_main_accepts_argv(capsys):
    assert main(["resonance", "locate", "--p", "1", "--q", "3"]) == EXIT_OK


@pytest.mark.skipif(shutil.which("ringres") is None, reason="console script not installed")
def test_console_script():
    done = subprocess.run(["ringres", "resonance", "locate", "--p", "1", "--q", "1"], capture_output=True, text=True)
    assert done.returncode == 0
    assert done.stdout.startswith("p,q,")
    bad = subprocess.run(["ringres", "equilibria", "--e", "2"], capture_output=True, text=True)
    assert bad.returncode == EXIT_CONFIG
    assert "configuration error" in bad.stderr
