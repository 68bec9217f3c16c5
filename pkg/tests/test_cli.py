import csv
import subprocess
import sys
from pathlib import Path

import pytest

from termdev import mechanics as mech
from termdev.cli import main

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_circularity_identical_files(capsys):
    code, out, _ = run(capsys, "metrics", "circularity", "--cut", FIX / "square.csv",
                       "--template", FIX / "square.csv")
    assert code == 0 and out == "1.0000\n"


def test_mwu_fixture(capsys):
    code, out, _ = run(capsys, "stats", "mwu", FIX / "a.csv", FIX / "b.csv")
    lines = out.splitlines()
    assert code == 0
    assert "p 0.1000" in lines
    assert "statistic 0.0000" in lines
    assert "stars ns" in lines


def test_mwu_bonferroni(capsys):
    _, out, _ = run(capsys, "stats", "mwu", FIX / "a.csv", FIX / "b.csv", "--bonferroni", 3)
    assert "p_corrected 0.3000" in out.splitlines()


def test_ztest(capsys):
    code, out, _ = run(capsys, "stats", "ztest", "--hits-a", 30, "--n-a", 40,
                       "--hits-b", 20, "--n-b", 40)
    assert code == 0
    assert "statistic 2.3094" in out.splitlines()
    assert "stars *" in out.splitlines()


def test_deviation(capsys):
    code, out, _ = run(capsys, "metrics", "deviation", "--poses", FIX / "session_chest.csv",
                       FIX / "session_upper.csv")
    assert code == 0
    assert out.splitlines() == ["tracker,mean_deviation_deg", "chest,45.0000", "upper_arm,0.0000"]


def test_simulate_deterministic(tmp_path, capsys):
    outs = []
    for name in ("a.log", "b.log"):
        code, _, _ = run(capsys, "simulate", "--config", FIX / "flick_sim.toml",
                         "--emg", FIX / "flick_emg.csv", "--out", tmp_path / name)
        assert code == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]
    text = outs[0].decode()
    assert text.splitlines()[0].startswith("tick,t,s1,s2,branch,command")
    assert text.count("release=") == 1
    g = mech.FlickerGeometry(K=120.0, L0=0.02)
    events = [e for row in csv.reader(text.splitlines()[1:]) for e in row[-1].split(";") if e]
    value = float(next(e for e in events if e.startswith("release=")).split("=", 1)[1])
    assert value == pytest.approx(mech.stored_energy(g.theta_max, g), rel=1e-9)


def test_synth_then_simulate(tmp_path, capsys):
    emg = tmp_path / "e.csv"
    code, _, _ = run(capsys, "synth", "--segment", "0,1.2,0,0.4", "--segment", "1.5,1.7,1,0.4",
                     "--duration", 2.0, "--out", emg)
    assert code == 0
    assert emg.read_text() == (FIX / "flick_emg.csv").read_text()


def test_report(tmp_path, capsys):
    code, out, _ = run(capsys, "report", "--table", FIX / "trials.csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "task,comparison,test,statistic,p_raw,p_corrected,stars"
    assert lines[1] == "cut,1,mwu,0,0.1,0.2,ns"
    code, _, _ = run(capsys, "report", "--table", FIX / "hits.csv", "--out", tmp_path / "r.csv")
    assert code == 0
    assert (tmp_path / "r.csv").read_text().splitlines()[1].startswith("flick,1,ztest,2.3094")


@pytest.mark.parametrize("argv,kind", [
    (["metrics", "circularity", "--cut", "missing.csv", "--template", "missing.csv"], "IoError"),
    (["metrics", "circularity", "--cut", FIX / "bad_polygon.csv", "--template", FIX / "square.csv"],
     "ParseError"),
    (["report", "--table", FIX / "bad_trials.csv"], "ParseError"),
    (["simulate", "--config", FIX / "mismatch_sim.toml", "--emg", FIX / "flick_emg.csv",
      "--out", "unused.log"], "ConfigMismatch"),
    (["stats", "ztest", "--hits-a", 0, "--n-a", 5, "--hits-b", 0, "--n-b", 5],
     "DegenerateProportions"),
])
def test_errors_exit_nonzero(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code != 0
    assert err.startswith(f"termdev: {kind}:")
    assert err.count("\n") == 1


def test_parse_error_reports_line(capsys):
    _, _, err = run(capsys, "report", "--table", FIX / "bad_trials.csv")
    assert "bad_trials.csv:3:" in err


def test_console_module_entry():
    res = subprocess.run([sys.executable, "-m", "termdev", "stats", "mwu",
                          str(FIX / "a.csv"), str(FIX / "b.csv")], capture_output=True, text=True)
    assert res.returncode == 0
    assert "p 0.1000" in res.stdout
