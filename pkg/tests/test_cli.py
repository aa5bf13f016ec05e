import json
import subprocess
import sys

import pytest

from opentomo.cli import main

QNT = {"scenario": "qutrit", "params": {"eta1": 2, "eta2": 4}, "sweep": {"name": "t", "start": 0, "stop": 3, "count": 7}}


def write_config(tmp_path, cfg):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return p


def test_sweep_writes_csv(tmp_path):
    out = tmp_path / "out.csv"
    assert main(["sweep", "--config", str(write_config(tmp_path, QNT)), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# units: hbar = k_B = 1"
    assert lines[2] == "t,w0,w1,w2"
    assert lines[3] == "0,0.83333333333333337,0.083333333333333329,0.083333333333333329"


def test_sweep_byte_identical_serial_parallel(tmp_path):
    cfg = write_config(tmp_path, {"scenario": "qnd", "params": {"T": 1.0},
                                  "sweep": {"name": "t", "start": 0, "stop": 15, "count": 12}})
    a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    assert main(["sweep", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["sweep", "--config", str(cfg), "--out", str(b)]) == 0
    assert main(["sweep", "--config", str(cfg), "--out", str(c), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_set_overrides(tmp_path, capsys):
    cfg = write_config(tmp_path, QNT)
    assert main(["sweep", "--config", str(cfg), "--set", "eta1=3", "--set", "sweep.count=3", "--out", "-"]) == 0
    text = capsys.readouterr().out
    assert '"eta1": 3.0' in text
    assert len(text.splitlines()) == 6


@pytest.mark.parametrize("extra", [["--set", "bogus=1"], ["--set", "t=-1"], ["--set", "sweep.count=1"],
                                   ["--set", "sweep.start=-2"], ["--workers", "0"]])
def test_config_errors_exit_2(tmp_path, extra, capsys):
    cfg = write_config(tmp_path, QNT)
    assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv"), *extra]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_bad_config_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["sweep", "--config", str(bad), "--out", "-"]) == 2
    assert main(["sweep", "--config", str(tmp_path / "missing.json"), "--out", "-"]) == 2


def test_compute_error_exit_3(tmp_path):
    cfg = write_config(tmp_path, {"scenario": "optical", "params": {"N": 0, "r": 1, "theta": 0},
                                  "sweep": {"name": "t", "start": 0, "stop": 5, "count": 3}})
    assert main(["sweep", "--config", str(cfg), "--out", "-"]) == 3


def test_point_text(capsys):
    assert main(["point", "--scenario", "qnd", "--t", "0"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "# units: hbar = k_B = 1"
    assert out[2] == "w_plus = 0.61207193402100657"


def test_point_json(capsys):
    assert main(["point", "--scenario", "optical", "--t=1000", "--X", "0", "--json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["params"]["t"] == 1000.0
    assert rec["values"]["density"] == pytest.approx(0.2303294329808903, abs=1e-12)


def test_point_errors():
    assert main(["point", "--scenario", "qnd", "--nope", "1"]) == 2
    assert main(["point", "--scenario", "qnd", "--t"]) == 2
    assert main(["point", "--scenario", "qnd", "stray"]) == 2


def test_verify_single(capsys):
    assert main(["verify", "qutrit"]) == 0
    out = capsys.readouterr().out
    assert "qutrit/closed-form-vs-kraus-wigner-pipeline" in out
    assert "brute-triple-loop-vs-pipeline" in out
    assert "FAIL" not in out


def test_verify_json(capsys):
    assert main(["verify", "spin1", "--json"]) == 0
    recs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert recs and all(r["passed"] and r["scenario"] == "spin1" for r in recs)
    assert set(recs[0]) >= {"name", "deviation", "tolerance", "passed"}


def test_scenarios_listing(capsys):
    assert main(["scenarios"]) == 0
    out = capsys.readouterr().out
    for name in ("qnd", "sgad", "two_qubit", "spin1", "qutrit", "optical"):
        assert f"{name}:" in out


def test_unknown_flag_on_other_command():
    with pytest.raises(SystemExit):
        main(["verify", "--bogus"])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "opentomo.cli", "point", "--scenario", "qutrit"],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0
    assert "w0 = " in res.stdout


def test_shipped_configs(tmp_path):
    from pathlib import Path

    configs = sorted((Path(__file__).parents[1] / "configs").glob("*.json"))
    assert len(configs) == 6
    for cfg in configs:
        out = tmp_path / (cfg.stem + ".csv")
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        assert out.read_text().startswith("# units: hbar = k_B = 1\n")
