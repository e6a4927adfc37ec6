import json
import subprocess
import sys

import numpy as np
import pytest

from eof2xd.cli import main
from eof2xd.sweep import (
    ConfigError,
    SweepConfig,
    SweepResult,
    emit,
    evaluate_point,
    load,
    run_sweep,
)

HEADER = "tau,eof,winner,cc,discord,lower_bound,identity_residual,oracle_gap,cand_x,cand_z,cand_oblique"


@pytest.fixture(scope="module")
def small():
    return run_sweep(SweepConfig(points=101))


def test_header_matches_schema(small, tmp_path):
    path = emit(small, tmp_path / "s.csv")
    assert path.read_text().splitlines()[0] == HEADER


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip(small, tmp_path, fmt):
    path = emit(small, tmp_path / f"s.{fmt}", fmt)
    back = load(path)
    assert len(back) == len(small.records)
    for a, b in zip(small.records, back):
        assert b.winner == a.winner and b.oracle_gap is None
        for name in ("tau", "eof", "classical_correlation", "discord", "lower_bound", "identity_residual"):
            assert getattr(b, name) == pytest.approx(getattr(a, name), rel=1e-11, abs=1e-300)
        assert dict(b.candidate_entropies) == pytest.approx(dict(a.candidate_entropies), rel=1e-11)


def test_metadata(small, tmp_path):
    path = emit(small, tmp_path / "s.csv")
    meta = json.loads((tmp_path / "s.csv.meta.json").read_text())
    assert len(meta["crossovers"]) == 2
    assert meta["config"]["points"] == 101 and "version" in meta
    doc = json.loads(emit(small, tmp_path / "s.json", "json").read_text())
    assert doc["metadata"]["crossovers"] == meta["crossovers"]
    assert ",".join(doc["columns"]) == HEADER
    assert path.exists()


def test_rerun_is_byte_identical(tmp_path):
    cfg = SweepConfig(model="common_reservoir", alpha=0.3, points=51)
    a = emit(run_sweep(cfg), tmp_path / "a.csv").read_bytes()
    b = emit(run_sweep(cfg), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_period_endpoints():
    res = run_sweep(SweepConfig(points=2, tau_min=0.0, tau_max=1.0))
    assert [r.tau for r in res.records] == [0.0, 1.0]
    assert all(r.eof < 1e-8 for r in res.records)


def test_reservoir_decays():
    res = run_sweep(SweepConfig(model="common_reservoir", alpha=0.3, points=51))
    assert len(res.crossovers) == 1
    assert res.records[-1].eof < res.records[10].eof


def test_oracle_does_not_change_the_value():
    cfg = SweepConfig(model="tavis_cummings", n=1, alpha=0.6, points=15)
    plain = run_sweep(cfg)
    checked = run_sweep(SweepConfig(model="tavis_cummings", n=1, alpha=0.6, points=15, oracle=True))
    for a, b in zip(plain.records, checked.records):
        assert abs(a.eof - b.eof) <= 1e-6
        assert b.oracle_gap is not None and b.oracle_gap >= -1e-6


def test_sweep_invariants():
    for r in run_sweep(SweepConfig(n=2, points=41)).records:
        assert r.eof >= -1e-9 and r.identity_residual >= 0
        assert r.classical_correlation >= -1e-9 and r.discord >= -1e-9


@pytest.mark.parametrize(
    "kwargs, field",
    [
        ({"model": "jaynes"}, "model"),
        ({"alpha": 1.5}, "alpha"),
        ({"n": -1}, "n"),
        ({"points": 1}, "points"),
        ({"tau_min": 0.5, "tau_max": 0.2}, "tau_max"),
        ({"format": "xml"}, "format"),
    ],
)
def test_config_errors_name_the_field(kwargs, field):
    with pytest.raises(ConfigError) as err:
        SweepConfig(**kwargs)
    assert err.value.field == field


def test_emit_errors(small, tmp_path):
    with pytest.raises(ValueError):
        emit(SweepResult(small.config, []), tmp_path / "x.csv")
    with pytest.raises(OSError):
        emit(small, tmp_path / "missing" / "x.csv")


def test_evaluate_point_record():
    r = evaluate_point(SweepConfig(), 0.25)
    assert r.winner in dict(r.candidate_entropies)
    assert r.eof == min(v for _, v in r.candidate_entropies)


# --- command line -------------------------------------------------------------

def test_cli_writes_csv(tmp_path, capsys):
    out = tmp_path / "vacuum.csv"
    assert main(["--model", "tavis_cummings", "--points", "21", "--out", str(out)]) == 0
    assert out.read_text().startswith(HEADER)
    printed = capsys.readouterr().out
    assert "crossover tau=0.40097" in printed or "crossover tau=0.40098" in printed


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "r.json"
    cfg.write_text(json.dumps({"model": "common_reservoir", "alpha": 0.3, "points": 11, "format": "json"}))
    assert main(["--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["metadata"]["config"]["model"] == "common_reservoir"
    assert len(doc["records"]) == 11


def test_cli_flags_override_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"points": 11, "alpha": 0.3}))
    out = tmp_path / "r.csv"
    assert main(["--config", str(cfg), "--points", "5", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 6


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["--alpha", "2"], "alpha"),
        (["--points", "1"], "points"),
        (["--tau-min", "1", "--tau-max", "0.5"], "tau_max"),
    ],
)
def test_cli_rejects_bad_values(argv, needle, tmp_path, capsys):
    assert main(argv + ["--out", str(tmp_path / "x.csv")]) == 2
    assert needle in capsys.readouterr().err


def test_cli_rejects_unknown_config_field(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"pointz": 3}))
    assert main(["--config", str(cfg)]) == 2
    assert "pointz" in capsys.readouterr().err


def test_cli_unwritable_output(tmp_path, capsys):
    assert main(["--points", "3", "--out", str(tmp_path / "no" / "x.csv")]) == 2
    assert "error" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "eof2xd", "--points", "3", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert np.loadtxt(out, delimiter=",", skiprows=1, usecols=0).tolist() == [0.0, 0.5, 1.0]
