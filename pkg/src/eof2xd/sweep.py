"""Time sweeps over the two models and CSV/JSON serialisation of the results."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .bounds import caf_lower_bound
from .linalg import von_neumann_entropy
from .models import (
    ReservoirParams,
    TCParams,
    reservoir_theta_candidates,
    reservoir_tripartite_state,
    tc_amplitudes,
    tc_theta_candidates_n0,
    tc_time,
    tc_tripartite_state,
)
from .oracle import Crossover, OptimizerConfig, detect_crossovers, minimize_conditional_entropy
from .xstate import (
    EXTREMAL_LABELS,
    classical_correlation,
    oblique_candidate,
    eof_xstate,
    quantum_discord,
    xstate_candidates,
    xstate_reduction,
)

MODELS = ("tavis_cummings", "common_reservoir")
FORMATS = ("csv", "json")
BASE_COLUMNS = ["tau", "eof", "winner", "cc", "discord", "lower_bound", "identity_residual", "oracle_gap"]


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class InvariantError(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    model: str = "tavis_cummings"
    alpha: float = 1 / math.sqrt(2)
    n: int = 0
    tau_min: float = 0.0
    tau_max: float | None = None
    points: int = 1001
    oracle: bool = False
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError("model", f"must be one of {MODELS}, got {self.model!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha", f"must lie in [0, 1], got {self.alpha!r}")
        if int(self.n) != self.n or self.n < 0:
            raise ConfigError("n", f"must be a non-negative integer, got {self.n!r}")
        if self.points < 2:
            raise ConfigError("points", f"must be >= 2, got {self.points!r}")
        if self.tau_min < 0:
            raise ConfigError("tau_min", "must be non-negative")
        if self.tau_end <= self.tau_min:
            raise ConfigError("tau_max", f"must exceed tau_min ({self.tau_min!r})")
        if self.format not in FORMATS:
            raise ConfigError("format", f"must be one of {FORMATS}, got {self.format!r}")

    @property
    def tau_end(self) -> float:
        if self.tau_max is not None:
            return float(self.tau_max)
        return 1.0 if self.model == "tavis_cummings" else 5.0

    def grid(self) -> np.ndarray:
        return np.linspace(self.tau_min, self.tau_end, self.points)


@dataclass(frozen=True)
class SweepRecord:
    tau: float
    eof: float
    winner: str
    candidate_entropies: tuple
    classical_correlation: float
    discord: float
    lower_bound: float
    identity_residual: float
    oracle_gap: float | None = None


@dataclass
class SweepResult:
    config: SweepConfig
    records: list[SweepRecord]
    crossovers: list[Crossover] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)


def _state_and_candidates(cfg: SweepConfig, tau: float):
    if cfg.model == "tavis_cummings":
        p = TCParams.from_alpha(cfg.alpha, n=cfg.n)
        t = tc_time(p.n, tau)
        psi = tc_tripartite_state(p, t)
        x = xstate_reduction(psi)
        if p.n == 0:
            cands = tc_theta_candidates_n0(p, tc_amplitudes(p, t)) + [oblique_candidate(x)]
        else:
            cands = xstate_candidates(x)
    else:
        p = ReservoirParams.from_alpha(cfg.alpha)
        t = tau / p.gamma
        psi = reservoir_tripartite_state(p, t)
        x = xstate_reduction(psi)
        cands = reservoir_theta_candidates(p, t) + [oblique_candidate(x)]
    return psi, x, cands


def candidate_evaluator(cfg: SweepConfig) -> Callable[[float], dict]:
    """Map a time to ``{label: conditional entropy}`` for the configured model."""

    def evaluate(tau: float) -> dict:
        _, _, cands = _state_and_candidates(cfg, tau)
        return {c.label: c.entropy for c in cands}

    return evaluate


def evaluate_point(cfg: SweepConfig, tau: float, oracle_cfg: OptimizerConfig | None = None) -> SweepRecord:
    psi, x, cands = _state_and_candidates(cfg, tau)
    eof, winner = eof_xstate(x, cands)
    s_a = von_neumann_entropy(psi.reduced([0]))
    cc = classical_correlation(x, eof)
    discord = quantum_discord(x, eof)
    bound = caf_lower_bound(psi.reduced([0, 2]), [2, psi.dims.dC]).eof_lower
    gap = None
    if cfg.oracle:
        best, _ = minimize_conditional_entropy(x.matrix(), oracle_cfg)
        gap = eof - best
    return SweepRecord(
        tau=float(tau),
        eof=eof,
        winner=winner,
        candidate_entropies=tuple((c.label, c.entropy) for c in cands),
        classical_correlation=cc,
        discord=discord,
        lower_bound=bound,
        identity_residual=abs(eof + cc - s_a),
        oracle_gap=gap,
    )


def _check(rec: SweepRecord):
    if rec.eof < -1e-9:
        raise InvariantError(f"negative EoF {rec.eof:.3e} at tau={rec.tau}")
    if rec.oracle_gap is not None and rec.oracle_gap < -1e-6:
        raise InvariantError(f"oracle beats the closed-form candidates by {-rec.oracle_gap:.3e} at tau={rec.tau}")


def run_sweep(cfg: SweepConfig, oracle_cfg: OptimizerConfig | None = None) -> SweepResult:
    records = []
    for tau in cfg.grid():
        rec = evaluate_point(cfg, float(tau), oracle_cfg)
        _check(rec)
        records.append(rec)
    # crossovers are where the closed-form extremal entropies swap order; the
    # oblique minimiser only smooths the EoF in a narrow window around them
    crossings = detect_crossovers(records, candidate_evaluator(cfg), labels=EXTREMAL_LABELS)
    return SweepResult(cfg, records, crossings)


# --- serialisation ----------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    return format(float(v), ".12g")


def candidate_labels(records) -> list[str]:
    labels: list[str] = []
    for r in records:
        for label, _ in r.candidate_entropies:
            if label not in labels:
                labels.append(label)
    return labels


def header(records) -> list[str]:
    return BASE_COLUMNS + [f"cand_{label}" for label in candidate_labels(records)]


def _row(r: SweepRecord, labels: list[str]) -> dict:
    cands = dict(r.candidate_entropies)
    row = {
        "tau": _fmt(r.tau),
        "eof": _fmt(r.eof),
        "winner": r.winner,
        "cc": _fmt(r.classical_correlation),
        "discord": _fmt(r.discord),
        "lower_bound": _fmt(r.lower_bound),
        "identity_residual": _fmt(r.identity_residual),
        "oracle_gap": _fmt(r.oracle_gap),
    }
    for label in labels:
        row[f"cand_{label}"] = _fmt(cands.get(label))
    return row


def metadata(result: SweepResult) -> dict:
    return {
        "config": asdict(result.config),
        "crossovers": [asdict(c) for c in result.crossovers],
        "version": __version__,
    }


def emit(result: SweepResult, path: str | Path | None = None, fmt: str | None = None) -> Path:
    """Write the records as CSV or JSON.

    CSV output gets a ``<path>.meta.json`` sidecar holding the config echo and
    crossovers; JSON output carries them inline under ``metadata``.
    """
    if not result.records:
        raise ValueError("nothing to emit")
    cfg = result.config
    path = Path(path or cfg.output_path or f"sweep.{fmt or cfg.format}")
    fmt = fmt or cfg.format
    labels = candidate_labels(result.records)
    rows = [_row(r, labels) for r in result.records]
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=header(result.records), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        sidecar = path.with_name(path.name + ".meta.json")
        sidecar.write_text(json.dumps(metadata(result), indent=2, sort_keys=True) + "\n")
    elif fmt == "json":
        doc = {"metadata": metadata(result), "columns": header(result.records), "records": rows}
        path.write_text(json.dumps(doc, indent=2) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return path


def _parse_row(row: dict) -> SweepRecord:
    cands = tuple(
        (k[len("cand_"):], float(v)) for k, v in row.items() if k.startswith("cand_") and v != ""
    )
    return SweepRecord(
        tau=float(row["tau"]),
        eof=float(row["eof"]),
        winner=row["winner"],
        candidate_entropies=cands,
        classical_correlation=float(row["cc"]),
        discord=float(row["discord"]),
        lower_bound=float(row["lower_bound"]),
        identity_residual=float(row["identity_residual"]),
        oracle_gap=float(row["oracle_gap"]) if row["oracle_gap"] != "" else None,
    )


def load(path: str | Path) -> list[SweepRecord]:
    """Read records written by :func:`emit` (format chosen by extension)."""
    path = Path(path)
    if path.suffix == ".json":
        doc = json.loads(path.read_text())
        return [_parse_row(r) for r in doc["records"]]
    with open(path, newline="") as fh:
        return [_parse_row(r) for r in csv.DictReader(fh)]
