"""Configuration-driven parameter sweeps with deterministic CSV output.

One CSV row per grid point.  The header is fixed; quantities that do not
apply to a row (COP outside refrigerator mode, couplings the model does not
have) are emitted as empty fields, never as 0, so downstream plots cannot
silently confuse "absent" with "zero".  Numbers use the shortest decimal
representation that round-trips a 64-bit float, which makes identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .cycle import (
    MODE_ENGINE,
    MODE_REFRIGERATOR,
    CycleReport,
    evaluate_cycle,
    linear_identities,
    local_ledger,
    make_cycle,
    work_entropy_form,
)
from .models import Family, SpinModel, heisenberg_xxx, ising_chain, ising_ksea

CSV_HEADER = ("model,n,J,Jz,Gz,h_hot,h_cold,T_hot,T_cold,swept,value,"
              "Qh,Qc,W,eta,cop,mode,q_idle,q_work_hot,w_local_total,gap,"
              "eta_otto,cop_otto,cop_carnot")

SWEEPABLE_BY_FAMILY = {
    "ising": ("J", "h_hot", "h_cold", "T_hot", "T_cold"),
    "heisenberg": ("J", "h_hot", "h_cold", "T_hot", "T_cold"),
    "ising-ksea": ("Jz", "Gz", "h_hot", "h_cold", "T_hot", "T_cold"),
}

OUTPUT_KINDS = ("cycle", "idle", "ledger", "entropy", "linear")

ENV_THREADS = "OTTO_FORGE_THREADS"


class ConfigError(ValueError):
    """Invalid sweep or run configuration."""


@dataclass(frozen=True)
class SweepConfig:
    """A sweep: fixed cycle parameters plus one swept parameter and its grid."""

    model: str
    n: int
    h_hot: float
    h_cold: float
    t_hot: float
    t_cold: float
    j: float = 0.0
    jz: float = 0.0
    gz: float = 0.0
    sweep: str = ""
    start: float = 0.0
    stop: float = 0.0
    steps: int = 0
    out: Optional[str] = None
    convention: str = "case4"
    outputs: tuple[str, ...] = ("cycle", "idle", "ledger")
    allow_negative_temp: bool = False
    parallel: bool = False


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point, ready for CSV emission."""

    model: str
    n: int
    j: Optional[float]
    jz: Optional[float]
    gz: Optional[float]
    h_hot: float
    h_cold: float
    t_hot: float
    t_cold: float
    swept: str
    value: Optional[float]
    report: CycleReport
    w_local_total: Optional[float]
    gap: Optional[float]
    eta_otto: float
    cop_otto: float
    cop_carnot: Optional[float]


def config_from_mapping(data: dict) -> SweepConfig:
    """Build a config from JSON-style keys (CLI flag names, dashes allowed)."""
    normalized = {}
    for key, value in data.items():
        key = key.replace("-", "_").lower()
        if key == "from":
            key = "start"
        elif key == "to":
            key = "stop"
        normalized[key] = value
    known = {f.name for f in SweepConfig.__dataclass_fields__.values()}
    unknown = set(normalized) - known
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    if "outputs" in normalized:
        normalized["outputs"] = tuple(normalized["outputs"])
    try:
        return SweepConfig(**normalized)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str, overrides: Optional[dict] = None) -> SweepConfig:
    """Read a JSON config file; explicit overrides win over file values."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if overrides:
        data.update(overrides)
    return config_from_mapping(data)


def _build_model(config: SweepConfig) -> SpinModel:
    if config.model == "ising":
        return ising_chain(config.n, config.j)
    if config.model == "heisenberg":
        return heisenberg_xxx(config.n, config.j)
    if config.model == "ising-ksea":
        return ising_ksea(config.jz, config.gz)
    raise ConfigError(f"unknown model {config.model!r}")


def _point_parameters(config: SweepConfig, value: float) -> dict:
    params = {
        "J": config.j, "Jz": config.jz, "Gz": config.gz,
        "h_hot": config.h_hot, "h_cold": config.h_cold,
        "T_hot": config.t_hot, "T_cold": config.t_cold,
    }
    params[config.sweep] = value
    return params


def validate_config(config: SweepConfig) -> None:
    """Reject configs that cannot produce a full, well-defined sweep."""
    problems = []
    if config.model not in SWEEPABLE_BY_FAMILY:
        raise ConfigError(f"unknown model {config.model!r}")
    if config.steps < 2:
        problems.append("steps must be >= 2")
    if not config.start < config.stop:
        problems.append("need from < to")
    if config.sweep not in SWEEPABLE_BY_FAMILY[config.model]:
        problems.append(
            f"parameter {config.sweep!r} is not sweepable for model "
            f"{config.model!r} (choose from {SWEEPABLE_BY_FAMILY[config.model]})"
        )
    for kind in config.outputs:
        if kind not in OUTPUT_KINDS:
            problems.append(f"unknown output request {kind!r}")
    if problems:
        raise ConfigError("; ".join(problems))

    _build_model(config)  # validates n against the family

    # preconditions hold across the whole grid iff they hold at the endpoints
    for endpoint in (config.start, config.stop):
        params = _point_parameters(config, endpoint)
        if not params["h_hot"] > params["h_cold"] > 0.0:
            raise ConfigError("grid violates h_hot > h_cold > 0 "
                              f"at swept value {endpoint}")
        if params["T_hot"] == 0.0 or params["T_cold"] == 0.0:
            raise ConfigError("grid contains a zero temperature")
        if not config.allow_negative_temp and \
                not params["T_hot"] > params["T_cold"] > 0.0:
            raise ConfigError("grid violates T_hot > T_cold > 0 "
                              f"at swept value {endpoint} "
                              "(set allow_negative_temp for other baths)")

    if "linear" in config.outputs:
        gz_values = (config.start, config.stop) if config.sweep == "Gz" else (config.gz,)
        if config.model == "ising-ksea" and any(g != 0.0 for g in gz_values):
            raise ConfigError("linear identities are unavailable for ising-ksea "
                              "with Gz != 0")


def single_row(config: SweepConfig) -> SweepRow:
    """Evaluate the config's fixed parameters as one standalone CSV row."""
    return _evaluate(config, swept="", value=None)


def evaluate_point(config: SweepConfig, value: float) -> SweepRow:
    """Evaluate one grid point; pure function of (config, value)."""
    params = _point_parameters(config, value)
    point_config = replace(
        config, j=params["J"], jz=params["Jz"], gz=params["Gz"],
        h_hot=params["h_hot"], h_cold=params["h_cold"],
        t_hot=params["T_hot"], t_cold=params["T_cold"],
    )
    return _evaluate(point_config, swept=config.sweep, value=value,
                     outputs=config.outputs,
                     allow_negative=config.allow_negative_temp)


def _evaluate(config: SweepConfig, swept: str, value: Optional[float],
              outputs: Optional[tuple[str, ...]] = None,
              allow_negative: Optional[bool] = None) -> SweepRow:
    """Evaluate one fully-substituted parameter set (``config`` carries it)."""
    if outputs is None:
        outputs = config.outputs
    if allow_negative is None:
        allow_negative = config.allow_negative_temp
    model = _build_model(config)
    cycle = make_cycle(model, config.h_hot, config.h_cold,
                       config.t_hot, config.t_cold,
                       allow_negative_temperature=allow_negative)
    report = evaluate_cycle(cycle)
    if abs(report.qh + report.qc - report.w) > 1e-12:
        raise RuntimeError("first-law residual exceeded emission tolerance")

    w_local = gap = None
    if "ledger" in outputs:
        ledger = local_ledger(cycle, config.convention)
        w_local = ledger.work_total
        gap = ledger.gap
    if "entropy" in outputs:
        residual = abs(work_entropy_form(cycle) - report.w)
        if residual > 1e-10:
            raise RuntimeError(f"entropy-form work residual {residual:.3e}")
    if "linear" in outputs:
        ids = linear_identities(cycle)
        worst = max(abs(ids.qh_residual), abs(ids.qc_residual), abs(ids.w_residual))
        if worst > 1e-12:
            raise RuntimeError(f"linear identity residual {worst:.3e}")

    is_ksea = config.model == "ising-ksea"
    th, tc = config.t_hot, config.t_cold
    carnot = tc / (th - tc) if th > tc > 0.0 else None
    return SweepRow(
        model=config.model,
        n=model.n_sites,
        j=None if is_ksea else config.j,
        jz=config.jz if is_ksea else None,
        gz=config.gz if is_ksea else None,
        h_hot=config.h_hot,
        h_cold=config.h_cold,
        t_hot=th,
        t_cold=tc,
        swept=swept,
        value=value,
        report=report,
        w_local_total=w_local,
        gap=gap,
        eta_otto=1.0 - config.h_cold / config.h_hot,
        cop_otto=config.h_cold / (config.h_hot - config.h_cold),
        cop_carnot=carnot,
    )


def _worker_count(config: SweepConfig) -> int:
    if not config.parallel:
        return 1
    cap = os.environ.get(ENV_THREADS)
    limit = os.cpu_count() or 1
    if cap is not None:
        try:
            limit = min(limit, max(1, int(cap)))
        except ValueError:
            raise ConfigError(f"{ENV_THREADS} must be an integer, got {cap!r}")
    return limit


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate the full grid, in ascending swept order regardless of scheduling."""
    validate_config(config)
    grid = np.linspace(config.start, config.stop, config.steps)
    workers = _worker_count(config)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: evaluate_point(config, float(v)), grid))
    else:
        rows = [evaluate_point(config, float(v)) for v in grid]
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def format_row(row: SweepRow) -> str:
    r = row.report
    fields = (
        row.model, row.n, row.j, row.jz, row.gz,
        row.h_hot, row.h_cold, row.t_hot, row.t_cold,
        row.swept, row.value,
        r.qh, r.qc, r.w, r.eta, r.cop,
        r.mode if r.mode is not None else None,
        r.q_idle_hot, r.q_work_hot,
        row.w_local_total, row.gap,
        row.eta_otto, row.cop_otto, row.cop_carnot,
    )
    return ",".join(_fmt(f) for f in fields)


def write_csv(rows: Iterable[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(rows))


def render_csv(rows: Iterable[SweepRow]) -> str:
    lines = [CSV_HEADER]
    lines.extend(format_row(row) for row in rows)
    return "\n".join(lines) + "\n"


def sweep_to_csv(config: SweepConfig, path: Optional[str] = None) -> str:
    """Run the sweep and write its CSV; returns the output path."""
    target = path or config.out
    if not target:
        raise ConfigError("no output path given")
    rows = run_sweep(config)
    write_csv(rows, target)
    return target
