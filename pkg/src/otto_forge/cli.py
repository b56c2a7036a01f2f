"""Command-line interface: single runs, sweeps, figure presets, selftest."""

from __future__ import annotations

import argparse
import sys

from .cycle import evaluate_cycle, idle_decomposition, local_ledger, make_cycle
from .figures import FIGURE_IDS, reproduce_figure
from .selftest import run_selftest
from .sweep import (
    ConfigError,
    SweepConfig,
    config_from_mapping,
    load_config,
    run_sweep,
    single_row,
    write_csv,
)


def _add_model_arguments(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--model", choices=("ising", "ising-ksea", "heisenberg"),
                        required=required)
    parser.add_argument("--n", type=int, default=2, help="number of sites")
    parser.add_argument("--j", type=float, default=0.0, help="exchange coupling J")
    parser.add_argument("--jz", type=float, default=0.0, help="z-z coupling (ising-ksea)")
    parser.add_argument("--gz", type=float, default=0.0, help="cross coupling (ising-ksea)")
    parser.add_argument("--h-hot", type=float, default=None)
    parser.add_argument("--h-cold", type=float, default=None)
    parser.add_argument("--t-hot", type=float, default=None)
    parser.add_argument("--t-cold", type=float, default=None)
    parser.add_argument("--convention", choices=("case1", "case2", "case3", "case4"),
                        default="case4", help="local accounting convention")
    parser.add_argument("--allow-negative-temp", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otto-forge",
        description="Exact quantum Otto cycles for small coupled spin chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="evaluate a single cycle and print a report")
    _add_model_arguments(run_p, required=True)
    run_p.add_argument("--out", help="also append the cycle as one CSV row")

    sweep_p = sub.add_parser("sweep", help="run a one-parameter sweep to CSV")
    _add_model_arguments(sweep_p, required=False)
    sweep_p.add_argument("--config", help="JSON config file (flags override it)")
    sweep_p.add_argument("--sweep", help="parameter to sweep "
                         "(J, Jz, Gz, h_hot, h_cold, T_hot, T_cold)")
    sweep_p.add_argument("--from", dest="start", type=float)
    sweep_p.add_argument("--to", dest="stop", type=float)
    sweep_p.add_argument("--steps", type=int)
    sweep_p.add_argument("--out", help="output CSV path")
    sweep_p.add_argument("--parallel", action="store_true",
                         help="evaluate grid points concurrently "
                              "(OTTO_FORGE_THREADS caps the worker count)")

    fig_p = sub.add_parser("figure", help="write the preset sweeps behind a figure")
    fig_p.add_argument("fig_id", choices=FIGURE_IDS, metavar="FIG",
                       help=f"one of {', '.join(FIGURE_IDS)}")
    fig_p.add_argument("--out-dir", default=".")

    self_p = sub.add_parser("selftest", help="run the random-draw invariant suite")
    self_p.add_argument("--draws", type=int, default=200)
    self_p.add_argument("--seed", type=int, default=2024)

    return parser


_REQUIRED_CYCLE_FLAGS = ("h_hot", "h_cold", "t_hot", "t_cold")


def _cycle_arguments(args: argparse.Namespace) -> dict:
    missing = [name for name in _REQUIRED_CYCLE_FLAGS if getattr(args, name) is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise ConfigError(f"missing required flags: {flags}")
    return {name: getattr(args, name) for name in _REQUIRED_CYCLE_FLAGS}


def _run_single(args: argparse.Namespace) -> int:
    from .sweep import _build_model  # same construction the sweeps use

    baths = _cycle_arguments(args)
    config = SweepConfig(model=args.model, n=args.n, j=args.j, jz=args.jz, gz=args.gz,
                         convention=args.convention,
                         allow_negative_temp=args.allow_negative_temp, **baths)
    model = _build_model(config)
    cycle = make_cycle(model, config.h_hot, config.h_cold, config.t_hot, config.t_cold,
                       allow_negative_temperature=config.allow_negative_temp)
    report = evaluate_cycle(cycle)
    split = idle_decomposition(cycle)
    ledger = local_ledger(cycle, config.convention)

    def show(key, value):
        if value is None:
            value = ""
        elif isinstance(value, float):
            value = repr(value)
        print(f"{key}={value}")

    show("model", config.model)
    show("n", model.n_sites)
    if config.model == "ising-ksea":
        show("Jz", config.jz)
        show("Gz", config.gz)
    else:
        show("J", config.j)
    for key in ("h_hot", "h_cold", "t_hot", "t_cold"):
        show(key, getattr(config, key))
    show("mode", report.mode)
    show("Qh", report.qh)
    show("Qc", report.qc)
    show("W", report.w)
    show("eta", report.eta)
    show("cop", report.cop)
    show("eta_otto", 1.0 - config.h_cold / config.h_hot)
    show("cop_otto", config.h_cold / (config.h_hot - config.h_cold))
    if config.t_hot > config.t_cold > 0:
        show("eta_carnot", 1.0 - config.t_cold / config.t_hot)
        show("cop_carnot", config.t_cold / (config.t_hot - config.t_cold))
    show("eta_gamma", report.eta_gamma)
    show("q_idle", split.q_idle)
    show("q_work_hot", split.q_work_hot)
    show("q_work_cold", split.q_work_cold)
    show("W1", report.w1)
    show("W2", report.w2)
    show("convention", ledger.convention)
    show("w_local_total", ledger.work_total)
    show("gap", ledger.gap)

    if args.out:
        write_csv([single_row(config)], args.out)
        print(f"csv={args.out}")
    return 0


def _run_sweep_command(args: argparse.Namespace) -> int:
    overrides = {}
    for key in ("model", "n", "j", "jz", "gz", "h_hot", "h_cold", "t_hot", "t_cold",
                "sweep", "start", "stop", "steps", "out", "convention"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if args.allow_negative_temp:
        overrides["allow_negative_temp"] = True
    if args.parallel:
        overrides["parallel"] = True

    if args.config:
        config = load_config(args.config, overrides)
    else:
        config = config_from_mapping(overrides)
    if not config.out:
        raise ConfigError("no output path: pass --out or set it in the config")
    rows = run_sweep(config)
    write_csv(rows, config.out)
    print(f"wrote {len(rows)} rows to {config.out}")
    return 0


def _run_figure(args: argparse.Namespace) -> int:
    paths = reproduce_figure(args.fig_id, args.out_dir)
    for path in paths:
        print(path)
    return 0


def _run_selftest(args: argparse.Namespace) -> int:
    ok = run_selftest(draws=args.draws, seed=args.seed)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _run_single(args)
        if args.command == "sweep":
            return _run_sweep_command(args)
        if args.command == "figure":
            return _run_figure(args)
        return _run_selftest(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
