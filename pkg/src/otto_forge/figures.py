"""Preset sweeps that regenerate the reference curves as CSV files.

Two bath settings are used throughout: the engine point
(T_hot, T_cold, h_hot, h_cold) = (4, 1, 4, 3) and the refrigerator point
(2, 1, 5, 2).  Each preset writes one CSV per plotted series, named after
the figure id and the series; the columns of a standard sweep CSV are enough
to replot any of them with a generic plotting tool.
"""

from __future__ import annotations

import os
from dataclasses import replace

import numpy as np

from .cycle import jz_star
from .sweep import SweepConfig, run_sweep, write_csv

ENGINE = {"h_hot": 4.0, "h_cold": 3.0, "t_hot": 4.0, "t_cold": 1.0}
FRIDGE = {"h_hot": 5.0, "h_cold": 2.0, "t_hot": 2.0, "t_cold": 1.0}

FIGURE_IDS = ("1a", "1b", "2", "3", "4a", "4b", "5", "6a", "6b", "7a", "7b", "8", "9")

_KSEA_JZ_SERIES = (0.0, 0.5, 2.6)


def _tag(value: float) -> str:
    return repr(float(value)).replace(".", "p").replace("-", "m")


def _ksea_gz_sweep(jz: float, baths: dict, steps: int = 500) -> SweepConfig:
    return SweepConfig(model="ising-ksea", n=2, jz=jz, gz=0.0,
                       sweep="Gz", start=0.0, stop=5.0, steps=steps, **baths)


def _chain_sweep(model: str, n: int, start: float, stop: float, steps: int,
                 baths: dict) -> SweepConfig:
    return SweepConfig(model=model, n=n, j=0.0,
                       sweep="J", start=start, stop=stop, steps=steps, **baths)


def _figure_series(fig_id: str) -> list[tuple[str, SweepConfig]]:
    if fig_id in ("1a", "1b", "3"):
        return [(f"fig{fig_id}_jz{_tag(jz)}.csv", _ksea_gz_sweep(jz, ENGINE))
                for jz in _KSEA_JZ_SERIES]
    if fig_id in ("4a", "4b"):
        return [(f"fig{fig_id}_n{n}.csv", _chain_sweep("heisenberg", n, 0.0, 10.0, 1000, ENGINE))
                for n in (2, 3)]
    if fig_id == "5":
        return [(f"fig5_n{n}.csv", _chain_sweep("heisenberg", n, -3.0, 3.0, 601, FRIDGE))
                for n in (2, 3)]
    if fig_id in ("6a", "6b"):
        return [(f"fig{fig_id}_n{n}.csv", _chain_sweep("ising", n, 0.0, 2.0, 500, ENGINE))
                for n in range(2, 7)]
    if fig_id in ("7a", "7b", "8"):
        return [(f"fig{fig_id}_n{n}.csv", _chain_sweep("ising", n, 0.0, 10.0, 1000, ENGINE))
                for n in range(2, 7)]
    if fig_id == "9":
        return [(f"fig9_n{n}.csv", _chain_sweep("ising", n, -3.0, 1.0, 401, FRIDGE))
                for n in range(2, 7)]
    raise ValueError(f"unknown figure id {fig_id!r}; known: {FIGURE_IDS}")


def _write_idle_heat_grid(out_dir: str) -> list[str]:
    """Idle-heat surface over (Jz, Gz) plus the zero-crossing curve."""
    jz_grid = np.linspace(0.0, 5.0, 101)
    gz_grid = np.linspace(0.0, 5.0, 101)
    grid_path = os.path.join(out_dir, "fig2_grid.csv")
    lines = ["Jz,Gz,q_idle"]
    for jz in jz_grid:
        config = _ksea_gz_sweep(float(jz), ENGINE, steps=101)
        config = replace(config, outputs=("cycle", "idle"))
        for row in run_sweep(config):
            lines.append(f"{row.jz!r},{row.value!r},{row.report.q_idle_hot!r}")
    with open(grid_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    star_path = os.path.join(out_dir, "fig2_jzstar.csv")
    star_lines = ["Gz,Jz_star"]
    for gz in np.linspace(0.0, 5.0, 501):
        root = jz_star(float(gz), **ENGINE)
        star_lines.append(f"{float(gz)!r},{'' if root is None else repr(root)}")
    with open(star_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(star_lines) + "\n")
    return [grid_path, star_path]


def reproduce_figure(fig_id: str, out_dir: str = ".") -> list[str]:
    """Write the CSV series behind one reference figure; returns the paths."""
    fig_id = str(fig_id).lower()
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {fig_id!r}; known: {FIGURE_IDS}")
    os.makedirs(out_dir, exist_ok=True)
    if fig_id == "2":
        return _write_idle_heat_grid(out_dir)
    paths = []
    for filename, config in _figure_series(fig_id):
        path = os.path.join(out_dir, filename)
        write_csv(run_sweep(config), path)
        paths.append(path)
    return paths
