"""Seeded random-draw checks of the core invariants, used by `otto-forge selftest`.

Each check draws random cycle parameters for every model family and verifies
an exact structural property (first law, level-shift invariance, oracle
agreement, bound satisfaction).  The draws are deterministic for a given
seed, so failures are reproducible.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .cycle import (
    MODE_ENGINE,
    MODE_REFRIGERATOR,
    Cycle,
    CyclePoint,
    evaluate_cycle,
    local_ledger,
    make_cycle,
    work_entropy_form,
)
from .models import (
    Family,
    Level,
    Spectrum,
    analytic_spectrum,
    brute_force_spectrum,
    build_hamiltonian,
    heisenberg_xxx,
    ising_chain,
    ising_ksea,
)
from .thermo import partition_function_closed, partition_function_direct

ALL_MODEL_BUILDERS = (
    lambda rng: ising_ksea(rng.uniform(-5, 5), rng.uniform(-5, 5)),
    lambda rng: heisenberg_xxx(int(rng.integers(2, 4)), rng.uniform(-5, 5)),
    lambda rng: ising_chain(int(rng.integers(2, 7)), rng.uniform(-5, 5)),
)


def random_baths(rng, negative=False):
    h_cold = rng.uniform(0.3, 6.0)
    h_hot = h_cold + rng.uniform(0.2, 6.0)
    t_cold = rng.uniform(0.4, 4.0)
    t_hot = t_cold + rng.uniform(0.2, 6.0)
    if negative:
        t_hot, t_cold = -t_hot, -t_cold
    return h_hot, h_cold, t_hot, t_cold


def random_cycle(rng, negative=False):
    model = ALL_MODEL_BUILDERS[int(rng.integers(0, 3))](rng)
    h_hot, h_cold, t_hot, t_cold = random_baths(rng, negative)
    return make_cycle(model, h_hot, h_cold, t_hot, t_cold,
                      allow_negative_temperature=negative)


def _shifted(cycle: Cycle, offset: float) -> Cycle:
    def shift_point(point: CyclePoint) -> CyclePoint:
        levels = tuple(dataclasses.replace(lv, energy=lv.energy + offset)
                       for lv in point.spectrum.levels)
        return dataclasses.replace(point, spectrum=Spectrum(point.spectrum.field_value, levels))
    return dataclasses.replace(cycle, hot=shift_point(cycle.hot), cold=shift_point(cycle.cold))


def check_first_law(rng, draws):
    worst = 0.0
    for _ in range(draws):
        r = evaluate_cycle(random_cycle(rng))
        worst = max(worst, abs(r.qh + r.qc - r.w))
    return worst <= 1e-13, f"max |Qh+Qc-W| = {worst:.2e}"


def check_shift_invariance(rng, draws):
    worst = 0.0
    for _ in range(draws):
        cycle = random_cycle(rng)
        base = evaluate_cycle(cycle)
        shifted = evaluate_cycle(_shifted(cycle, rng.uniform(-20, 20)))
        worst = max(worst, abs(base.qh - shifted.qh), abs(base.qc - shifted.qc),
                    abs(base.w - shifted.w))
    return worst <= 1e-10, f"max level-shift drift = {worst:.2e}"


def check_gz_sign_symmetry(rng, draws):
    worst = 0.0
    for _ in range(draws):
        jz, gz = rng.uniform(-5, 5), rng.uniform(0.1, 5)
        h_hot, h_cold, t_hot, t_cold = random_baths(rng)
        plus = evaluate_cycle(make_cycle(ising_ksea(jz, gz), h_hot, h_cold, t_hot, t_cold))
        minus = evaluate_cycle(make_cycle(ising_ksea(jz, -gz), h_hot, h_cold, t_hot, t_cold))
        for name in ("qh", "qc", "w", "q_idle_hot", "q_work_hot", "q_work_cold",
                     "w1", "w2", "eta_gamma"):
            worst = max(worst, abs(getattr(plus, name) - getattr(minus, name)))
    return worst <= 1e-12, f"max Gz-sign asymmetry = {worst:.2e}"


def check_spectrum_oracle(rng, draws):
    worst = 0.0
    for _ in range(draws):
        model = ALL_MODEL_BUILDERS[int(rng.integers(0, 3))](rng)
        h = rng.uniform(0.1, 10)
        analytic = np.sort(analytic_spectrum(model, h).expand(
            analytic_spectrum(model, h).energies()))
        numeric = np.linalg.eigvalsh(build_hamiltonian(model, h))
        worst = max(worst, float(np.abs(analytic - numeric).max()))
    return worst <= 1e-9, f"max |analytic - dense solve| = {worst:.2e}"


def check_partition_function(rng, draws):
    worst = 0.0
    for _ in range(draws):
        model = ALL_MODEL_BUILDERS[int(rng.integers(0, 3))](rng)
        h = rng.uniform(0.1, 8)
        beta = rng.uniform(0.05, 2.0) * rng.choice((-1.0, 1.0))
        closed = partition_function_closed(model, h, beta)
        direct = partition_function_direct(analytic_spectrum(model, h), beta)
        worst = max(worst, abs(closed - direct) / direct)
    return worst <= 1e-12, f"max relative Z mismatch = {worst:.2e}"


def check_thermodynamic_bounds(rng, draws):
    worst_eta, worst_cop = -math.inf, -math.inf
    for _ in range(draws):
        cycle = random_cycle(rng)
        report = evaluate_cycle(cycle)
        carnot_eta = 1.0 - cycle.cold.temperature / cycle.hot.temperature
        if report.mode == MODE_ENGINE:
            worst_eta = max(worst_eta, report.eta - carnot_eta)
        if report.mode == MODE_REFRIGERATOR:
            carnot_cop = cycle.cold.temperature / (
                cycle.hot.temperature - cycle.cold.temperature)
            worst_cop = max(worst_cop, report.cop - carnot_cop)
    ok = worst_eta <= 1e-12 and worst_cop <= 1e-10
    return ok, f"max eta excess = {worst_eta:.2e}, max COP excess = {worst_cop:.2e}"


def check_extensivity(rng, draws):
    worst_linear = 0.0
    min_ksea_gap = math.inf
    for _ in range(draws):
        negative = bool(rng.integers(0, 2))
        h_hot, h_cold, t_hot, t_cold = random_baths(rng, negative)
        linear_model = ALL_MODEL_BUILDERS[1 + int(rng.integers(0, 2))](rng)
        cycle = make_cycle(linear_model, h_hot, h_cold, t_hot, t_cold,
                           allow_negative_temperature=negative)
        worst_linear = max(worst_linear, abs(local_ledger(cycle, "case4").gap))

        ksea = ising_ksea(rng.uniform(-5, 5), rng.uniform(0.5, 5))
        h_hot, h_cold, t_hot, t_cold = random_baths(rng)
        gap = local_ledger(make_cycle(ksea, h_hot, h_cold, t_hot, t_cold), "case4").gap
        min_ksea_gap = min(min_ksea_gap, gap)
    ok = worst_linear <= 1e-10 and min_ksea_gap > 0.0
    return ok, (f"max linear-chain gap = {worst_linear:.2e}, "
                f"min KSEA gap = {min_ksea_gap:.2e}")


def check_entropy_form(rng, draws):
    worst = 0.0
    for _ in range(draws):
        cycle = random_cycle(rng)
        worst = max(worst, abs(work_entropy_form(cycle) - evaluate_cycle(cycle).w))
    return worst <= 1e-10, f"max entropy-form residual = {worst:.2e}"


CHECKS = (
    ("first-law", check_first_law),
    ("level-shift-invariance", check_shift_invariance),
    ("gz-sign-symmetry", check_gz_sign_symmetry),
    ("spectrum-oracle", check_spectrum_oracle),
    ("partition-function", check_partition_function),
    ("carnot-bounds", check_thermodynamic_bounds),
    ("extensivity", check_extensivity),
    ("entropy-form-work", check_entropy_form),
)


def run_selftest(draws: int = 200, seed: int = 2024, stream=None) -> bool:
    """Run every invariant check; prints one PASS/FAIL line per check."""
    import sys

    stream = stream or sys.stdout
    all_ok = True
    for name, check in CHECKS:
        rng = np.random.default_rng(seed)
        ok, detail = check(rng, draws)
        all_ok &= ok
        stream.write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n")
    return all_ok
