"""Four-stroke Otto cycle between (h_hot, T_hot) and (h_cold, T_cold).

The two isochores thermalize the working substance at fixed field; the two
field strokes are slow enough that populations follow level labels (quantum
adiabatic theorem).  All bookkeeping therefore pairs the hot-side population
of label i with the energy of the same label at both fields, never with the
energy-sorted order, which would silently permute populations at level
crossings.

Sign conventions

* Q_h = sum_i E_i(h_hot) (p_i - p'_i) is heat absorbed from the hot bath,
  Q_c = sum_i E_i(h_cold) (p'_i - p_i) heat absorbed from the cold bath, and
  W = Q_h + Q_c is positive when the machine outputs work.
* Stage works W1 (field h_hot -> h_cold, hot populations) and
  W2 (h_cold -> h_hot, cold populations) satisfy W = -(W1 + W2); -W1 is the
  energy handed to the drive during the first stroke.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .models import (
    SIGMA_Z,
    Family,
    Spectrum,
    SpinModel,
    analytic_spectrum,
    build_hamiltonian,
    embed_site_operator,
    linear_level_coefficients,
)
from .thermo import (
    ThermalState,
    gibbs_populations,
    partial_trace,
    relative_entropy,
    shannon_entropy,
    thermal_density_matrix,
)

ZERO_TOL = 1e-12

MODE_ENGINE = "Engine"
MODE_REFRIGERATOR = "Refrigerator"
MODE_HEATER = "Heater"
MODE_ACCELERATOR = "Accelerator"
MODE_IDLE = "Idle cycle"

LEDGER_CONVENTIONS = ("case1", "case2", "case3", "case4")


@dataclass(frozen=True)
class CyclePoint:
    """One bath contact: field, temperature, spectrum and Gibbs populations."""

    h: float
    temperature: float
    spectrum: Spectrum
    populations: np.ndarray

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature


@dataclass(frozen=True)
class Cycle:
    """A prepared Otto cycle; immutable, safe to share across workers."""

    model: SpinModel
    hot: CyclePoint
    cold: CyclePoint
    allow_negative_temperature: bool = False

    def hot_state(self) -> ThermalState:
        return thermal_density_matrix(self.model, self.hot.h, self.hot.beta)

    def cold_state(self) -> ThermalState:
        return thermal_density_matrix(self.model, self.cold.h, self.cold.beta)


@dataclass(frozen=True)
class CycleReport:
    """Global cycle quantities plus the idle/working heat decomposition.

    ``eta`` is present only when the mode is Engine and ``cop`` only when it
    is Refrigerator; with a negative-temperature bath the mode itself is
    undefined and reported as None.
    """

    qh: float
    qc: float
    w: float
    eta: Optional[float]
    cop: Optional[float]
    mode: Optional[str]
    q_idle_hot: float
    q_work_hot: float
    q_work_cold: float
    w1: float
    w2: float
    eta_gamma: float


@dataclass(frozen=True)
class IdleDecomposition:
    q_idle: float
    q_work_hot: float
    q_work_cold: float


@dataclass(frozen=True)
class StageWorks:
    """Global stage works and their per-site local counterparts."""

    w1: float
    w2: float
    site_w1: tuple[float, ...]
    site_w2: tuple[float, ...]


@dataclass(frozen=True)
class LocalLedger:
    """Per-site works, heats and effective temperatures for one convention.

    ``gap`` is the global work minus the ledger's total work; a nonzero gap
    means the extensive property is broken under that accounting.
    Conventions: case1 = global state with the global Hamiltonian (the global
    quantities themselves), case2 = single-site reduced states paired with
    the global Hamiltonian, case3 = global state with the bare local field
    Hamiltonians, case4 = reduced states with the local field Hamiltonians.
    """

    convention: str
    site_works: Optional[tuple[float, ...]]
    site_heats_hot: Optional[tuple[float, ...]]
    site_heats_cold: Optional[tuple[float, ...]]
    work_total: float
    heat_hot_total: float
    heat_cold_total: float
    gap: float
    t_eff_hot: tuple[float, ...]
    t_eff_cold: tuple[float, ...]


@dataclass(frozen=True)
class LinearIdentities:
    """Aggregates of E_i = a_i h + b_i J and the identity residuals."""

    a: float
    b: float
    level_coefficients: tuple[tuple[int, int, int], ...]
    qh_residual: float
    qc_residual: float
    w_residual: float
    eta_residual: Optional[float]
    cop_residual: Optional[float]


@dataclass(frozen=True)
class CopReport:
    cop: float
    cop_otto: float
    cop_carnot: float
    enhancement: bool


@dataclass(frozen=True)
class IdleAdmissibility:
    """Admissibility window for the centered idle heat in engine mode.

    Efficiency beats the bare two-level reference only while the idle heat
    sits strictly inside (lower, upper); this is diagnostic output, nothing
    enforces it.
    """

    lower: float
    upper: float
    q_idle_centered: float
    within: bool
    eta_otto: float
    eta_gamma: float
    eta_carnot: float


def make_cycle(model: SpinModel, h_hot: float, h_cold: float,
               t_hot: float, t_cold: float, *,
               allow_negative_temperature: bool = False) -> Cycle:
    """Thermalize the model at both cycle corners and pair the levels.

    Requires h_hot > h_cold > 0.  Standard runs also require
    T_hot > T_cold > 0; any nonzero temperatures (including negative ones)
    are accepted behind ``allow_negative_temperature``, in which case mode
    classification is suppressed.
    """
    for name, val in (("h_hot", h_hot), ("h_cold", h_cold),
                      ("t_hot", t_hot), ("t_cold", t_cold)):
        if not math.isfinite(val):
            raise ValueError(f"{name} must be finite")
    if not h_hot > h_cold > 0.0:
        raise ValueError("need h_hot > h_cold > 0")
    if t_hot == 0.0 or t_cold == 0.0:
        raise ValueError("temperatures must be nonzero")
    if not allow_negative_temperature and not (t_hot > t_cold > 0.0):
        raise ValueError("need T_hot > T_cold > 0 "
                         "(pass allow_negative_temperature for other baths)")
    spec_hot = analytic_spectrum(model, h_hot)
    spec_cold = analytic_spectrum(model, h_cold)
    hot = CyclePoint(h_hot, t_hot, spec_hot, gibbs_populations(spec_hot, 1.0 / t_hot))
    cold = CyclePoint(h_cold, t_cold, spec_cold, gibbs_populations(spec_cold, 1.0 / t_cold))
    return Cycle(model=model, hot=hot, cold=cold,
                 allow_negative_temperature=allow_negative_temperature)


def classify_mode(qh: float, qc: float, w: float, tol: float = ZERO_TOL) -> str:
    """Operating mode from the signs of (Q_h, Q_c, W).

    Quantities inside the dead band |x| <= tol count as zero and land on the
    boundary label.  Engine and Refrigerator follow the strict three-sign
    definitions; both heats negative is a Heater, everything else that has no
    zero entry assists heat flow and is labeled Accelerator.
    """
    def signum(x: float) -> int:
        return 0 if abs(x) <= tol else (1 if x > 0 else -1)

    sh, sc, sw = signum(qh), signum(qc), signum(w)
    if (sh, sc, sw) == (1, -1, 1):
        return MODE_ENGINE
    if (sh, sc, sw) == (-1, 1, -1):
        return MODE_REFRIGERATOR
    if sh == -1 and sc == -1:
        return MODE_HEATER
    if 0 in (sh, sc, sw):
        return MODE_IDLE
    return MODE_ACCELERATOR


def eta_gamma(model: SpinModel, h_hot: float, h_cold: float) -> float:
    """Bare working-pair efficiency 1 - gap_cold/gap_hot of the model.

    For the KSEA pair the working gap is 2*sqrt(h^2 + gz^2); the field-linear
    chains reduce to the uncoupled Otto value 1 - h_cold/h_hot.
    """
    if model.family is Family.ISING_KSEA:
        return 1.0 - math.hypot(h_cold, model.gz) / math.hypot(h_hot, model.gz)
    return 1.0 - h_cold / h_hot


def _deltas(cycle: Cycle) -> np.ndarray:
    mult = cycle.hot.spectrum.multiplicities()
    return (cycle.hot.populations - cycle.cold.populations) * mult


def idle_decomposition(cycle: Cycle, energy_shift: float = 0.0) -> IdleDecomposition:
    """Split the heats into idle-level and working-level contributions.

    ``energy_shift`` is added uniformly to every level at both fields; it
    leaves Q_h, Q_c and W unchanged but moves heat between the idle and
    working books.  The default uses the levels exactly as labeled.
    """
    delta = _deltas(cycle)
    idle = cycle.hot.spectrum.idle_mask()
    e_hot = cycle.hot.spectrum.energies() + energy_shift
    e_cold = cycle.cold.spectrum.energies() + energy_shift
    q_idle = float(e_hot[idle] @ delta[idle])
    q_work_hot = float(e_hot[~idle] @ delta[~idle])
    q_work_cold = float(e_cold[~idle] @ delta[~idle])
    return IdleDecomposition(q_idle, q_work_hot, q_work_cold)


def working_symmetric_shift(model: SpinModel) -> float:
    """Uniform level shift that centers the field-coupled pair about zero.

    With this shift the KSEA working energies are exactly -2R and +2R, which
    is the split under which eta factorizes as eta_gamma / (1 + q_I/q_Wh).
    The field-linear chains are already centered and return 0.
    """
    return -model.jz if model.family is Family.ISING_KSEA else 0.0


def evaluate_cycle(cycle: Cycle) -> CycleReport:
    """All global cycle quantities of a prepared cycle.

    Q_h and Q_c are assembled from the idle/working split so that
    Q_h = q_I + q_Wh and Q_c = -q_I - q_Wc hold by construction, and
    W = Q_h + Q_c makes the first law exact.
    """
    delta = _deltas(cycle)
    idle = cycle.hot.spectrum.idle_mask()
    e_hot = cycle.hot.spectrum.energies()
    e_cold = cycle.cold.spectrum.energies()

    q_idle = float(e_hot[idle] @ delta[idle])
    q_work_hot = float(e_hot[~idle] @ delta[~idle])
    # idle energies are field independent, so the cold-side idle sum is the same
    q_work_cold = float(e_cold[~idle] @ delta[~idle])
    qh = q_idle + q_work_hot
    qc = -(q_idle + q_work_cold)
    w = qh + qc

    mult = cycle.hot.spectrum.multiplicities()
    w1 = float((mult * cycle.hot.populations) @ (e_cold - e_hot))
    w2 = float((mult * cycle.cold.populations) @ (e_hot - e_cold))

    suppressed = cycle.hot.temperature < 0.0 or cycle.cold.temperature < 0.0
    mode = None if suppressed else classify_mode(qh, qc, w)
    eta = w / qh if mode == MODE_ENGINE else None
    cop = qc / abs(w) if mode == MODE_REFRIGERATOR else None
    return CycleReport(
        qh=qh, qc=qc, w=w, eta=eta, cop=cop, mode=mode,
        q_idle_hot=q_idle, q_work_hot=q_work_hot, q_work_cold=q_work_cold,
        w1=w1, w2=w2,
        eta_gamma=eta_gamma(cycle.model, cycle.hot.h, cycle.cold.h),
    )


def run_cycle(model: SpinModel, h_hot: float, h_cold: float,
              t_hot: float, t_cold: float, *,
              allow_negative_temperature: bool = False) -> CycleReport:
    """Prepare and evaluate one Otto cycle."""
    return evaluate_cycle(make_cycle(model, h_hot, h_cold, t_hot, t_cold,
                                     allow_negative_temperature=allow_negative_temperature))


def _log_cosh(x: float) -> float:
    # overflow-safe ln(cosh(x))
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)


def jz_star_closed_form(gz: float, h_hot: float, h_cold: float,
                        t_hot: float, t_cold: float) -> float:
    """Zero crossing of the idle heat as a function of jz, in closed form.

    The idle heat vanishes when the idle-level populations match on both
    sides, which gives
    jz* = ln[cosh(2 beta_c R_c) / cosh(2 beta_h R_h)] / (2 (beta_c - beta_h)).
    """
    beta_h, beta_c = 1.0 / t_hot, 1.0 / t_cold
    if beta_c == beta_h:
        raise ValueError("equal bath temperatures have no threshold")
    r_hot = math.hypot(h_hot, gz)
    r_cold = math.hypot(h_cold, gz)
    return (_log_cosh(2.0 * beta_c * r_cold) - _log_cosh(2.0 * beta_h * r_hot)) \
        / (2.0 * (beta_c - beta_h))


def _ksea_idle_heat(jz: float, gz: float, h_hot: float, h_cold: float,
                    beta_h: float, beta_c: float) -> float:
    # q_I = -2 jz (p2 - p2') with p2 the per-state idle occupation
    def idle_occupation(beta: float, h: float) -> float:
        r = math.hypot(h, gz)
        x = beta * jz
        return 1.0 / (2.0 * (1.0 + math.exp(-2.0 * x) * math.cosh(2.0 * beta * r)))
    return -2.0 * jz * (idle_occupation(beta_h, h_hot) - idle_occupation(beta_c, h_cold))


def jz_star(gz: float, h_hot: float, h_cold: float, t_hot: float, t_cold: float,
            *, bracket: tuple[float, float] = (0.0, 50.0),
            scan_step: float = 1e-2, tol: float = 1e-9) -> Optional[float]:
    """Bisection root of the idle heat q_I(jz) for the KSEA pair.

    Scans ``bracket`` on a ``scan_step`` grid for a sign change (skipping the
    trivial zero at jz = 0), then bisects to |delta jz| <= tol.  Returns None
    when no sign change exists in the bracket.
    """
    beta_h, beta_c = 1.0 / t_hot, 1.0 / t_cold

    def f(jz: float) -> float:
        return _ksea_idle_heat(jz, gz, h_hot, h_cold, beta_h, beta_c)

    lo, hi = bracket
    x = max(lo, scan_step)
    left, f_left = x, f(x)
    found = None
    while x < hi:
        x_next = min(x + scan_step, hi)
        f_next = f(x_next)
        if f_left == 0.0:
            found = (left, left)
            break
        if f_left * f_next < 0.0:
            found = (left, x_next)
            break
        left, f_left = x_next, f_next
        x = x_next
    if found is None:
        return None
    a, b = found
    if a == b:
        return a
    fa = f(a)
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def _site_magnetization_deltas(cycle: Cycle) -> tuple[np.ndarray, np.ndarray, list, list]:
    hot = cycle.hot_state()
    cold = cycle.cold_state()
    n = cycle.model.n_sites
    red_hot = [partial_trace(hot.rho, (s,), n) for s in range(n)]
    red_cold = [partial_trace(cold.rho, (s,), n) for s in range(n)]
    mag_hot = np.array([float((r[0, 0] - r[1, 1]).real) for r in red_hot])
    mag_cold = np.array([float((r[0, 0] - r[1, 1]).real) for r in red_cold])
    return mag_hot, mag_cold, red_hot, red_cold


def stage_works(cycle: Cycle) -> StageWorks:
    """Global stage works and the per-site local stage works.

    -W1 is the work fed into the drive while the field moves h_hot -> h_cold
    with hot populations frozen; -W2 the same for the return stroke with cold
    populations.  The local entries use the bare site Hamiltonian
    diag(h, -h) with the reduced states on each side.
    """
    e_hot = cycle.hot.spectrum.energies()
    e_cold = cycle.cold.spectrum.energies()
    mult = cycle.hot.spectrum.multiplicities()
    w1 = float((mult * cycle.hot.populations) @ (e_cold - e_hot))
    w2 = float((mult * cycle.cold.populations) @ (e_hot - e_cold))
    mag_hot, mag_cold, _, _ = _site_magnetization_deltas(cycle)
    dh = cycle.hot.h - cycle.cold.h
    site_w1 = tuple(float(-dh * m) for m in mag_hot)
    site_w2 = tuple(float(dh * m) for m in mag_cold)
    return StageWorks(w1=w1, w2=w2, site_w1=site_w1, site_w2=site_w2)


def local_effective_temperature(p_up: float, p_down: float, gap: float) -> float:
    """Temperature a two-level state would have at the given energy gap.

    Equal populations map to +inf (the infinite-temperature point); an
    exhausted level (probability 0) maps to 0.
    """
    if p_up <= 0.0 or p_down <= 0.0:
        return 0.0
    if abs(p_up - p_down) < 1e-15:
        return math.inf
    return gap / math.log(p_down / p_up)


def effective_temperatures(cycle: Cycle) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Per-site effective temperatures at the hot and cold contacts."""
    _, _, red_hot, red_cold = _site_magnetization_deltas(cycle)
    hot = tuple(
        local_effective_temperature(float(r[0, 0].real), float(r[1, 1].real),
                                    2.0 * cycle.hot.h)
        for r in red_hot
    )
    cold = tuple(
        local_effective_temperature(float(r[0, 0].real), float(r[1, 1].real),
                                    2.0 * cycle.cold.h)
        for r in red_cold
    )
    return hot, cold


def local_ledger(cycle: Cycle, convention: str = "case4") -> LocalLedger:
    """Work and heat books under one of the four accounting conventions."""
    if convention not in LEDGER_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; "
                         f"expected one of {LEDGER_CONVENTIONS}")
    report = evaluate_cycle(cycle)
    mag_hot, mag_cold, red_hot, red_cold = _site_magnetization_deltas(cycle)
    h, hp = cycle.hot.h, cycle.cold.h
    n = cycle.model.n_sites
    t_eff_hot = tuple(
        local_effective_temperature(float(r[0, 0].real), float(r[1, 1].real), 2.0 * h)
        for r in red_hot
    )
    t_eff_cold = tuple(
        local_effective_temperature(float(r[0, 0].real), float(r[1, 1].real), 2.0 * hp)
        for r in red_cold
    )

    if convention == "case1":
        return LocalLedger(
            convention=convention, site_works=None, site_heats_hot=None,
            site_heats_cold=None, work_total=report.w, heat_hot_total=report.qh,
            heat_cold_total=report.qc, gap=0.0,
            t_eff_hot=t_eff_hot, t_eff_cold=t_eff_cold,
        )

    if convention in ("case3", "case4"):
        if convention == "case3":
            # global states against the embedded bare field term of each site
            hot_rho = cycle.hot_state().rho
            cold_rho = cycle.cold_state().rho
            mags_h = []
            mags_c = []
            for s in range(n):
                sz = embed_site_operator(SIGMA_Z, s, n)
                mags_h.append(float(np.real(np.trace(sz @ hot_rho))))
                mags_c.append(float(np.real(np.trace(sz @ cold_rho))))
            mag_hot = np.array(mags_h)
            mag_cold = np.array(mags_c)
        diff = mag_hot - mag_cold
        site_works = tuple(float((h - hp) * d) for d in diff)
        site_heats_hot = tuple(float(h * d) for d in diff)
        site_heats_cold = tuple(float(-hp * d) for d in diff)
    else:  # case2: reduced states paired with the full Hamiltonian
        ham_hot = build_hamiltonian(cycle.model, h)
        ham_cold = build_hamiltonian(cycle.model, hp)
        site_works = []
        site_heats_hot = []
        site_heats_cold = []
        for s in range(n):
            carrier = _site_delta_embedding(red_hot[s] - red_cold[s], s, n)
            site_heats_hot.append(float(np.real(np.trace(ham_hot @ carrier))))
            site_heats_cold.append(float(-np.real(np.trace(ham_cold @ carrier))))
            site_works.append(site_heats_hot[-1] + site_heats_cold[-1])
        site_works = tuple(site_works)
        site_heats_hot = tuple(site_heats_hot)
        site_heats_cold = tuple(site_heats_cold)

    work_total = float(sum(site_works))
    return LocalLedger(
        convention=convention,
        site_works=site_works,
        site_heats_hot=site_heats_hot,
        site_heats_cold=site_heats_cold,
        work_total=work_total,
        heat_hot_total=float(sum(site_heats_hot)),
        heat_cold_total=float(sum(site_heats_cold)),
        gap=report.w - work_total,
        t_eff_hot=t_eff_hot,
        t_eff_cold=t_eff_cold,
    )


def _site_delta_embedding(delta_rho: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    # delta of one site's state, the rest maximally mixed
    out = np.array([[1.0 + 0.0j]])
    for s in range(n_sites):
        out = np.kron(out, delta_rho if s == site else np.eye(2) / 2.0)
    return out


def entropy_form_work(pop_hot: np.ndarray, pop_cold: np.ndarray,
                      t_hot: float, t_cold: float) -> float:
    """Work written through entropies of the two per-state distributions:

    (T_h - T_c)(S(p) - S(p')) - T_h H[p'|p] - T_c H[p|p'].
    """
    if t_hot <= 0.0 or t_cold <= 0.0:
        raise ValueError("entropy-form work requires positive temperatures")
    s_hot = shannon_entropy(pop_hot)
    s_cold = shannon_entropy(pop_cold)
    return ((t_hot - t_cold) * (s_hot - s_cold)
            - t_hot * relative_entropy(pop_cold, pop_hot)
            - t_cold * relative_entropy(pop_hot, pop_cold))


def work_entropy_form(cycle: Cycle) -> float:
    """Entropy-form total work; equals the population-sum W for Gibbs inputs."""
    pop_hot = cycle.hot.spectrum.expand(cycle.hot.populations)
    pop_cold = cycle.cold.spectrum.expand(cycle.cold.populations)
    return entropy_form_work(pop_hot, pop_cold,
                             cycle.hot.temperature, cycle.cold.temperature)


def local_work_entropy_form(cycle: Cycle, site: int) -> float:
    """Entropy-form expression evaluated on one site's reduced populations.

    Diagnostic only: the reduced state is generally not Gibbs at the bath
    temperature, so this need not reproduce the case4 site work.
    """
    _, _, red_hot, red_cold = _site_magnetization_deltas(cycle)
    p = np.array([red_hot[site][0, 0].real, red_hot[site][1, 1].real])
    q = np.array([red_cold[site][0, 0].real, red_cold[site][1, 1].real])
    return entropy_form_work(p, q, cycle.hot.temperature, cycle.cold.temperature)


def linear_identities(cycle: Cycle) -> LinearIdentities:
    """Aggregate (a, b) of E_i = a_i h + b_i J and the identity residuals.

    Only models whose levels are linear in h qualify; the KSEA pair with
    gz != 0 is rejected.  In engine mode the efficiency identity
    eta = eta_o / (1 + bJ/(ah)) is checked, in refrigerator mode
    COP = COP_o + bJ/(a (h - h')).
    """
    coeffs = linear_level_coefficients(cycle.model)
    delta = _deltas(cycle)
    a = float(sum(c[0] * d for c, d in zip(coeffs, delta)))
    b = float(sum(c[1] * d for c, d in zip(coeffs, delta)))
    report = evaluate_cycle(cycle)
    h, hp = cycle.hot.h, cycle.cold.h
    coupling = cycle.model.jz if cycle.model.family is Family.ISING_KSEA else cycle.model.j
    qh_residual = report.qh - (a * h + b * coupling)
    qc_residual = report.qc - (-a * hp - b * coupling)
    w_residual = report.w - a * (h - hp)
    eta_residual = None
    cop_residual = None
    if report.mode == MODE_ENGINE:
        eta_o = 1.0 - hp / h
        eta_residual = report.eta - eta_o / (1.0 + b * coupling / (a * h))
    if report.mode == MODE_REFRIGERATOR:
        cop_o = hp / (h - hp)
        cop_residual = report.cop - (cop_o + b * coupling / (a * (h - hp)))
    return LinearIdentities(
        a=a, b=b, level_coefficients=coeffs,
        qh_residual=float(qh_residual), qc_residual=float(qc_residual),
        w_residual=float(w_residual),
        eta_residual=None if eta_residual is None else float(eta_residual),
        cop_residual=None if cop_residual is None else float(cop_residual),
    )


def cop_report(cycle: Cycle) -> Optional[CopReport]:
    """COP against the Otto and Carnot references; None off refrigerator mode."""
    report = evaluate_cycle(cycle)
    if report.mode != MODE_REFRIGERATOR:
        return None
    h, hp = cycle.hot.h, cycle.cold.h
    th, tc = cycle.hot.temperature, cycle.cold.temperature
    cop_otto = hp / (h - hp)
    cop_carnot = tc / (th - tc)
    return CopReport(cop=report.cop, cop_otto=cop_otto, cop_carnot=cop_carnot,
                     enhancement=report.cop > cop_otto)


def idle_admissibility(cycle: Cycle) -> IdleAdmissibility:
    """Evaluate the engine-mode admissibility window for the idle heat.

    Uses the centered level split (working pair symmetric about zero).  The
    window (-q_Wh (eta_c - eta_g)/eta_c, -q_Wh (eta_o - eta_g)/eta_o) bounds
    the idle heat values compatible with eta_o < eta < eta_c.  KSEA only.
    """
    if cycle.model.family is not Family.ISING_KSEA:
        raise ValueError("admissibility window is defined for the KSEA pair")
    split = idle_decomposition(cycle, energy_shift=working_symmetric_shift(cycle.model))
    h, hp = cycle.hot.h, cycle.cold.h
    th, tc = cycle.hot.temperature, cycle.cold.temperature
    eta_o = 1.0 - hp / h
    eta_c = 1.0 - tc / th
    eta_g = eta_gamma(cycle.model, h, hp)
    lower = -split.q_work_hot * (eta_c - eta_g) / eta_c
    upper = -split.q_work_hot * (eta_o - eta_g) / eta_o
    return IdleAdmissibility(
        lower=lower, upper=upper, q_idle_centered=split.q_idle,
        within=lower < split.q_idle < upper,
        eta_otto=eta_o, eta_gamma=eta_g, eta_carnot=eta_c,
    )
