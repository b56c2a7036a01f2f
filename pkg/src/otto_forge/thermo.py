"""Gibbs states, partition functions, reduced states, entropies, concurrence.

Populations are always computed through a max-shifted softmax, so inverse
temperatures up to |beta * E| ~ 700 stay finite.  beta = 0 is rejected
everywhere; the infinite-temperature state is requested explicitly through
``uniform_populations`` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import (
    Family,
    Spectrum,
    SpinModel,
    analytic_spectrum,
    eigenbasis,
)

_PSD_TOL = 1e-10


def gibbs_populations(spectrum: Spectrum, beta: float) -> np.ndarray:
    """Per-state occupation p_i = exp(-beta E_i)/Z for each labeled level.

    The returned vector is aligned with ``spectrum.levels``; a degenerate
    level's total weight is ``p_i * multiplicity``.  Negative beta (population
    inversion against a negative-temperature bath) is allowed, beta = 0 is
    not.
    """
    if beta == 0.0 or not math.isfinite(beta):
        raise ValueError("beta must be finite and nonzero; use uniform_populations "
                         "for the infinite-temperature state")
    energies = spectrum.energies()
    if not np.all(np.isfinite(energies)):
        raise ValueError("spectrum energies must be finite")
    x = -beta * energies
    x -= x.max()
    weights = np.exp(x)
    return weights / float(spectrum.multiplicities() @ weights)


def uniform_populations(spectrum: Spectrum) -> np.ndarray:
    """Infinite-temperature occupations, 1/dim per state."""
    return np.full(len(spectrum.levels), 1.0 / spectrum.dim)


def partition_function_direct(spectrum: Spectrum, beta: float) -> float:
    """Z as the direct degeneracy-weighted sum over levels (oracle path)."""
    if beta == 0.0:
        raise ValueError("beta must be nonzero")
    return float(spectrum.multiplicities() @ np.exp(-beta * spectrum.energies()))


def partition_function_closed(model: SpinModel, h: float, beta: float) -> float:
    """Closed-form partition function of the supported families.

    Matches ``partition_function_direct`` over the analytic spectrum; the
    closed forms overflow in the same regime the direct sum does.
    """
    if beta == 0.0:
        raise ValueError("beta must be nonzero")
    j = model.j
    if model.family is Family.ISING_KSEA:
        root = math.hypot(h, model.gz)
        return 2.0 * (math.exp(beta * model.jz)
                      + math.exp(-beta * model.jz) * math.cosh(2.0 * beta * root))
    if model.family is Family.HEISENBERG_XXX:
        if model.n_sites == 2:
            # levels {2h+2J, 2J, -2h+2J, -6J}
            return (math.exp(-2.0 * beta * j) * (1.0 + 2.0 * math.cosh(2.0 * beta * h))
                    + math.exp(6.0 * beta * j))
        return (2.0 * math.exp(-3.0 * beta * j)
                * (math.cosh(3.0 * beta * h) + math.cosh(beta * h))
                + 4.0 * math.exp(3.0 * beta * j) * math.cosh(beta * h))
    n = model.n_sites
    if n == 2:
        return 2.0 * math.cosh(2.0 * beta * h) + 2.0 * math.exp(2.0 * beta * j)
    if n == 3:
        return (2.0 * math.exp(-3.0 * beta * j) * math.cosh(3.0 * beta * h)
                + 6.0 * math.exp(beta * j) * math.cosh(beta * h))
    if n == 4:
        return (2.0 * (math.exp(4.0 * beta * j)
                       + math.exp(-4.0 * beta * j) * math.cosh(4.0 * beta * h))
                + 4.0 * (1.0 + 2.0 * math.cosh(2.0 * beta * h)))
    if n == 5:
        return (2.0 * math.exp(-5.0 * beta * j) * math.cosh(5.0 * beta * h)
                + 10.0 * math.exp(-beta * j)
                * (math.cosh(beta * h) + math.cosh(3.0 * beta * h))
                + 10.0 * math.exp(3.0 * beta * j) * math.cosh(beta * h))
    if n == 6:
        return (2.0 * (math.exp(-6.0 * beta * j) * math.cosh(6.0 * beta * h)
                       + math.exp(6.0 * beta * j))
                + 12.0 * math.exp(-2.0 * beta * j)
                * (math.cosh(4.0 * beta * h) + math.cosh(2.0 * beta * h))
                + math.exp(2.0 * beta * j) * (18.0 * math.cosh(2.0 * beta * h) + 6.0)
                + 12.0 * math.cosh(2.0 * beta * j))
    raise ValueError(f"no closed-form partition function for n_sites={n}")


@dataclass(frozen=True)
class ThermalState:
    """Gibbs state of a model at one field value and inverse temperature."""

    model: SpinModel
    beta: float
    spectrum: Spectrum
    populations: np.ndarray
    rho: np.ndarray

    def population_vector(self) -> np.ndarray:
        """Per-state probabilities expanded over degenerate levels."""
        return self.spectrum.expand(self.populations)


@dataclass(frozen=True)
class ReducedState:
    """Single-site reduced density matrix in the local basis (|1>, |0>)."""

    site: int
    matrix: np.ndarray

    def population_up(self) -> float:
        return float(self.matrix[0, 0].real)

    def population_down(self) -> float:
        return float(self.matrix[1, 1].real)


def thermal_density_matrix(model: SpinModel, h: float, beta: float) -> ThermalState:
    """Gibbs state rho = sum_i p_i P_i built on the labeled eigenbasis.

    For the Ising family every projector is a computational-basis one, so the
    off-diagonal part of rho is exactly zero.  For the KSEA pair the matrix is
    X-shaped with corner coherences proportional to gz.
    """
    spectrum = analytic_spectrum(model, h)
    populations = gibbs_populations(spectrum, beta)
    basis = eigenbasis(model, h)
    rho = np.zeros((model.dim, model.dim), dtype=complex)
    for p, block in zip(populations, basis.blocks):
        rho += p * (block @ block.conj().T)
    return ThermalState(model=model, beta=beta, spectrum=spectrum,
                        populations=populations, rho=rho)


def infinite_temperature_state(model: SpinModel, h: float) -> ThermalState:
    """Maximally mixed state, kept separate from any finite-beta request."""
    spectrum = analytic_spectrum(model, h)
    populations = uniform_populations(spectrum)
    rho = np.eye(model.dim, dtype=complex) / model.dim
    return ThermalState(model=model, beta=math.inf, spectrum=spectrum,
                        populations=populations, rho=rho)


def partial_trace(rho: np.ndarray, keep, n_sites: int) -> np.ndarray:
    """Trace out every site not listed in ``keep`` (qubit sites, kron order)."""
    keep = sorted(keep)
    if any(s < 0 or s >= n_sites for s in keep):
        raise ValueError("site index out of range")
    dims = (2,) * n_sites
    tensor = np.asarray(rho).reshape(dims + dims)
    n_current = n_sites
    for site in sorted((s for s in range(n_sites) if s not in keep), reverse=True):
        tensor = np.trace(tensor, axis1=site, axis2=site + n_current)
        n_current -= 1
    dim_keep = 2 ** len(keep)
    return tensor.reshape(dim_keep, dim_keep)


def reduced_state(state: ThermalState, site: int) -> ReducedState:
    """Reduced density matrix of one site of a thermal state."""
    if site < 0 or site >= state.model.n_sites:
        raise ValueError(f"site {site} out of range for n_sites={state.model.n_sites}")
    return ReducedState(site=site,
                        matrix=partial_trace(state.rho, (site,), state.model.n_sites))


def reduced_pair(state: ThermalState, site_a: int, site_b: int) -> np.ndarray:
    """Two-site reduced density matrix (kron order of the kept sites)."""
    if site_a == site_b:
        raise ValueError("need two distinct sites")
    return partial_trace(state.rho, (site_a, site_b), state.model.n_sites)


def shannon_entropy(p: np.ndarray) -> float:
    """Shannon entropy in nats; zero-probability entries contribute nothing."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0.0]
    return float(-(nz @ np.log(nz)))


def von_neumann_entropy(rho: np.ndarray, clip_tol: float = 1e-14) -> float:
    """Spectral entropy -Tr(rho ln rho) in nats."""
    eigenvalues = np.linalg.eigvalsh(np.asarray(rho))
    eigenvalues = eigenvalues[eigenvalues > clip_tol]
    return float(-(eigenvalues @ np.log(eigenvalues)))


def relative_entropy(p: np.ndarray, q: np.ndarray) -> float:
    """Kullback-Leibler divergence H[p|q] in nats, nonnegative by Gibbs.

    Entries with p_i = 0 contribute zero; p_i > 0 with q_i = 0 leaves the
    divergence undefined and raises.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError("p and q must have the same length")
    support = p > 0.0
    if np.any(q[support] <= 0.0):
        raise ValueError("support of p is not contained in support of q")
    ps = p[support]
    return float(ps @ (np.log(ps) - np.log(q[support])))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix, in [0, 1].

    Exactly zero for any diagonal (classically mixed) state.  Non-PSD or
    non-Hermitian input is rejected.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("concurrence is defined for 4x4 density matrices")
    if np.abs(rho - rho.conj().T).max() > 1e-10:
        raise ValueError("density matrix must be Hermitian")
    if np.linalg.eigvalsh(rho).min() < -_PSD_TOL:
        raise ValueError("density matrix must be positive semidefinite")
    yy = np.kron(np.array([[0.0, -1.0j], [1.0j, 0.0]]),
                 np.array([[0.0, -1.0j], [1.0j, 0.0]])).real
    flipped = yy @ rho.conj() @ yy
    lam = np.sqrt(np.maximum(np.linalg.eigvals(rho @ flipped).real, 0.0))
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
