"""Spin-chain working substances: Hamiltonians, closed-form spectra, eigenbases.

Three model families are supported, all with a transverse-field-free Zeeman
term ``h * sum_i sigma_z^i`` and periodic boundaries:

* ``ising-ksea``  -- two spins with a sigma_z sigma_z bond of strength Jz plus
  the symmetric spin-orbit (KSEA) cross term Gz*(sx sy + sy sx).
* ``heisenberg``  -- isotropic XXX exchange, N = 2 or 3.  For N = 2 the
  periodic bond sum is kept literally, so the exchange enters twice.
* ``ising``       -- sigma_z sigma_z chain, N = 2..6.  For N = 2 the bond is
  counted once and the zero of energy is moved by -J so the levels read
  {2h, -2J, -2J, -2h}; the constant offset drops out of every cycle quantity.

Basis convention: each site uses the ordered basis (|1>, |0>) with
sigma_z|1> = +|1>, and Kronecker products run left to right, so the two-site
basis ordering is {|11>, |10>, |01>, |00>}.

Level labels are assigned from the closed forms (adiabatic continuation), not
from energy-sorted order; a label refers to the same level at every field
value, which is what Otto-cycle population bookkeeping requires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

HERMITICITY_TOL = 1e-12


class Family(Enum):
    ISING_KSEA = "ising-ksea"
    HEISENBERG_XXX = "heisenberg"
    ISING_CHAIN = "ising"


@dataclass(frozen=True)
class SpinModel:
    """Working substance: family, site count, and coupling strengths.

    ``j`` is used by the Heisenberg and Ising families, ``jz``/``gz`` by the
    KSEA pair.  The magnetic field is not part of the model; it is supplied
    per evaluation point.
    """

    family: Family
    n_sites: int
    j: float = 0.0
    jz: float = 0.0
    gz: float = 0.0

    def __post_init__(self):
        allowed = {
            Family.ISING_KSEA: (2,),
            Family.HEISENBERG_XXX: (2, 3),
            Family.ISING_CHAIN: (2, 3, 4, 5, 6),
        }[self.family]
        if self.n_sites not in allowed:
            raise ValueError(
                f"{self.family.value} supports n_sites in {allowed}, got {self.n_sites}"
            )
        for name in ("j", "jz", "gz"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"coupling {name} must be finite")

    @property
    def dim(self) -> int:
        return 2 ** self.n_sites


def ising_ksea(jz: float, gz: float) -> SpinModel:
    """Two coupled spins with a z-z bond and KSEA cross coupling."""
    return SpinModel(Family.ISING_KSEA, 2, jz=float(jz), gz=float(gz))


def heisenberg_xxx(n_sites: int, j: float) -> SpinModel:
    """Isotropic exchange ring of 2 or 3 spins."""
    return SpinModel(Family.HEISENBERG_XXX, n_sites, j=float(j))


def ising_chain(n_sites: int, j: float) -> SpinModel:
    """Periodic sigma_z sigma_z chain of 2..6 spins."""
    return SpinModel(Family.ISING_CHAIN, n_sites, j=float(j))


@dataclass(frozen=True)
class Level:
    """One energy level: stable label, energy, degeneracy, and idle flag.

    A level is idle when its energy does not depend on the field h at all;
    idle levels exchange heat but never contribute to work.
    """

    label: int
    energy: float
    multiplicity: int
    idle: bool


@dataclass(frozen=True)
class Spectrum:
    """Labeled level list of one model at one field value."""

    field_value: float
    levels: tuple[Level, ...]

    @property
    def dim(self) -> int:
        return sum(lv.multiplicity for lv in self.levels)

    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels], dtype=float)

    def multiplicities(self) -> np.ndarray:
        return np.array([lv.multiplicity for lv in self.levels], dtype=float)

    def idle_mask(self) -> np.ndarray:
        return np.array([lv.idle for lv in self.levels], dtype=bool)

    def expand(self, per_level: np.ndarray) -> np.ndarray:
        """Repeat per-level values into a per-state vector (degeneracy aware)."""
        reps = [lv.multiplicity for lv in self.levels]
        return np.repeat(np.asarray(per_level, dtype=float), reps)


@dataclass(frozen=True)
class EigenBasis:
    """Orthonormal eigenvectors grouped per level label.

    ``blocks[k]`` is a (dim x multiplicity) array whose columns span the
    eigenspace of ``levels[k]``; degenerate levels carry an orthonormal set.
    """

    blocks: tuple[np.ndarray, ...]


def embed_site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Single-site operator tensored with identities on every other site."""
    mats = [IDENTITY_2] * n_sites
    mats[site] = op
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


_embed = embed_site_operator


def _bonds(n_sites: int) -> list[tuple[int, int]]:
    # periodic ring; for n=2 this yields the pair twice, callers that count
    # the bond once must handle n=2 themselves
    return [(i, (i + 1) % n_sites) for i in range(n_sites)]


def build_hamiltonian(model: SpinModel, h: float) -> np.ndarray:
    """Dense Hermitian Hamiltonian of ``model`` at field ``h``.

    Built from Kronecker products of Pauli matrices in the {|1>, |0>} site
    basis.  The result is exactly diagonal for the Ising family.
    """
    if not math.isfinite(h):
        raise ValueError("field h must be finite")
    n = model.n_sites
    ham = np.zeros((model.dim, model.dim), dtype=complex)
    for i in range(n):
        ham += h * _embed(SIGMA_Z, i, n)

    if model.family is Family.ISING_KSEA:
        zz = _embed(SIGMA_Z, 0, 2) @ _embed(SIGMA_Z, 1, 2)
        cross = (
            _embed(SIGMA_X, 0, 2) @ _embed(SIGMA_Y, 1, 2)
            + _embed(SIGMA_Y, 0, 2) @ _embed(SIGMA_X, 1, 2)
        )
        ham += model.jz * zz + model.gz * cross
    elif model.family is Family.HEISENBERG_XXX:
        for i, k in _bonds(n):
            for pauli in (SIGMA_X, SIGMA_Y, SIGMA_Z):
                ham += model.j * (_embed(pauli, i, n) @ _embed(pauli, k, n))
    else:
        if n == 2:
            # single bond with a -J zero-point shift; see the module docstring
            zz = _embed(SIGMA_Z, 0, 2) @ _embed(SIGMA_Z, 1, 2)
            ham += model.j * (zz - np.eye(4))
        else:
            for i, k in _bonds(n):
                ham += model.j * (_embed(SIGMA_Z, i, n) @ _embed(SIGMA_Z, k, n))
    return ham


@lru_cache(maxsize=None)
def _linear_coefficients(family: Family, n_sites: int) -> tuple[tuple[int, int, int], ...]:
    """(a, b, multiplicity) triples with E = a*h + b*J, labels in list order.

    Only the field-linear families are tabulated here; the KSEA pair with
    gz != 0 has square-root level curves and is handled separately.
    """
    if family is Family.HEISENBERG_XXX:
        if n_sites == 2:
            # triplet carries the doubled periodic bond (+2J), singlet -6J
            return ((2, 2, 1), (0, 2, 1), (-2, 2, 1), (0, -6, 1))
        return ((3, 3, 1), (1, 3, 1), (1, -3, 2), (-1, 3, 1), (-1, -3, 2), (-3, 3, 1))
    if family is Family.ISING_CHAIN:
        groups: dict[tuple[int, int], int] = {}
        for state in range(2 ** n_sites):
            bits = [1 if (state >> k) & 1 else -1 for k in range(n_sites)]
            a = sum(bits)
            if n_sites == 2:
                b = bits[0] * bits[1] - 1
            else:
                b = sum(bits[i] * bits[(i + 1) % n_sites] for i in range(n_sites))
            groups[(a, b)] = groups.get((a, b), 0) + 1
        ordered = sorted(groups.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
        return tuple((a, b, m) for (a, b), m in ordered)
    raise ValueError(f"{family.value} has no field-linear level table")


def linear_level_coefficients(model: SpinModel) -> tuple[tuple[int, int, int], ...]:
    """Per-level (a, b, multiplicity) with E = a*h + b*J, in label order.

    Raises ``ValueError`` for the KSEA model with gz != 0, whose working
    levels are not linear in h.  With gz == 0 the pair degenerates to a plain
    two-spin Ising system and the table (with J meaning Jz) is returned.
    """
    if model.family is Family.ISING_KSEA:
        if model.gz != 0.0:
            raise ValueError("KSEA levels are nonlinear in h when gz != 0")
        # levels {-Jz, -Jz, Jz - 2h, Jz + 2h} for h > 0
        return ((0, -1, 1), (0, -1, 1), (-2, 1, 1), (2, 1, 1))
    return _linear_coefficients(model.family, model.n_sites)


def _model_coupling(model: SpinModel) -> float:
    return model.jz if model.family is Family.ISING_KSEA else model.j


def analytic_spectrum(model: SpinModel, h: float) -> Spectrum:
    """Closed-form spectrum with stable labels and idle flags."""
    if not math.isfinite(h):
        raise ValueError("field h must be finite")
    if model.family is Family.ISING_KSEA and model.gz != 0.0:
        root = math.hypot(h, model.gz)
        levels = (
            Level(1, -model.jz, 1, True),
            Level(2, -model.jz, 1, True),
            Level(3, model.jz - 2.0 * root, 1, False),
            Level(4, model.jz + 2.0 * root, 1, False),
        )
        return Spectrum(field_value=h, levels=levels)
    coupling = _model_coupling(model)
    levels = tuple(
        Level(k + 1, a * h + b * coupling, mult, idle=(a == 0))
        for k, (a, b, mult) in enumerate(linear_level_coefficients(model))
    )
    return Spectrum(field_value=h, levels=levels)


def level_field_derivative(model: SpinModel, h: float, label: int) -> float:
    """dE/dh of one labeled level; identically zero exactly for idle levels."""
    spec = analytic_spectrum(model, h)
    if not any(lv.label == label for lv in spec.levels):
        raise ValueError(f"unknown level label {label}")
    if model.family is Family.ISING_KSEA and model.gz != 0.0:
        if label in (1, 2):
            return 0.0
        sign = -1.0 if label == 3 else 1.0
        return sign * 2.0 * h / math.hypot(h, model.gz)
    a, _, _ = linear_level_coefficients(model)[label - 1]
    return float(a)


def brute_force_spectrum(matrix: np.ndarray, grouping_tol: float | None = None) -> Spectrum:
    """Eigenvalue multiset of a dense Hermitian matrix (independent oracle).

    Levels come back energy-sorted and unlabeled (labels follow sort order),
    with near-degenerate values grouped at ``grouping_tol``, which defaults
    to 1e-9 relative to the spectral range.  Idle flags are not known to a
    numerical solve and are set to False.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.abs(matrix).max()))
    if np.abs(matrix - matrix.conj().T).max() > HERMITICITY_TOL * scale:
        raise ValueError("matrix is not Hermitian")
    eigenvalues = np.linalg.eigvalsh(matrix)
    if grouping_tol is None:
        spread = float(eigenvalues[-1] - eigenvalues[0])
        grouping_tol = 1e-9 * max(1.0, spread)
    levels: list[Level] = []
    start = 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[start] > grouping_tol:
            block = eigenvalues[start:i]
            levels.append(Level(len(levels) + 1, float(block.mean()), len(block), False))
            start = i
    return Spectrum(field_value=math.nan, levels=tuple(levels))


def ksea_eigenbasis(jz: float, gz: float, h: float) -> EigenBasis:
    """Eigenvectors of the KSEA pair in the {|11>, |10>, |01>, |00>} basis.

    The two idle levels are |10> and |01>.  The field-coupled pair lives in
    the span of |11> and |00>; as gz -> 0 those vectors go continuously to
    |00> and |11> (taking h > 0), which is also the branch used at gz == 0.
    """
    v1 = np.zeros(4, dtype=complex)
    v1[1] = 1.0
    v2 = np.zeros(4, dtype=complex)
    v2[2] = 1.0
    v3 = np.zeros(4, dtype=complex)
    v4 = np.zeros(4, dtype=complex)
    if gz == 0.0:
        v3[3] = 1.0
        v4[0] = 1.0
    else:
        root = math.hypot(h, gz)
        # low branch ~ (i*gz/(root+h)) |11> + |00>, high branch orthogonal
        amp = 1.0j * gz / (root + h)
        norm = 1.0 / math.sqrt(abs(amp) ** 2 + 1.0)
        v3[0] = norm * amp
        v3[3] = norm
        v4[0] = norm
        v4[3] = norm * amp
    del jz  # levels shift with jz, the eigenvectors do not
    return EigenBasis(blocks=tuple(v.reshape(4, 1) for v in (v1, v2, v3, v4)))


@lru_cache(maxsize=None)
def _linear_eigenbasis(family: Family, n_sites: int) -> EigenBasis:
    """Field-independent eigenbasis for the h-linear families.

    The coupling operator and the total magnetization commute, so a common
    eigenbasis exists independent of both J and h.  Each magnetization sector
    of the coupling operator is diagonalized once and the resulting vectors
    are matched to the (a, b) level table by their integer eigenvalues.
    """
    dim = 2 ** n_sites
    if family is Family.ISING_CHAIN:
        # computational basis states, grouped by (magnetization, bond sum)
        coeffs = _linear_coefficients(family, n_sites)
        buckets: dict[tuple[int, int], list[int]] = {ab[:2]: [] for ab in coeffs}
        for state in range(dim):
            # index bit k (from the left) is 0 for |1> on site k
            bits = [1 if ((state >> (n_sites - 1 - k)) & 1) == 0 else -1 for k in range(n_sites)]
            a = sum(bits)
            if n_sites == 2:
                b = bits[0] * bits[1] - 1
            else:
                b = sum(bits[i] * bits[(i + 1) % n_sites] for i in range(n_sites))
            buckets[(a, b)].append(state)
        blocks = []
        for a, b, mult in coeffs:
            block = np.zeros((dim, mult), dtype=complex)
            for col, state in enumerate(buckets[(a, b)]):
                block[state, col] = 1.0
            blocks.append(block)
        return EigenBasis(blocks=tuple(blocks))

    # Heisenberg: diagonalize the exchange operator inside each magnetization
    # sector; its eigenvalues are the integer b coefficients
    exchange = np.zeros((dim, dim), dtype=complex)
    bonds = _bonds(n_sites)
    for i, k in bonds:
        for pauli in (SIGMA_X, SIGMA_Y, SIGMA_Z):
            exchange += _embed(pauli, i, n_sites) @ _embed(pauli, k, n_sites)
    magnetization = np.zeros(dim)
    for i in range(n_sites):
        magnetization += np.real(np.diag(_embed(SIGMA_Z, i, n_sites)))
    coeffs = _linear_coefficients(family, n_sites)
    vectors: dict[tuple[int, int], list[np.ndarray]] = {ab[:2]: [] for ab in coeffs}
    for m in sorted(set(int(round(x)) for x in magnetization), reverse=True):
        idx = np.where(np.round(magnetization).astype(int) == m)[0]
        sub = exchange[np.ix_(idx, idx)]
        evals, evecs = np.linalg.eigh(sub)
        for col in range(len(idx)):
            b = int(round(evals[col]))
            full = np.zeros(dim, dtype=complex)
            full[idx] = evecs[:, col]
            vectors[(m, b)].append(full)
    blocks = tuple(np.column_stack(vectors[(a, b)]) for a, b, _ in coeffs)
    return EigenBasis(blocks=blocks)


def eigenbasis(model: SpinModel, h: float) -> EigenBasis:
    """Eigenvectors aligned with ``analytic_spectrum(model, h)`` labels."""
    if model.family is Family.ISING_KSEA and model.gz != 0.0:
        return ksea_eigenbasis(model.jz, model.gz, h)
    if model.family is Family.ISING_KSEA:
        # gz == 0 keeps the limit basis; label order is (|10>, |01>, |00>, |11>)
        return ksea_eigenbasis(model.jz, 0.0, h)
    return _linear_eigenbasis(model.family, model.n_sites)
