"""Hamiltonian builders, closed-form spectra, and the dense-solver oracle."""

import numpy as np
import pytest

from otto_forge import (
    Family,
    analytic_spectrum,
    brute_force_spectrum,
    build_hamiltonian,
    eigenbasis,
    heisenberg_xxx,
    ising_chain,
    ising_ksea,
    ksea_eigenbasis,
    level_field_derivative,
    linear_level_coefficients,
)

RNG = np.random.default_rng(7)


def random_model(rng):
    pick = rng.integers(0, 3)
    if pick == 0:
        return ising_ksea(rng.uniform(-5, 5), rng.uniform(-5, 5))
    if pick == 1:
        return heisenberg_xxx(int(rng.integers(2, 4)), rng.uniform(-5, 5))
    return ising_chain(int(rng.integers(2, 7)), rng.uniform(-5, 5))


def sorted_analytic(model, h):
    spec = analytic_spectrum(model, h)
    return np.sort(spec.expand(spec.energies()))


# ---------------------------------------------------------------- validation

@pytest.mark.parametrize("factory,args", [
    (ising_ksea, (0.0, float("nan"))),
    (ising_chain, (1, 1.0)),
    (ising_chain, (7, 1.0)),
    (heisenberg_xxx, (4, 1.0)),
    (heisenberg_xxx, (1, 1.0)),
])
def test_invalid_models_rejected(factory, args):
    with pytest.raises(ValueError):
        factory(*args)


def test_both_coupling_signs_allowed():
    ising_chain(3, -2.5)
    heisenberg_xxx(2, -0.1)
    ising_ksea(-1.0, -3.0)


# ------------------------------------------------------------- hamiltonians

def test_hamiltonians_hermitian():
    rng = np.random.default_rng(11)
    for _ in range(50):
        model = random_model(rng)
        ham = build_hamiltonian(model, rng.uniform(0.1, 10))
        assert np.abs(ham - ham.conj().T).max() == 0.0


def test_ising_hamiltonians_exactly_diagonal():
    rng = np.random.default_rng(12)
    for n in range(2, 7):
        ham = build_hamiltonian(ising_chain(n, rng.uniform(-5, 5)), rng.uniform(0.1, 10))
        off = ham - np.diag(np.diag(ham))
        assert np.abs(off).max() == 0.0


def test_ising_two_site_levels():
    # J=1, h=2 must give exactly {2h, -2J, -2J, -2h}
    ham = build_hamiltonian(ising_chain(2, 1.0), 2.0)
    assert sorted(np.real(np.diag(ham))) == [-4.0, -2.0, -2.0, 4.0]


def test_ksea_uncoupled_zeeman_limit():
    vals = np.linalg.eigvalsh(build_hamiltonian(ising_ksea(0.0, 0.0), 1.0))
    assert np.allclose(vals, [-2.0, 0.0, 0.0, 2.0], atol=1e-14)


def test_heisenberg_three_site_level_list():
    h, j = 4.0, 0.5
    expected = sorted([-(h + 3 * j), -(h + 3 * j), h - 3 * j, h - 3 * j,
                       -3 * (h - j), 3 * (h + j), -h + 3 * j, h + 3 * j])
    vals = np.linalg.eigvalsh(build_hamiltonian(heisenberg_xxx(3, j), h))
    assert np.allclose(vals, expected, atol=1e-12)
    assert np.allclose(sorted_analytic(heisenberg_xxx(3, j), h), expected, atol=1e-12)


# ------------------------------------------------------------------- spectra

def test_ksea_analytic_levels():
    spec = analytic_spectrum(ising_ksea(0.5, 0.0), 4.0)
    assert [lv.energy for lv in spec.levels] == [-0.5, -0.5, -7.5, 8.5]
    assert [lv.idle for lv in spec.levels] == [True, True, False, False]


def test_ising_three_site_appendix_multiset():
    spec = analytic_spectrum(ising_chain(3, 1.0), 1.0)
    multiset = sorted(spec.expand(spec.energies()))
    assert multiset == sorted([6.0, 0.0, 0.0, 0.0, -2.0, -2.0, -2.0, 0.0])


def test_zero_couplings_zero_field_all_flat():
    for model in (ising_ksea(0.0, 0.0), heisenberg_xxx(3, 0.0), ising_chain(4, 0.0)):
        spec = analytic_spectrum(model, 0.0)
        assert np.allclose(spec.energies(), 0.0, atol=0.0)


def test_labels_stable_across_field():
    # level k must denote the same level at every field value
    model = heisenberg_xxx(3, 1.3)
    s1 = analytic_spectrum(model, 2.0)
    s2 = analytic_spectrum(model, 7.0)
    coeffs = linear_level_coefficients(model)
    for lv1, lv2, (a, b, m) in zip(s1.levels, s2.levels, coeffs):
        assert lv1.label == lv2.label
        assert lv1.multiplicity == lv2.multiplicity == m
        assert lv1.energy == pytest.approx(a * 2.0 + b * 1.3, abs=1e-12)
        assert lv2.energy == pytest.approx(a * 7.0 + b * 1.3, abs=1e-12)


@pytest.mark.parametrize("n,expected", [
    (2, [1, 2, 1]),
    (3, [1, 3, 3, 1]),
    (4, [1, 4, 4, 2, 4, 1]),
    (5, [1, 5, 5, 5, 5, 5, 5, 1]),
    (6, [1, 6, 6, 9, 6, 12, 6, 9, 6, 2, 1]),
])
def test_ising_degeneracy_counts(n, expected):
    spec = analytic_spectrum(ising_chain(n, 0.7), 1.3)
    assert sorted(lv.multiplicity for lv in spec.levels) == sorted(expected)
    assert spec.dim == 2 ** n


def test_ising_six_site_level_structure():
    # generic parameters: group energies by the (field, coupling) coefficients
    j, h = 0.31, 1.9
    spec = analytic_spectrum(ising_chain(6, j), h)
    table = {
        (6 * h + 6 * j): 1, (4 * h + 2 * j): 6, (2 * h + 2 * j): 6,
        (2 * h - 2 * j): 9, (2 * j): 6, (-2 * j): 12, (-2 * h + 2 * j): 6,
        (-2 * h - 2 * j): 9, (-4 * h + 2 * j): 6, (-6 * j): 2, (-6 * h + 6 * j): 1,
    }
    got = {lv.energy: lv.multiplicity for lv in spec.levels}
    assert len(got) == len(table)
    for energy, mult in table.items():
        assert got[pytest.approx(energy, abs=1e-12)] == mult  # type: ignore[index]


def test_analytic_matches_dense_solver_multisets():
    rng = np.random.default_rng(42)
    for _ in range(200):
        model = random_model(rng)
        h = rng.uniform(0.1, 10)
        numeric = np.linalg.eigvalsh(build_hamiltonian(model, h))
        assert np.abs(sorted_analytic(model, h) - numeric).max() <= 1e-9


def test_gz_sign_symmetry_of_spectra():
    rng = np.random.default_rng(5)
    for _ in range(30):
        jz, gz, h = rng.uniform(-5, 5), rng.uniform(0, 5), rng.uniform(0.1, 10)
        plus = analytic_spectrum(ising_ksea(jz, gz), h).energies()
        minus = analytic_spectrum(ising_ksea(jz, -gz), h).energies()
        assert np.abs(plus - minus).max() == 0.0


# ------------------------------------------------------------ dense oracle

def test_brute_force_rejects_non_hermitian():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        brute_force_spectrum(bad)


def test_brute_force_identity_multiple():
    spec = brute_force_spectrum(2.5 * np.eye(8))
    assert len(spec.levels) == 1
    assert spec.levels[0].multiplicity == 8
    assert spec.levels[0].energy == pytest.approx(2.5, abs=0.0)


def test_brute_force_agrees_with_appendix_n6():
    model = ising_chain(6, 0.3)
    spec = brute_force_spectrum(build_hamiltonian(model, 2.0))
    assert np.abs(np.sort(spec.expand(spec.energies()))
                  - sorted_analytic(model, 2.0)).max() <= 1e-9


# -------------------------------------------------------------- eigenbases

def test_ksea_eigenbasis_residuals_and_orthogonality():
    rng = np.random.default_rng(3)
    for _ in range(25):
        jz, gz, h = rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.1, 10)
        ham = build_hamiltonian(ising_ksea(jz, gz), h)
        spec = analytic_spectrum(ising_ksea(jz, gz), h)
        basis = ksea_eigenbasis(jz, gz, h)
        vectors = np.column_stack([blk[:, 0] for blk in basis.blocks])
        gram = vectors.conj().T @ vectors
        assert np.abs(gram - np.eye(4)).max() <= 1e-12
        for lv, blk in zip(spec.levels, basis.blocks):
            residual = ham @ blk[:, 0] - lv.energy * blk[:, 0]
            assert np.abs(residual).max() <= 1e-10 * max(1.0, np.abs(ham).max())


def test_ksea_eigenbasis_gz_zero_limit():
    basis_limit = ksea_eigenbasis(0.5, 0.0, 4.0)
    assert np.allclose(basis_limit.blocks[2][:, 0], [0, 0, 0, 1])  # low branch |00>
    assert np.allclose(basis_limit.blocks[3][:, 0], [1, 0, 0, 0])  # high branch |11>
    small = ksea_eigenbasis(0.5, 1e-8, 4.0)
    assert abs(abs(small.blocks[2][3, 0]) - 1.0) < 1e-8
    assert abs(abs(small.blocks[3][0, 0]) - 1.0) < 1e-8


def test_general_eigenbasis_diagonalizes():
    rng = np.random.default_rng(9)
    for model in (heisenberg_xxx(2, 1.7), heisenberg_xxx(3, -0.8),
                  ising_chain(4, 2.2), ising_ksea(1.0, 3.0)):
        h = rng.uniform(0.5, 8)
        ham = build_hamiltonian(model, h)
        spec = analytic_spectrum(model, h)
        basis = eigenbasis(model, h)
        for lv, blk in zip(spec.levels, basis.blocks):
            assert blk.shape == (model.dim, lv.multiplicity)
            residual = ham @ blk - lv.energy * blk
            assert np.abs(residual).max() <= 1e-10 * max(1.0, np.abs(ham).max())


# ------------------------------------------------------- field derivatives

def test_field_derivative_idle_levels_zero():
    for h in (0.5, 4.0, 9.0):
        assert level_field_derivative(ising_ksea(2.0, 1.5), h, 1) == 0.0
        assert level_field_derivative(ising_ksea(2.0, 1.5), h, 2) == 0.0


def test_field_derivative_ksea_working_level():
    # d/dh of Jz + 2*sqrt(h^2+Gz^2) at h=4, Gz=3 is 8/5
    assert level_field_derivative(ising_ksea(0.5, 3.0), 4.0, 4) == pytest.approx(1.6, abs=1e-14)


def test_field_derivative_ising_top_level():
    assert level_field_derivative(ising_chain(2, 1.0), 3.0, 1) == 2.0


def test_field_derivative_matches_finite_differences():
    rng = np.random.default_rng(21)
    for _ in range(20):
        model = random_model(rng)
        h = rng.uniform(0.5, 9)
        step = 1e-6
        up = analytic_spectrum(model, h + step)
        down = analytic_spectrum(model, h - step)
        for lv_up, lv_down in zip(up.levels, down.levels):
            numeric = (lv_up.energy - lv_down.energy) / (2 * step)
            exact = level_field_derivative(model, h, lv_up.label)
            assert numeric == pytest.approx(exact, abs=1e-6)


def test_field_derivative_unknown_label():
    with pytest.raises(ValueError):
        level_field_derivative(ising_chain(2, 1.0), 3.0, 99)
