import math

import numpy as np
import pytest

from magnonqed.hamiltonian import (build_full, build_H0, build_V,
                                   parity_operator)
from magnonqed.hilbert import build_basis
from magnonqed.utils.checker import hermitian_residual


def test_free_hamiltonian_diagonal(bell_params):
    H0 = build_H0(bell_params)
    entries = np.asarray(H0)
    assert np.count_nonzero(entries - np.diag(np.diag(entries))) == 0
    trunc = bell_params.trunc
    omega_q = bell_params['omega_q']
    assert entries[trunc.index('e11'), trunc.index('e11')] == \
        pytest.approx(1.0 + 1.7 + omega_q)
    assert entries[trunc.index('g20'), trunc.index('g20')] == \
        pytest.approx(2.0)


def test_interaction_matrix_elements(bell_params):
    V = np.asarray(build_V(bell_params))
    trunc = bell_params.trunc
    g, G = bell_params['g'], bell_params['G']
    cos, sin = math.cos(math.pi / 4), math.sin(math.pi / 4)
    assert V[trunc.index('g11'), trunc.index('g00')] == pytest.approx(g)
    assert V[trunc.index('e10'), trunc.index('g00')] == pytest.approx(G * cos)
    assert V[trunc.index('g10'), trunc.index('g00')] == pytest.approx(-G * sin)
    assert V[trunc.index('e10'), trunc.index('e00')] == pytest.approx(G * sin)
    assert V[trunc.index('g21'), trunc.index('g10')] == \
        pytest.approx(g * math.sqrt(2))
    assert V[trunc.index('e11'), trunc.index('g00')] == 0


def test_hamiltonian_is_hermitian(bell_params):
    H = build_full(bell_params)
    assert H.hermitian
    assert hermitian_residual(H.entries) < 1e-12


def test_scaling_covariance(small_params):
    scaled = small_params.replace(
        omega_a=2 * small_params['omega_a'],
        omega_m=2 * small_params['omega_m'],
        omega_q=2 * small_params['omega_q'],
        g=2 * small_params['g'], G=2 * small_params['G'],
    )
    reference = np.linalg.eigvalsh(build_full(small_params).entries)
    doubled = np.linalg.eigvalsh(build_full(scaled).entries)
    np.testing.assert_allclose(doubled, 2 * reference, rtol=1e-10)


def test_parity_symmetry_without_longitudinal_coupling(small_params):
    params = small_params.replace(theta=0.0)
    H = build_full(params).entries
    parity = parity_operator(params.trunc).entries
    assert np.max(np.abs(H @ parity - parity @ H)) < 1e-12


def test_parity_broken_by_longitudinal_coupling(small_params):
    H = build_full(small_params).entries
    parity = parity_operator(small_params.trunc).entries
    assert np.max(np.abs(H @ parity - parity @ H)) > 1e-3


def test_free_spectrum_without_coupling(small_params):
    params = small_params.replace(g=0.0, G=0.0)
    energies = np.sort(np.linalg.eigvalsh(build_full(params).entries))
    expected = sorted(
        label.n_a + 1.7 * label.n_m + params['omega_q'] * (label.qubit == 'e')
        for label in build_basis(params.trunc)
    )
    np.testing.assert_allclose(energies, expected, atol=1e-12)
