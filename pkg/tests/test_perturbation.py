import math

import numpy as np
import pytest

from magnonqed.constants import METHOD, VARY
from magnonqed.exceptions import (DegenerateDenominatorError,
                                  InvalidParameter,
                                  LowerOrderConnectionError, ResonancePole)
from magnonqed.hamiltonian import build_H0, build_V
from magnonqed.hilbert import Truncation
from magnonqed.parameters import SystemParameter
from magnonqed.perturbation import (closed_form_bell, closed_form_for,
                                    closed_form_ghz,
                                    closed_form_qubit_magnon,
                                    closed_form_two_photon, connection_order,
                                    convergence_check, effective_coupling,
                                    enumerate_paths, paths_table,
                                    second_order_coupling, second_order_shift,
                                    third_order_coupling, validity_sweep)
from magnonqed.spectral import find_avoided_crossing


@pytest.fixture
def qm_params():
    return SystemParameter.default('qubit-magnon')


@pytest.fixture
def two_photon_params(ghz_params):
    return ghz_params.replace(omega_q=2 * ghz_params['omega_a'])


def test_bell_closed_form(bell_params):
    report = closed_form_bell(bell_params)
    assert report.delta == pytest.approx(-1.59925e-2, rel=1e-4)
    assert report.g_eff == pytest.approx(-1.6807e-3, rel=1e-4)
    assert report.method == METHOD.CLOSED_FORM
    assert report.delta == pytest.approx(
        report.shift_final - report.shift_initial, rel=1e-12
    )


def test_bell_initial_shift(bell_params):
    report = closed_form_bell(bell_params.replace(omega_q=2.7))
    # e00 shift: -G^2 s^2/wa + G^2 c^2/(wq - wa) - g^2/(wa + wm)
    expected = -0.005 + 0.005 / 1.7 - 0.01 / 2.7
    assert report.shift_initial == pytest.approx(expected, rel=1e-12)


def test_bell_self_consistent_diagnostics(bell_params):
    diagnostics = closed_form_bell(bell_params).diagnostics
    assert diagnostics['delta_self_consistent_minus'] == pytest.approx(
        diagnostics['A'] / (1 + diagnostics['B'])
    )
    assert diagnostics['B'] > 0


def test_ghz_closed_form(ghz_params):
    report = closed_form_ghz(ghz_params)
    assert report.delta == pytest.approx(2.90226e-2, rel=1e-5)
    assert report.g_eff == pytest.approx(-8.3189e-4, rel=1e-4)
    assert report.diagnostics['g_eff_uncorrected'] == \
        pytest.approx(-9.3587e-4, rel=1e-4)
    assert report.delta == pytest.approx(
        report.shift_initial - report.shift_final, rel=1e-12
    )


def test_two_photon_closed_form(two_photon_params):
    report = closed_form_two_photon(two_photon_params)
    assert report.g_eff == pytest.approx(-5.8926e-3, rel=1e-4)
    assert report.delta == pytest.approx(report.diagnostics['delta_theta'],
                                         rel=1e-12)


def test_qubit_magnon_closed_form(qm_params):
    report = closed_form_qubit_magnon(qm_params)
    assert report.g_eff == pytest.approx(-5.8824e-4, rel=1e-4)
    assert report.delta == pytest.approx(closed_form_ghz(qm_params).delta)
    assert report.diagnostics['delta_pair'] == pytest.approx(
        report.shift_initial - report.shift_final, rel=1e-12
    )


@pytest.mark.parametrize('theta', [0.0, math.pi / 2])
def test_couplings_vanish_at_extreme_angles(bell_params, ghz_params,
                                            two_photon_params, theta):
    reports = [
        closed_form_bell(bell_params.replace(theta=theta)),
        closed_form_ghz(ghz_params.replace(theta=theta)),
        closed_form_qubit_magnon(ghz_params.replace(theta=theta)),
        closed_form_two_photon(two_photon_params.replace(theta=theta)),
    ]
    for report in reports:
        assert abs(report.g_eff) < 1e-18


def test_closed_form_order_scaling(bell_params):
    full = closed_form_bell(bell_params)
    half = closed_form_bell(bell_params.replace(g=0.05, G=0.05))
    assert half.g_eff == pytest.approx(full.g_eff / 8, rel=1e-12)
    assert half.delta == pytest.approx(full.delta / 4, rel=1e-12)


def test_resonance_pole(bell_params, ghz_params):
    with pytest.raises(ResonancePole):
        closed_form_bell(bell_params.replace(omega_q=bell_params['omega_a']))
    with pytest.raises(ResonancePole):
        closed_form_ghz(ghz_params.replace(omega_m=ghz_params['omega_a']))


def test_closed_form_lookup():
    assert closed_form_for(('e00', 'g11')) is closed_form_bell
    assert closed_form_for(('e11', 'g20')) is closed_form_ghz
    with pytest.raises(InvalidParameter):
        closed_form_for(('e00', 'g01'))


def test_connection_order(bell_params):
    V = build_V(bell_params)
    assert connection_order(V, 'e00', 'g10') == 1
    assert connection_order(V, 'e00', 'g20') == 2
    assert connection_order(V, 'e00', 'g11') == 3


def test_lower_order_connection(bell_params):
    H0, V = build_H0(bell_params), build_V(bell_params)
    with pytest.raises(LowerOrderConnectionError):
        third_order_coupling(H0, V, 'e00', 'g20')
    with pytest.raises(LowerOrderConnectionError):
        second_order_coupling(H0, V, 'e00', 'g10')


def test_degenerate_denominator(bell_params):
    params = bell_params.replace(omega_q=bell_params['omega_a'])
    with pytest.raises(DegenerateDenominatorError):
        second_order_shift(build_H0(params), build_V(params), 'e00')


@pytest.mark.parametrize('workflow, closed_form', [
    ('bell', closed_form_bell),
    ('ghz', closed_form_ghz),
    ('qubit-magnon', closed_form_qubit_magnon),
])
def test_generic_shifts_match_closed_forms(workflow, closed_form):
    params = SystemParameter.default(workflow)
    closed = closed_form(params)
    generic = effective_coupling(params, closed.pair)
    assert generic.shift_initial == pytest.approx(closed.shift_initial,
                                                  rel=1e-10)
    assert generic.shift_final == pytest.approx(closed.shift_final,
                                                rel=1e-10)


def test_generic_bell_resonance_shift(bell_params):
    generic = effective_coupling(bell_params, ('e00', 'g11'))
    assert generic.delta == pytest.approx(closed_form_bell(bell_params).delta,
                                          rel=1e-10)


def test_generic_qubit_magnon_pair_shift(qm_params):
    generic = effective_coupling(qm_params, ('g10', 'e01'))
    closed = closed_form_qubit_magnon(qm_params)
    assert generic.delta == pytest.approx(closed.diagnostics['delta_pair'],
                                          rel=1e-10)


def test_generic_two_photon(two_photon_params):
    generic = effective_coupling(two_photon_params, ('e00', 'g20'))
    closed = closed_form_two_photon(two_photon_params)
    assert generic.diagnostics['order'] == 2
    assert generic.g_eff == pytest.approx(closed.g_eff, rel=1e-10)
    assert generic.delta == pytest.approx(closed.diagnostics['delta_theta'],
                                          rel=1e-10)


@pytest.mark.parametrize('workflow, pair, expected', [
    ('bell', ('e00', 'g11'), -1.6807e-3),
    ('ghz', ('g20', 'e11'), -8.3189e-4),
    ('qubit-magnon', ('g10', 'e01'), -5.8824e-4),
])
def test_generic_third_order_coupling(workflow, pair, expected):
    params = SystemParameter.default(workflow)
    generic = effective_coupling(params, pair)
    assert generic.diagnostics['order'] == 3
    assert generic.g_eff == pytest.approx(expected, rel=0.05)
    closed = closed_form_for(pair)(params)
    assert generic.g_eff == pytest.approx(closed.g_eff, rel=1e-9)


def test_bell_paths(bell_params):
    paths = enumerate_paths(build_H0(bell_params), build_V(bell_params),
                            'e00', 'g11')
    assert len(paths) == 12
    for path in paths:
        assert path.order == 3
        assert str(path.nodes[0]) == 'e00' and str(path.nodes[-1]) == 'g11'
    table = paths_table(paths)
    assert table.columns == ['index', 'path', 'amplitude']
    assert table.metadata['paths'] == 12


def test_ghz_paths_need_three_photons(ghz_params):
    H0, V = build_H0(ghz_params), build_V(ghz_params)
    assert len(enumerate_paths(H0, V, 'g20', 'e11')) == 18
    small = ghz_params.replace(trunc=Truncation(2, 2))
    assert len(enumerate_paths(build_H0(small), build_V(small),
                               'g20', 'e11')) == 12


@pytest.mark.parametrize('workflow, pair', [
    ('bell', ('e00', 'g11')),
    ('ghz', ('g20', 'e11')),
])
def test_path_sum_equals_generic_sum(workflow, pair):
    params = SystemParameter.default(workflow)
    H0, V = build_H0(params), build_V(params)
    paths = enumerate_paths(H0, V, *pair)
    intermediates = {node for path in paths for node in path.nodes[1:-1]}
    restricted = third_order_coupling(H0, V, *pair,
                                      intermediates=intermediates)
    total = math.fsum(path.amplitude for path in paths)
    assert total == pytest.approx(restricted, rel=1e-12)
    assert total == pytest.approx(third_order_coupling(H0, V, *pair),
                                  rel=1e-12)
    enumerated = effective_coupling(params, pair, METHOD.PATH_ENUMERATION)
    assert enumerated.g_eff == pytest.approx(total, rel=1e-12)
    assert len(enumerated.paths) == len(paths)


def test_generic_sums_order_scaling(bell_params):
    half = bell_params.replace(g=0.05, G=0.05)
    full_report = effective_coupling(bell_params, ('e00', 'g11'))
    half_report = effective_coupling(half, ('e00', 'g11'))
    assert half_report.g_eff == pytest.approx(full_report.g_eff / 8,
                                              rel=1e-9)
    assert half_report.shift_initial == pytest.approx(
        full_report.shift_initial / 4, rel=1e-9
    )


@pytest.mark.parametrize('workflow, pair', [
    ('bell', ('e00', 'g11')),
    ('ghz', ('g20', 'e11')),
])
def test_third_order_hermitian_symmetry(workflow, pair):
    params = SystemParameter.default(workflow)
    H0, V = build_H0(params), build_V(params)
    forward = third_order_coupling(H0, V, pair[0], pair[1])
    backward = third_order_coupling(H0, V, pair[1], pair[0])
    assert forward == pytest.approx(backward, rel=1e-10)


def test_vanishing_photon_magnon_coupling(bell_params):
    report = effective_coupling(bell_params.replace(g=0.0), ('e00', 'g11'))
    assert report.g_eff == 0


def test_validity_sweep(bell_params):
    table = validity_sweep(bell_params, VARY.PHOTON_MAGNON, (0.05, 0.1, 2),
                           ('e00', 'g11'))
    assert len(table) == 2
    assert table.columns == ['g', 'delta_closed', 'delta_numeric',
                             'two_g_closed', 'two_g_numeric', 'delta_error',
                             'two_g_error']
    assert table.metadata['G'] == bell_params['G']
    assert len(table.within(0.1)) == 2
    np.testing.assert_allclose(table.column('g'), [0.05, 0.1])


def test_convergence_check(bell_params):
    def shift_of(params):
        return second_order_shift(build_H0(params), build_V(params), 'e00')

    report = convergence_check(shift_of, bell_params.replace(trunc=(3, 3)))
    assert report.change < 1e-14
    assert report.truncations == ((3, 3), (7, 7))


def test_ghz_validity_at_weak_coupling(ghz_params):
    table = validity_sweep(ghz_params, VARY.PHOTON_MAGNON, (0.02, 0.04, 2),
                           ('g20', 'e11'))
    assert len(table.within(0.05, column='two_g_error')) == 2


def _band_rows(table, vary, limit):
    return [row for row in table if row[vary] <= limit + 1e-12]


@pytest.mark.slow
@pytest.mark.parametrize('workflow, pair, delta_limit, g_limit, G_limit', [
    ('bell', ('e00', 'g11'), 0.15, 0.1, 0.12),
    ('ghz', ('g20', 'e11'), 0.2, 0.1, 0.15),
])
def test_validity_bands(workflow, pair, delta_limit, g_limit, G_limit):
    params = SystemParameter.default(workflow).replace(g=0.1, G=0.1)
    for vary, limit in ((VARY.PHOTON_MAGNON, g_limit),
                        (VARY.PHOTON_QUBIT, G_limit)):
        table = validity_sweep(params, vary, (0.01, 0.2, 20), pair)
        assert len(table) == 20
        for row in _band_rows(table, vary, delta_limit):
            assert row['delta_error'] < 0.1, row
        for row in _band_rows(table, vary, limit):
            assert row['two_g_error'] < 0.1, row


@pytest.mark.slow
@pytest.mark.parametrize('workflow, pair', [
    ('bell', ('e00', 'g11')),
    ('ghz', ('g20', 'e11')),
])
def test_crossing_truncation_convergence(workflow, pair):
    def splitting(params):
        return 2 * find_avoided_crossing(params, pair).g_eff_numeric

    def resonance_shift(params):
        return find_avoided_crossing(params, pair).delta_numeric

    params = SystemParameter.default(workflow)
    for func in (splitting, resonance_shift):
        report = convergence_check(func, params)
        assert report.change < 0.005 * abs(report.small)
        assert report.truncations == ((5, 5), (7, 7))
