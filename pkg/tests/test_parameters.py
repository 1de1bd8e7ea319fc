import logging
import math

import pytest

from magnonqed.constants import PROTOCOL, SWITCHING, TIMING
from magnonqed.exceptions import InvalidParameter, UnknownOption
from magnonqed.hilbert import Truncation
from magnonqed.parameters import (DecoherenceParameter, ProtocolParameter,
                                  RunConfig, SystemParameter)
from magnonqed.parameters import normalize_key


def test_default_parameters():
    params = SystemParameter.default('bell')
    assert params['omega_a'] == 1.0
    assert params['omega_m'] == 1.7
    assert params['omega_q'] == pytest.approx(2.7)
    assert params['theta'] == pytest.approx(math.pi / 4)
    assert params.trunc == Truncation(5, 5)
    assert params.reference_frequency() == 1.0
    ghz = SystemParameter.default('ghz', (3, 4))
    assert ghz['omega_q'] == pytest.approx(1.4)
    assert ghz.reference_frequency() == 1.0
    assert ghz.trunc == Truncation(3, 4)


def test_builder_checks_values():
    with pytest.raises(InvalidParameter):
        SystemParameter().frequencies(omega_a=-1.0)
    with pytest.raises(InvalidParameter):
        SystemParameter().couplings(g=-0.1)
    with pytest.raises(InvalidParameter):
        SystemParameter().mixing_angle(2.0)
    with pytest.raises(InvalidParameter):
        SystemParameter().frequencies(omega_q=float('nan'))


def test_replace_leaves_original_untouched(bell_params):
    derived = bell_params.replace(g=0.05, trunc=3)
    assert bell_params['g'] == 0.1
    assert derived['g'] == 0.05
    assert derived.trunc == Truncation(3, 3)
    with pytest.raises(InvalidParameter):
        bell_params.replace(G=-1.0)


def test_bare_resonances(bell_params, ghz_params):
    assert bell_params.bare_resonance(('e00', 'g11')) == pytest.approx(2.7)
    assert bell_params.bare_resonance(('g11', 'e00')) == pytest.approx(2.7)
    assert ghz_params.bare_resonance(('g20', 'e11')) == pytest.approx(1.4)
    assert ghz_params.bare_resonance(('e01', 'g10')) == pytest.approx(1.4)
    assert ghz_params.bare_resonance(('e00', 'g20')) == pytest.approx(4.8)
    with pytest.raises(InvalidParameter):
        bell_params.bare_resonance(('g00', 'g11'))


def test_dispersive_flag(bell_params, caplog):
    assert bell_params.is_dispersive()
    strong = bell_params.replace(g=0.2)
    with caplog.at_level(logging.WARNING):
        assert not strong.check_dispersive()
    assert 'dispersive' in caplog.text


def test_decoherence_parameter():
    rates = DecoherenceParameter()
    assert rates.is_closed()
    rates.uniform(1e-5)
    assert not rates.is_closed()
    assert rates['gamma'] == 1e-5
    with pytest.raises(InvalidParameter):
        rates.rates(kappa_a=-1e-5)
    assert rates.replace(kappa_m=0.0)['kappa_m'] == 0.0


def test_protocol_parameter(bell_params):
    spec = ProtocolParameter(PROTOCOL.GHZ, bell_params).phase(3 * math.pi)
    assert spec['phi'] == pytest.approx(math.pi)
    assert spec['timing_source'] == TIMING.CLOSED_FORM
    assert spec['rates'].is_closed()
    with pytest.raises(UnknownOption):
        ProtocolParameter('w_state', bell_params)
    with pytest.raises(UnknownOption):
        spec.timing('guess')
    with pytest.raises(InvalidParameter):
        spec.switching(SWITCHING.LINEAR_RAMP)
    with pytest.raises(InvalidParameter):
        spec.resolution(1)


def test_protocol_default_timing(bell_params):
    assert ProtocolParameter(PROTOCOL.GHZ, bell_params)['timing_source'] \
        == TIMING.CLOSED_FORM
    qm = ProtocolParameter(PROTOCOL.BELL_QUBIT_MAGNON,
                           SystemParameter.default('qubit-magnon'))
    assert qm['timing_source'] == TIMING.NUMERIC_CROSSING
    cfg = RunConfig('protocol', 'qubit-magnon')
    assert cfg.protocol['timing_source'] == TIMING.NUMERIC_CROSSING
    cfg.set_option('timing', 'closed')
    assert cfg.protocol['timing_source'] == TIMING.CLOSED_FORM


def test_normalize_key():
    assert normalize_key('omega-a') == 'omega_a'
    assert normalize_key('--kappa-m') == 'kappa_m'
    assert normalize_key('G') == 'G'
    assert normalize_key('g') == 'g'


def test_run_config_options():
    cfg = RunConfig('rabi', 'ghz')
    cfg.set_option('G', '0.05').set_option('theta', '1/4') \
        .set_option('omega-a', '2.5').set_option('trunc', '3,4')
    assert cfg.system['G'] == 0.05
    assert cfg.system['theta'] == pytest.approx(math.pi / 4)
    assert cfg.system['omega_a'] == 2.5
    assert cfg.system.trunc == Truncation(3, 4)
    assert cfg['explicit'] == {'G', 'theta', 'omega_a', 'trunc'}
    assert cfg.protocol['kind'] == PROTOCOL.GHZ
    assert cfg.protocol['params'] is cfg.system


def test_run_config_dissipation_and_protocol():
    cfg = RunConfig('fidelity-dynamics')
    cfg.update_from({'kappa': '1e-5,1e-4', 'timing': 'numeric',
                     'switching': 'ramp:20', 'phi': '1/2'})
    assert cfg['workflow'] == 'bell'
    assert cfg['kappas'] == [1e-5, 1e-4]
    assert cfg.rates['kappa_a'] == 1e-5
    assert cfg.protocol['rates'] is cfg.rates
    assert cfg.protocol['timing_source'] == TIMING.NUMERIC_CROSSING
    assert cfg.protocol['switching'] == SWITCHING.LINEAR_RAMP
    assert cfg.protocol['ramp_duration'] == 20.0
    assert cfg.protocol['phi'] == pytest.approx(math.pi / 2)


def test_run_config_rejects_bad_options():
    cfg = RunConfig('spectrum')
    with pytest.raises(InvalidParameter):
        cfg.set_option('colour', 'blue')
    with pytest.raises(InvalidParameter):
        cfg.set_option('timing', 'approximate')
    with pytest.raises(InvalidParameter):
        cfg.set_option('workflow', 'ghz')
    with pytest.raises(InvalidParameter):
        cfg.set_option('jobs', '0')
    with pytest.raises(InvalidParameter):
        cfg.set_option('range', '2.8:2.6:10')
    with pytest.raises(UnknownOption):
        cfg.set_option('vary', 'theta')
    with pytest.raises(UnknownOption):
        RunConfig('spectrum', 'w-state')
