"""
Parameter objects handed to the numerical routines.
"""

import copy
import logging
import math

from ..constants import (PRESET, PROPAGATOR, PROTOCOL, QUBIT, SWITCHING,
                         TIMING, VARY, WORKFLOW)
from ..exceptions import InvalidParameter
from ..hilbert import BareLabel, Truncation
from ..utils._internal import (parse_float, parse_float_list,
                               parse_pi_fraction, parse_range,
                               parse_switching, parse_truncation)
from ..utils.misc import to_snake_case
from .field import (AngleMixin, CouplingMixin, FrequencyMixin, PhaseMixin,
                    RateMixin, ScheduleMixin, TruncationMixin)

logger = logging.getLogger(__name__)

__all__ = (
    'DecoherenceParameter',
    'ProtocolParameter',
    'RunConfig',
    'SystemParameter',
)

DISPERSIVE_RATIO = 0.2


class Parameter(dict):
    """An object based on ``dict`` used to store the parameters of a
    computation. When the methods of a Parameter object are used to build
    it, some checks are computed on the values in order to assert that the
    object is correctly built. Routines only read a Parameter; use
    ``replace`` to derive a modified copy.
    """
    def replace(self, **fields):
        """Copy of the parameter with some fields rebuilt through their
        setters (or stored as is if no setter exists)."""
        clone = copy.deepcopy(self)
        clone._apply(fields)
        return clone

    def _apply(self, fields):
        for key, value in fields.items():
            self[key] = value
        return self


class SystemParameter(Parameter,
                      FrequencyMixin,
                      CouplingMixin,
                      AngleMixin,
                      TruncationMixin):
    """Helper to build the parameters of the Hamiltonian: frequencies,
    couplings, mixing angle and truncation. The qubit frequency is owned by
    the schedules of the protocols; it defaults to the bare resonance of
    the workflow's tracked pair.

    Example:

        >>> params = SystemParameter() \\
                .frequencies(omega_a=1.0, omega_m=1.7, omega_q=2.7) \\
                .couplings(g=0.1, G=0.1) \\
                .mixing_angle(math.pi / 4) \\
                .truncation(5, 5)
    """
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.setdefault('theta', math.pi / 4)
        self.setdefault('g', 0.0)
        self.setdefault('G', 0.0)
        self.setdefault('trunc', Truncation())
        self.setdefault('reference', 'omega_a')

    @classmethod
    def default(cls, workflow=WORKFLOW.BELL, trunc=None):
        """Parameters of a workflow preset

        Args:
            workflow (str): ``WORKFLOW`` value
            trunc (Truncation, optional): default to (5, 5)
        Returns:
            SystemParameter:
        """
        preset = PRESET.of(workflow)
        param = cls() \
            .frequencies(preset.omega_a, preset.omega_m) \
            .couplings(preset.g, preset.G) \
            .mixing_angle(preset.theta * math.pi)
        param['reference'] = preset.reference
        param['trunc'] = Truncation.coerce(trunc or Truncation())
        bare = param.bare_resonance(preset.pair)
        param.frequencies(omega_q=bare)
        return param

    def _apply(self, fields):
        for key, value in fields.items():
            if key in ('omega_a', 'omega_m', 'omega_q'):
                self.frequencies(**{key: value})
            elif key in ('g', 'G'):
                self.couplings(**{key: value})
            elif key == 'theta':
                self.mixing_angle(value)
            elif key == 'trunc':
                self['trunc'] = Truncation.coerce(value)
            else:
                self[key] = value
        return self

    @property
    def trunc(self):
        """Truncation of the space"""
        return self['trunc']

    def reference_frequency(self):
        """Frequency used as unit (omega_a for Bell workflows, omega_m
        otherwise)"""
        return self[self.get('reference', 'omega_a')]

    def is_dispersive(self):
        """Advisory flag: both couplings below 0.2 min(omega_a, omega_m,
        |omega_a - omega_m|)."""
        scale = min(self['omega_a'], self['omega_m'],
                    abs(self['omega_a'] - self['omega_m']))
        limit = DISPERSIVE_RATIO * scale
        return self['g'] < limit and self['G'] < limit

    def check_dispersive(self):
        """Log a warning if the advisory flag is not set"""
        if not self.is_dispersive():
            logger.warning(
                'Couplings g=%.4g, G=%.4g are outside the dispersive regime; '
                'perturbative forms may be inaccurate.', self['g'], self['G']
            )
        return self.is_dispersive()

    def bare_resonance(self, pair):
        """Qubit frequency at which the two bare states of ``pair`` are
        degenerate under the free Hamiltonian.

        Args:
            pair (tuple): two bare labels of opposite qubit states
        Raises:
            InvalidParameter: if the qubit states are identical
        Returns:
            float:
        """
        first, second = [BareLabel.coerce(label) for label in pair]
        if first.qubit == second.qubit:
            raise InvalidParameter('pair', (str(first), str(second)),
                                   'states must differ in the qubit')
        excited, ground = (first, second) if first.qubit == QUBIT.E \
            else (second, first)
        return (ground.n_a - excited.n_a) * self['omega_a'] \
            + (ground.n_m - excited.n_m) * self['omega_m']

    def __repr__(self):
        return '<SystemParameter.omega_a={omega_a}.omega_m={omega_m}>'.format(
            **self
        )


class DecoherenceParameter(Parameter, RateMixin):
    """Helper to build the dissipation rates of the Lindblad equation, in
    the frequency units of the Hamiltonian.

    Example:

        >>> rates = DecoherenceParameter().uniform(1e-5)
    """
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        for key in ('kappa_a', 'kappa_m', 'gamma'):
            self.setdefault(key, 0.0)

    def is_closed(self):
        """True when every rate vanishes"""
        return all(self[key] == 0 for key in ('kappa_a', 'kappa_m', 'gamma'))

    def _apply(self, fields):
        self.rates(**fields)
        return self


# the closed-form qubit-magnon shift misses the crossing by more than |g_eff|
_DEFAULT_TIMING = {PROTOCOL.BELL_QUBIT_MAGNON: TIMING.NUMERIC_CROSSING}


class ProtocolParameter(Parameter, PhaseMixin, ScheduleMixin):
    """Helper to build the specification of a protocol run.

    Closed-form timing is the default, except for
    ``PROTOCOL.BELL_QUBIT_MAGNON`` which is tuned on the numeric crossing.

    Example:

        >>> spec = ProtocolParameter(PROTOCOL.GHZ,
                                     SystemParameter.default('ghz')) \\
                .phase(0.0) \\
                .timing(TIMING.NUMERIC_CROSSING) \\
                .switching(SWITCHING.SUDDEN)
    """
    def __init__(self, kind, params, rates=None):
        super().__init__()
        PROTOCOL.check(kind)
        self['kind'] = kind
        self['params'] = params
        self['rates'] = rates if rates is not None else DecoherenceParameter()
        self['phi'] = 0.0
        self['timing_source'] = _DEFAULT_TIMING.get(kind,
                                                    TIMING.CLOSED_FORM)
        self['swap_timing'] = TIMING.NUMERIC_CROSSING
        self['switching'] = SWITCHING.SUDDEN
        self['ramp_duration'] = None
        self['ramp_slices'] = 20
        self['propagator'] = PROPAGATOR.FULL
        self['dt'] = 0.05
        self['steps'] = 201

    def __repr__(self):
        return '<ProtocolParameter.kind={kind}.phi={phi:.4f}>'.format(**self)


_WORKFLOW_PROTOCOL = {
    WORKFLOW.BELL: PROTOCOL.BELL_PHOTON_MAGNON,
    WORKFLOW.GHZ: PROTOCOL.GHZ,
    WORKFLOW.QUBIT_MAGNON: PROTOCOL.BELL_QUBIT_MAGNON,
}

_TIMING_ALIASES = {
    'closed': TIMING.CLOSED_FORM,
    'closed_form': TIMING.CLOSED_FORM,
    'numeric': TIMING.NUMERIC_CROSSING,
    'numeric_crossing': TIMING.NUMERIC_CROSSING,
}


def normalize_key(key):
    """Config keys are snake_case, except ``G`` which is case-sensitive"""
    key = key.strip().lstrip('-')
    return key if key == 'G' else to_snake_case(key)


class RunConfig(Parameter):
    """Configuration of a command-line run. Unspecified fields take the
    workflow's preset. Values are raw strings (from a config file or from
    command-line flags) parsed by ``set_option``.

    Example:

        >>> cfg = RunConfig('rabi', 'ghz')
        >>> cfg.set_option('G', '0.05').set_option('theta', '1/4')
        >>> cfg.system['G']
        0.05
    """
    _SYSTEM_KEYS = ('omega_a', 'omega_m', 'omega_q', 'g', 'G')

    def __init__(self, command, workflow=None):
        super().__init__()
        self['command'] = command
        self['workflow_given'] = workflow is not None
        self['workflow'] = workflow or WORKFLOW.BELL
        WORKFLOW.check(self['workflow'])
        self['system'] = SystemParameter.default(self['workflow'])
        self['rates'] = DecoherenceParameter()
        self['protocol'] = ProtocolParameter(
            _WORKFLOW_PROTOCOL[self['workflow']], self['system'],
            self['rates']
        )
        self['out'] = None
        self['jobs'] = None
        self['omega_q_range'] = None
        self['grid'] = None
        self['kappas'] = None
        self['pair'] = None
        self['vary'] = None
        self['explicit'] = set()

    @property
    def system(self):
        """SystemParameter of the run"""
        return self['system']

    @property
    def rates(self):
        """DecoherenceParameter of the run"""
        return self['rates']

    @property
    def protocol(self):
        """ProtocolParameter of the run"""
        return self['protocol']

    def set_option(self, key, raw):
        """Parse and store one option given as a string.

        Args:
            key (str): option name (``omega-a``, ``omega_a``, ``G``...)
            raw (str): raw value
        Raises:
            InvalidParameter: unknown key or invalid value
        Returns:
            RunConfig:
        """
        key = normalize_key(key)
        system, protocol = self['system'], self['protocol']
        self['explicit'].add(key)
        if key in self._SYSTEM_KEYS:
            system._apply({key: parse_float(raw, key)})
        elif key == 'theta':
            system.mixing_angle(parse_pi_fraction(raw, key))
        elif key == 'trunc':
            system['trunc'] = Truncation(*parse_truncation(raw))
        elif key == 'kappa':
            values = parse_float_list(raw, key)
            self.rates.uniform(values[0])
            self['kappas'] = values
        elif key in ('kappa_a', 'kappa_m', 'gamma'):
            self.rates.rates(**{key: parse_float(raw, key)})
        elif key == 'kappas':
            self['kappas'] = parse_float_list(raw, key)
        elif key == 'phi':
            protocol.phase(parse_pi_fraction(raw, key))
        elif key in ('timing', 'timing_source', 'swap_timing'):
            value = _TIMING_ALIASES.get(str(raw).strip().lower())
            if value is None:
                raise InvalidParameter(key, raw, "expected 'closed' or "
                                                 "'numeric'")
            if key == 'swap_timing':
                protocol.swap_timing(value)
            else:
                protocol.timing(value)
        elif key == 'switching':
            mode, duration = parse_switching(raw)
            protocol.switching(mode, duration)
        elif key == 'ramp_slices':
            protocol.switching(protocol['switching'],
                               protocol['ramp_duration'],
                               int(parse_float(raw, key)))
        elif key == 'propagator':
            protocol.propagator(str(raw).strip().lower())
        elif key == 'dt':
            protocol.step_size(parse_float(raw, key))
        elif key == 'steps':
            protocol.resolution(int(parse_float(raw, key)))
        elif key in ('range', 'omega_q_range'):
            self['omega_q_range'] = parse_range(raw, key)
        elif key == 'grid':
            self['grid'] = parse_range(raw, key)
        elif key == 'jobs':
            self['jobs'] = int(parse_float(raw, key))
            if self['jobs'] < 1:
                raise InvalidParameter(key, raw, 'must be >= 1')
        elif key == 'out':
            self['out'] = str(raw)
        elif key == 'pair':
            self['pair'] = tuple(item.strip() for item in str(raw).split(','))
        elif key == 'vary':
            self['vary'] = str(raw).strip()
            VARY.check(self['vary'])
        elif key == 'workflow':
            if str(raw).strip() != self['workflow']:
                raise InvalidParameter(key, raw, 'the workflow is fixed when '
                                                 'the configuration is built')
        else:
            raise InvalidParameter(key, raw, 'unknown option')
        return self

    def update_from(self, options):
        """Apply several raw options in order"""
        for key, raw in options.items():
            self.set_option(key, raw)
        return self

    def __repr__(self):
        return '<RunConfig.command={command}.workflow={workflow}>'.format(
            **self
        )
