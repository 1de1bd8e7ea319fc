"""
The library uses several constants to name operators, workflows or
options of the protocols. In order to avoid silent typos, each family of
constants is an object whose attributes are the available values. These
constants are used in ``magnonqed.parameters`` in order to check if the
given options are correct.
"""

from .exceptions import UnknownOption
from .utils.misc import dict_to_namedtuple, load_data


__all__ = [
    'COMMAND',
    'GATE',
    'METHOD',
    'OPERATOR',
    'PRESET',
    'PROPAGATOR',
    'PROTOCOL',
    'QUBIT',
    'SWITCHING',
    'TIMING',
    'VARY',
    'WORKFLOW',
]


class CheckerMixin:
    """Mixin in order to check if the options are correct"""
    @classmethod
    def values(cls):
        """Returns the list of the available options"""
        return [
            value for key, value in vars(cls).items()
            if not (key.startswith('__') and key.endswith('__'))
            and not callable(value)
            and not isinstance(value, (classmethod, staticmethod))
        ]

    @classmethod
    def check(cls, elements):
        """Check that the given values are available options.

        Args:
            elements (list or string): if ``elements`` is a string, check if it
                is an available option. If ``elements`` is a list or tuple,
                call the function on all item in the list.
        Raises:
            UnknownOption: raised if one element isn't right.
        Returns:
            boolean: True if all is ok
        """
        if isinstance(elements, (list, tuple)):
            return all([cls.check(element) for element in elements])
        if elements not in cls.values():
            raise UnknownOption(elements, cls.__name__)
        return True


class QUBIT(CheckerMixin):
    """States of the qubit, in the order used by the flat index"""
    G = 'g'
    E = 'e'


class OPERATOR(CheckerMixin):
    """Elementary operators which can be embedded in the full space"""
    A = 'a'
    A_DAG = 'a_dag'
    M = 'm'
    M_DAG = 'm_dag'
    SIGMA_MINUS = 'sigma_minus'
    SIGMA_PLUS = 'sigma_plus'
    SIGMA_X = 'sigma_x'
    SIGMA_Z = 'sigma_z'
    IDENTITY = 'identity'


class WORKFLOW(CheckerMixin):
    """Families of presets, one per entangled target"""
    BELL = 'bell'
    GHZ = 'ghz'
    QUBIT_MAGNON = 'qubit-magnon'


class PROTOCOL(CheckerMixin):
    """Generation sequences"""
    BELL_PHOTON_MAGNON = 'bell_photon_magnon'
    GHZ = 'ghz'
    BELL_QUBIT_MAGNON = 'bell_qubit_magnon'


class TIMING(CheckerMixin):
    """Origin of the resonance shifts and effective couplings used to
    schedule a protocol"""
    CLOSED_FORM = 'closed_form'
    NUMERIC_CROSSING = 'numeric_crossing'


class SWITCHING(CheckerMixin):
    """How the qubit frequency is moved between two steps"""
    SUDDEN = 'sudden'
    LINEAR_RAMP = 'linear_ramp'


class PROPAGATOR(CheckerMixin):
    """Propagator used for the steps of a protocol"""
    FULL = 'full'
    EFFECTIVE = 'effective'


class METHOD(CheckerMixin):
    """Origin of the numbers of a perturbation report"""
    CLOSED_FORM = 'closed_form'
    GENERIC_SUM = 'generic_sum'
    PATH_ENUMERATION = 'path_enumeration'


class GATE(CheckerMixin):
    """Single-qubit gates preparing the superposition of step 1"""
    BELL = 'bell_gate'
    GHZ = 'ghz_gate'


class VARY(CheckerMixin):
    """Coupling varied along a validity sweep"""
    PHOTON_MAGNON = 'g'
    PHOTON_QUBIT = 'G'


class COMMAND(CheckerMixin):
    """Subcommands of the command line"""
    SPECTRUM = 'spectrum'
    RABI = 'rabi'
    SWEEP = 'sweep'
    FIDELITY_DYNAMICS = 'fidelity-dynamics'
    VALIDITY = 'validity'
    PROTOCOL = 'protocol'


def _set_preset_data(cls):
    """Dynamically load the preset data in ``PRESET`` class

    Args:
        class in which the data must be injected
    Returns:
        None:
    """
    presets = load_data('assets/presets.json')
    for workflow in WORKFLOW.values():
        key = workflow.replace('-', '_')
        setattr(cls, key.upper(), dict_to_namedtuple(key, presets[key]))
    cls.RABI = [tuple(item) for item in presets['rabi']]
    cls.KAPPAS = list(presets['kappas'])
    cls.SWEEP = dict_to_namedtuple('sweep', presets['sweep'])
    cls.VALIDITY = dict_to_namedtuple('validity', presets['validity'])
    return None


class PRESET:
    """Default parameters of each workflow. Frequencies are expressed in
    units of the workflow's reference frequency; angles are fractions of pi.

    Example:

        >>> PRESET.BELL.omega_m
        1.7
        >>> PRESET.of('qubit-magnon').pair
        ['g10', 'e01']
    """
    @classmethod
    def of(cls, workflow):
        """Preset of a workflow"""
        WORKFLOW.check(workflow)
        return getattr(cls, workflow.replace('-', '_').upper())


_set_preset_data(PRESET)
