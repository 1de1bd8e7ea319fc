"""
Exceptions raised by the library. ``ConfigError`` and its children describe
a bad request from the user (exit code 2 on the command line), while
``NumericalError`` and its children describe a computation which could not
be carried out reliably (exit code 3).
"""

from .utils.misc import dict_to_tsv


class MagnonQEDError(Exception):
    """Base class of all the errors raised by ``magnonqed``"""
    pass


class ConfigError(MagnonQEDError):
    """Error raised when a configuration can not be used"""
    pass


class InvalidParameter(ConfigError, ValueError):
    """Error raised if a parameter has a forbidden value.

    Args:
        name (str): name of the parameter
        value (object): value given by the user
        reason (str): constraint which is not respected
    """
    def __init__(self, name, value, reason):
        super().__init__(name, value, reason)
        self.name = name
        self.value = value
        self.reason = reason

    def __str__(self):
        return "Invalid value {!r} for '{}': {}.".format(
            self.value, self.name, self.reason
        )


class TruncationError(InvalidParameter):
    """Error raised if a truncation or a bare label is not usable"""
    pass


class ResonancePole(InvalidParameter):
    """Error raised when a closed form is evaluated on one of its poles"""
    def __str__(self):
        return "The closed form '{}' has a pole here ({}).".format(
            self.name, self.reason
        )


class UnknownOption(ConfigError):
    """Error raised if an option is not available for a constant"""
    def __init__(self, option, constant):
        super().__init__(option, constant)
        self.option = option
        self.constant = constant

    def __str__(self):
        return "{!r} is an unknown option for the '{}' parameter".format(
            self.option, self.constant
        )


class NumericalError(MagnonQEDError):
    """Base class of the failures of a numerical routine"""
    pass


class NonHermitianError(NumericalError):
    """Error raised if an operator expected to be Hermitian is not"""
    def __init__(self, residual):
        super().__init__(residual)
        self.residual = residual

    def __str__(self):
        return ("The operator is not Hermitian "
                "(max |M - M^dagger| = {:.3e}).").format(self.residual)


class DegenerateDenominatorError(NumericalError):
    """Error raised if a perturbative denominator falls below the floor.

    Args:
        initial (BareLabel): state whose energy is the reference
        intermediate (BareLabel): state nearly degenerate with ``initial``
        gap (float): energy difference between the two states
        floor (float): smallest accepted denominator
    """
    def __init__(self, initial, intermediate, gap, floor):
        super().__init__(initial, intermediate, gap, floor)
        self.initial = initial
        self.intermediate = intermediate
        self.gap = gap
        self.floor = floor

    def __str__(self):
        data = {
            'Initial state': self.initial,
            'Intermediate state': self.intermediate,
            'Energy gap': '{:.3e}'.format(self.gap),
            'Floor': '{:.3e}'.format(self.floor),
        }
        return '{}\n{}'.format(
            'Near-degenerate denominator in the perturbative sum.',
            dict_to_tsv(data)
        )


class LowerOrderConnectionError(NumericalError):
    """Error raised if two states are connected at an order lower than the
    one requested."""
    def __init__(self, initial, final, order):
        super().__init__(initial, final, order)
        self.initial = initial
        self.final = final
        self.order = order

    def __str__(self):
        return ("{} and {} are already connected at order {}; the requested "
                "rule does not give the leading coupling.").format(
                    self.initial, self.final, self.order
                )


class NoCrossingInBracket(NumericalError):
    """Error raised if no gap minimum lies strictly inside the bracket"""
    def __init__(self, pair, bracket):
        super().__init__(pair, bracket)
        self.pair = pair
        self.bracket = bracket

    def __str__(self):
        return "No avoided crossing of {} / {} inside [{}, {}].".format(
            self.pair[0], self.pair[1], self.bracket[0], self.bracket[1]
        )


class AmbiguousBranchTracking(NumericalError):
    """Error raised if a tracked bare state has no clear dressed partner"""
    def __init__(self, label, overlap, omega_q):
        super().__init__(label, overlap, omega_q)
        self.label = label
        self.overlap = overlap
        self.omega_q = omega_q

    def __str__(self):
        data = {
            'Label': self.label,
            'Best overlap': '{:.4f}'.format(self.overlap),
            'omega_q': '{:.6f}'.format(self.omega_q),
        }
        return '{}\n{}'.format('Branch tracking is ambiguous.',
                               dict_to_tsv(data))


class DegenerateSpectrumError(NumericalError):
    """Error raised if the energy ordering of the spectrum is ill-defined"""
    def __init__(self, index, gap):
        super().__init__(index, gap)
        self.index = index
        self.gap = gap

    def __str__(self):
        return ("Eigenvalues {} and {} are degenerate (gap {:.3e}); the "
                "dressed operators are not defined.").format(
                    self.index, self.index + 1, self.gap
                )


class PositivityViolation(NumericalError):
    """Error raised if the density matrix loses positivity"""
    def __init__(self, min_eigenvalue, time, dt):
        super().__init__(min_eigenvalue, time, dt)
        self.min_eigenvalue = min_eigenvalue
        self.time = time
        self.dt = dt

    def __str__(self):
        data = {
            'Smallest eigenvalue': '{:.3e}'.format(self.min_eigenvalue),
            'Time': '{:.6g}'.format(self.time),
            'Step': '{:.3e}'.format(self.dt),
        }
        return '{}\n{}'.format('The density matrix is no longer positive.',
                               dict_to_tsv(data))


class IntegrationError(NumericalError):
    """Error raised if the trace drift stays above tolerance after all the
    step halvings."""
    def __init__(self, drift, dt):
        super().__init__(drift, dt)
        self.drift = drift
        self.dt = dt

    def __str__(self):
        return "Trace drift {:.3e} persists down to dt = {:.3e}.".format(
            self.drift, self.dt
        )


class UnreachableTarget(NumericalError):
    """Error raised if a protocol can not reach its target state"""
    def __init__(self, kind, reason):
        super().__init__(kind, reason)
        self.kind = kind
        self.reason = reason

    def __str__(self):
        return "The '{}' protocol can not reach its target: {}.".format(
            self.kind, self.reason
        )
