"""A field in a parameter is a (key , value) pair of the dictionary handed
to the numerical routines. For every field, the value is checked in order
to be sure that the parameter is built properly. This way, an invalid
model fails before any diagonalization."""

import math

from ..constants import PROPAGATOR, SWITCHING, TIMING
from ..hilbert import Truncation
from ..utils.checker import (check_integer, check_positive, check_range,
                             check_real)


class FrequencyMixin:
    """Field used to build the bare frequencies of the model"""
    def frequencies(self, omega_a=None, omega_m=None, omega_q=None):
        """Set the angular frequencies of the photon, the magnon and the
        qubit. Omitted values are left untouched.

        Args:
            omega_a (float): photon frequency (> 0)
            omega_m (float): magnon frequency (> 0)
            omega_q (float): qubit transition frequency (> 0)
        """
        if omega_a is not None:
            self['omega_a'] = check_positive(omega_a, 'omega_a')
        if omega_m is not None:
            self['omega_m'] = check_positive(omega_m, 'omega_m')
        if omega_q is not None:
            self['omega_q'] = check_positive(omega_q, 'omega_q')
        return self


class CouplingMixin:
    """Field used to build the coupling strengths"""
    def couplings(self, g=None, G=None):
        """Photon-magnon coupling ``g`` and photon-qubit coupling ``G``.

        Args:
            g (float): photon-magnon coupling (>= 0)
            G (float): photon-qubit coupling (>= 0)
        """
        if g is not None: self['g'] = check_positive(g, 'g', strict=False)
        if G is not None: self['G'] = check_positive(G, 'G', strict=False)
        return self


class AngleMixin:
    """Field used to build the mixing angle"""
    def mixing_angle(self, theta):
        """Mixing angle between the transverse and the longitudinal
        qubit couplings, in radians, in [0, pi/2]."""
        self['theta'] = check_range(theta, 'theta', 0.0, math.pi / 2)
        return self


class TruncationMixin:
    """Field used to build the truncation of the bosonic modes"""
    def truncation(self, n_a_max, n_m_max=None):
        """Highest photon and magnon Fock levels (both >= 2)."""
        if n_m_max is None: n_m_max = n_a_max
        self['trunc'] = Truncation(n_a_max, n_m_max)
        return self


class RateMixin:
    """Field used to build the dissipation rates"""
    def rates(self, kappa_a=None, kappa_m=None, gamma=None):
        """Dissipation rates of the resonator, the magnon and the qubit.

        Args:
            kappa_a (float): resonator rate (>= 0)
            kappa_m (float): magnon rate (>= 0)
            gamma (float): qubit rate (>= 0)
        """
        for key, value in (('kappa_a', kappa_a), ('kappa_m', kappa_m),
                           ('gamma', gamma)):
            if value is not None:
                self[key] = check_positive(value, key, strict=False)
        return self

    def uniform(self, kappa):
        """Same rate for the three channels"""
        return self.rates(kappa, kappa, kappa)


class PhaseMixin:
    """Field used to build the phase of the target state"""
    def phase(self, phi):
        """Relative phase of the target, folded into [0, 2 pi)."""
        self['phi'] = check_real(phi, 'phi') % (2 * math.pi)
        return self


class ScheduleMixin:
    """Fields used to build the schedule of a protocol"""
    def timing(self, timing_source):
        """Origin of the resonance shifts and couplings of the schedule.
        Use the ``TIMING`` values."""
        TIMING.check(timing_source)
        self['timing_source'] = timing_source
        return self

    def swap_timing(self, timing_source):
        """Origin of the first-order swap time of the qubit-magnon step 2.
        ``numeric_crossing`` uses the half gap of the ``e00``/``g10``
        crossing, ``closed_form`` uses ``G cos(theta)``."""
        TIMING.check(timing_source)
        self['swap_timing'] = timing_source
        return self

    def switching(self, mode, duration=None, slices=None):
        """How the qubit frequency reaches the value of a step.

        Args:
            mode (str): ``SWITCHING`` value
            duration (float, optional): ramp duration (linear ramp only)
            slices (int, optional): number of constant slices of the ramp
        """
        SWITCHING.check(mode)
        self['switching'] = mode
        if mode == SWITCHING.LINEAR_RAMP:
            self['ramp_duration'] = check_positive(duration, 'ramp_duration')
        if slices is not None:
            self['ramp_slices'] = check_integer(slices, 'ramp_slices', 1)
        return self

    def propagator(self, propagator):
        """``full`` Hamiltonian evolution or ``effective`` two-level
        rotations."""
        PROPAGATOR.check(propagator)
        self['propagator'] = propagator
        return self

    def step_size(self, dt):
        """Largest step of the Lindblad integrator"""
        self['dt'] = check_positive(dt, 'dt')
        return self

    def resolution(self, steps):
        """Number of recorded time points per stage (>= 2)"""
        self['steps'] = check_integer(steps, 'steps', minimum=2)
        return self
