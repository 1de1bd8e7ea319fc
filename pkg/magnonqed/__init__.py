"""
`magnonqed-py` : simulations of a hybrid qubit-photon-magnon cavity
^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^^

:Version: 1.0.0
:Licence: Apache-2.0

This package models a superconducting qubit and a ferromagnetic magnon
mode both coupled to one microwave resonator, with the full Rabi-type
interaction (counter-rotating terms included). It locates the effective
resonances opened by those terms, computes the corresponding shifts and
couplings perturbatively and numerically, and runs the gate-and-swap
sequences that prepare photon-magnon Bell states, qubit-photon-magnon GHZ
states and qubit-magnon Bell states, with or without dissipation.


About the objects
^^^^^^^^^^^^^^^^^
The ``magnonqed-py`` module uses mainly three kinds of objects:

* parameter objects, based on ``dict`` and built with chainable setters
  (``SystemParameter``, ``DecoherenceParameter``, ``ProtocolParameter``).
  Every setter checks its value, so an invalid model fails before any
  diagonalization.
* result objects which inherit from ``ResultModel`` (``CrossingReport``,
  ``PerturbationReport``, ``RabiReport``, ``ProtocolResult``). Their
  fields are attributes and they can be serialized with ``json()``.
* tabular objects based on :class:`list` (``Table``, ``SpectrumScan``,
  ``ValidityTable``), built to be easily parsed with ``pandas`` and
  exported as comma-separated values.

Example:

    >>> from magnonqed import SystemParameter, find_avoided_crossing
    >>> params = SystemParameter.default('bell')
    >>> crossing = find_avoided_crossing(params, ('e00', 'g11'))
    >>> crossing.g_eff_numeric
"""

from magnonqed.dynamics import (evolve_closed, evolve_effective_two_level,
                                evolve_lindblad, rabi_analysis)
from magnonqed.hamiltonian import build_full, build_H0, build_V
from magnonqed.hilbert import BareLabel, Truncation
from magnonqed.parameters import (DecoherenceParameter, ProtocolParameter,
                                  SystemParameter)
from magnonqed.perturbation import (closed_form_bell, closed_form_ghz,
                                    closed_form_qubit_magnon,
                                    closed_form_two_photon)
from magnonqed.protocols import run_protocol
from magnonqed.spectral import find_avoided_crossing, scan_spectrum


__title__ = 'magnonqed'
__version__ = '1.0.0'
__licence__ = 'Apache-2.0'
