import math

import pytest

from magnonqed.hilbert import Truncation
from magnonqed.parameters import SystemParameter


@pytest.fixture
def bell_params():
    """Bell preset at the default truncation, qubit on the bare resonance"""
    return SystemParameter.default('bell')


@pytest.fixture
def ghz_params():
    """GHZ preset at the default truncation, qubit on the bare resonance"""
    return SystemParameter.default('ghz')


@pytest.fixture
def small_params():
    """Bell frequencies at the smallest truncation"""
    return SystemParameter.default('bell', Truncation(2, 2))


@pytest.fixture
def free_params():
    """Non-degenerate free Hamiltonian with weak couplings"""
    return SystemParameter() \
        .frequencies(omega_a=1.0, omega_m=1.7, omega_q=3.37) \
        .couplings(g=0.01, G=0.01) \
        .mixing_angle(math.pi / 4) \
        .truncation(3, 3)
