"""
Hamiltonian of the hybrid system (hbar = 1)::

    H0 = omega_a a^dag a + omega_m m^dag m + omega_q sigma_+ sigma_-
    V  = g (a + a^dag)(m + m^dag)
         + G (a + a^dag)(sigma_x cos(theta) + sigma_z sin(theta))

No rotating-wave approximation is applied: the counter-rotating terms are
the resource of every effective transition used by the protocols.
"""

import logging

import numpy as np

from .constants import OPERATOR, QUBIT
from .hilbert import OperatorMatrix, Truncation, build_basis, embed_operator

logger = logging.getLogger(__name__)


def _operator(kind, trunc):
    return embed_operator(kind, trunc).entries


def build_H0(params):
    """Free Hamiltonian, diagonal in the bare basis.

    Args:
        params (SystemParameter): model parameters
    Returns:
        OperatorMatrix: diagonal entry at ``(q, n_a, n_m)`` equals
        ``omega_a n_a + omega_m n_m + omega_q [q = e]``
    """
    diagonal = np.array([
        params['omega_a'] * label.n_a + params['omega_m'] * label.n_m
        + params['omega_q'] * (label.qubit == QUBIT.E)
        for label in build_basis(params['trunc'])
    ], dtype=float)
    return OperatorMatrix(np.diag(diagonal), hermitian=True,
                          trunc=params['trunc'])


def build_V(params):
    """Interaction part of the Hamiltonian, counter-rotating terms
    included.

    Args:
        params (SystemParameter): model parameters
    Returns:
        OperatorMatrix: Hermitian interaction
    """
    trunc = params['trunc']
    photon = _operator(OPERATOR.A, trunc) + _operator(OPERATOR.A_DAG, trunc)
    magnon = _operator(OPERATOR.M, trunc) + _operator(OPERATOR.M_DAG, trunc)
    qubit = np.cos(params['theta']) * _operator(OPERATOR.SIGMA_X, trunc) \
        + np.sin(params['theta']) * _operator(OPERATOR.SIGMA_Z, trunc)
    interaction = params['g'] * photon @ magnon + params['G'] * photon @ qubit
    return OperatorMatrix(interaction, hermitian=True, trunc=trunc)


def build_full(params):
    """Full Hamiltonian ``H = H0 + V``"""
    if not params.is_dispersive():
        logger.debug('Building H outside the dispersive regime (g=%s, G=%s)',
                     params['g'], params['G'])
    return build_H0(params) + build_V(params)


def parity_operator(trunc):
    """Total excitation parity ``exp(i pi (a^dag a + m^dag m + sigma_+
    sigma_-))``, diagonal in the bare basis. It commutes with H when
    theta = 0."""
    trunc = Truncation.coerce(trunc)
    signs = [(-1) ** (label.n_a + label.n_m + (label.qubit == QUBIT.E))
             for label in build_basis(trunc)]
    return OperatorMatrix(np.diag(np.array(signs, dtype=float)),
                          hermitian=True, trunc=trunc)
