"""
Used to control the values given by the user
"""

import numbers

import numpy as np

from ..exceptions import InvalidParameter


def check_real(value, name):
    """Check that a value is a finite real number and return it as float"""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidParameter(name, value, 'must be a real number')
    value = float(value)
    if not np.isfinite(value):
        raise InvalidParameter(name, value, 'must be finite')
    return value


def check_positive(value, name, strict=True):
    """Check that a value is a positive (or non negative) real number"""
    value = check_real(value, name)
    if strict and value <= 0:
        raise InvalidParameter(name, value, 'must be > 0')
    if not strict and value < 0:
        raise InvalidParameter(name, value, 'must be >= 0')
    return value


def check_range(value, name, low, high):
    """Check that ``low <= value <= high``"""
    value = check_real(value, name)
    if not low <= value <= high:
        raise InvalidParameter(
            name, value, 'must lie in [{}, {}]'.format(low, high)
        )
    return value


def check_integer(value, name, minimum=None):
    """Check that a value is an integer, optionally bounded below"""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidParameter(name, value, 'must be an integer')
    if minimum is not None and value < minimum:
        raise InvalidParameter(name, value, 'must be >= {}'.format(minimum))
    return int(value)


def hermitian_residual(matrix):
    """Largest entrywise modulus of ``M - M^dagger``"""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size \
        else 0.0