"""
Truncated Hilbert space of the hybrid system: a qubit (states ``g`` and
``e``) tensored with a photon mode and a magnon mode, each kept up to a
highest Fock level.

The flat index of the bare state ``|q, n_a, n_m>`` is qubit-major, then
photon, then magnon::

    index = q * (n_a_max + 1) * (n_m_max + 1) + n_a * (n_m_max + 1) + n_m

with ``q = 0`` for ``g`` and ``q = 1`` for ``e``. Every object built here
stores a read-only array, so the values can be shared between concurrent
tasks.
"""

import re
from collections import namedtuple
from functools import lru_cache

import numpy as np

from .constants import OPERATOR, QUBIT
from .exceptions import InvalidParameter, NonHermitianError, TruncationError
from .utils.checker import check_integer, hermitian_residual


NORM_TOLERANCE = 1e-10
HERMITIAN_TOLERANCE = 1e-12
DENSITY_HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-8
POSITIVITY_TOLERANCE = 1e-8

_QUBIT_ORDER = (QUBIT.G, QUBIT.E)
_LABEL_PATTERN = re.compile(r'^\s*\|?\s*(?P<qubit>[ge])\s*,?\s*'
                            r'(?P<n_a>\d+)\s*,\s*(?P<n_m>\d+)\s*>?\s*$')
_SHORT_PATTERN = re.compile(r'^\s*\|?(?P<qubit>[ge])(?P<n_a>\d)(?P<n_m>\d)>?\s*$')


def _readonly(array):
    array = np.array(array, dtype=np.complex128)
    array.setflags(write=False)
    return array


class Truncation(namedtuple('Truncation', 'n_a_max n_m_max')):
    """Highest photon and magnon Fock levels kept in the simulation.

    Args:
        n_a_max (int): highest photon level (>= 2)
        n_m_max (int): highest magnon level (>= 2)
    Raises:
        TruncationError: if one of the levels is below 2
    """
    __slots__ = ()

    def __new__(cls, n_a_max=5, n_m_max=5):
        n_a_max = check_integer(n_a_max, 'n_a_max')
        n_m_max = check_integer(n_m_max, 'n_m_max')
        for name, value in (('n_a_max', n_a_max), ('n_m_max', n_m_max)):
            if value < 2:
                raise TruncationError(
                    name, value, 'must be >= 2 (|g20> and |g11> are needed)'
                )
        return super().__new__(cls, n_a_max, n_m_max)

    @classmethod
    def coerce(cls, trunc):
        """Build a Truncation from a Truncation, a pair or a single level"""
        if isinstance(trunc, cls):
            return trunc
        if isinstance(trunc, (tuple, list)):
            return cls(*trunc)
        return cls(trunc, trunc)

    @property
    def dim(self):
        """Total dimension ``2 (n_a_max + 1) (n_m_max + 1)``"""
        return 2 * (self.n_a_max + 1) * (self.n_m_max + 1)

    def index(self, label):
        """Flat index of a bare label"""
        label = BareLabel.coerce(label)
        if label.n_a > self.n_a_max or label.n_m > self.n_m_max:
            raise TruncationError(
                'label', str(label),
                'outside the truncation ({}, {})'.format(*self)
            )
        qubit = _QUBIT_ORDER.index(label.qubit)
        return (qubit * (self.n_a_max + 1) + label.n_a) * (self.n_m_max + 1) \
            + label.n_m

    def label(self, index):
        """Bare label of a flat index"""
        index = check_integer(index, 'index', minimum=0)
        if index >= self.dim:
            raise TruncationError('index', index, 'must be < {}'.format(self.dim))
        rest, n_m = divmod(index, self.n_m_max + 1)
        qubit, n_a = divmod(rest, self.n_a_max + 1)
        return BareLabel(_QUBIT_ORDER[qubit], n_a, n_m)

    def __repr__(self):
        return '<Truncation.n_a_max={}.n_m_max={}.dim={}>'.format(
            self.n_a_max, self.n_m_max, self.dim
        )


class BareLabel(namedtuple('BareLabel', 'qubit n_a n_m')):
    """Bare state ``|q, n_a, n_m>`` of the free Hamiltonian.

    Example:

        >>> BareLabel.parse('e11')
        BareLabel(qubit='e', n_a=1, n_m=1)
        >>> str(BareLabel('g', 2, 0))
        'g20'
    """
    __slots__ = ()

    def __new__(cls, qubit, n_a, n_m):
        QUBIT.check(qubit)
        n_a = check_integer(n_a, 'n_a', minimum=0)
        n_m = check_integer(n_m, 'n_m', minimum=0)
        return super().__new__(cls, qubit, n_a, n_m)

    @classmethod
    def parse(cls, text):
        """Parse ``'e00'``, ``'|g11>'`` or ``'g,12,3'``"""
        match = _SHORT_PATTERN.match(text) or _LABEL_PATTERN.match(text)
        if not match:
            raise InvalidParameter('label', text, "expected e.g. 'e00'")
        return cls(match.group('qubit'), int(match.group('n_a')),
                   int(match.group('n_m')))

    @classmethod
    def coerce(cls, label):
        """Accept a BareLabel, a string or a ``(qubit, n_a, n_m)`` tuple"""
        if isinstance(label, cls):
            return label
        if isinstance(label, str):
            return cls.parse(label)
        return cls(*label)

    def __str__(self):
        if self.n_a < 10 and self.n_m < 10:
            return '{}{}{}'.format(self.qubit, self.n_a, self.n_m)
        return '{},{},{}'.format(self.qubit, self.n_a, self.n_m)


class OperatorMatrix:
    """Dense operator acting on the truncated space.

    Args:
        entries (array): square complex matrix
        hermitian (bool): whether the operator is flagged as Hermitian. A
            flagged operator is checked entrywise.
        trunc (Truncation, optional): truncation the operator acts on
    Raises:
        NonHermitianError: if flagged Hermitian but ``max |M - M^dagger|``
            is not below 1e-12
    """
    def __init__(self, entries, hermitian=False, trunc=None):
        entries = _readonly(entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidParameter('entries', entries.shape,
                                   'must be a square matrix')
        if hermitian:
            residual = hermitian_residual(entries)
            if residual >= HERMITIAN_TOLERANCE:
                raise NonHermitianError(residual)
        self.entries = entries
        self.hermitian = bool(hermitian)
        self.trunc = trunc

    @property
    def dim(self):
        """Dimension of the space"""
        return self.entries.shape[0]

    def dag(self):
        """Conjugate transpose"""
        return OperatorMatrix(self.entries.conj().T, hermitian=self.hermitian,
                              trunc=self.trunc)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __add__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries + other.entries,
                                  hermitian=self.hermitian and other.hermitian,
                                  trunc=self.trunc or other.trunc)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries - other.entries,
                                  hermitian=self.hermitian and other.hermitian,
                                  trunc=self.trunc or other.trunc)
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, OperatorMatrix):
            return NotImplemented
        hermitian = self.hermitian and np.isreal(scalar)
        return OperatorMatrix(scalar * self.entries, hermitian=hermitian,
                              trunc=self.trunc)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries,
                                  trunc=self.trunc or other.trunc)
        if isinstance(other, StateVector):
            return self.entries @ other.amplitudes
        return self.entries @ np.asarray(other)

    def __repr__(self):
        return '<OperatorMatrix.dim={}.hermitian={}>'.format(
            self.dim, self.hermitian
        )


class StateVector:
    """Pure state on the truncated space.

    Args:
        amplitudes (array): complex vector of norm 1 (within 1e-10)
        normalize (bool, optional): normalize the vector before the check.
            Default to False.
    """
    def __init__(self, amplitudes, normalize=False):
        amplitudes = np.array(amplitudes, dtype=np.complex128).ravel()
        norm = np.linalg.norm(amplitudes)
        if normalize:
            if norm == 0:
                raise InvalidParameter('amplitudes', 0.0, 'zero vector')
            amplitudes = amplitudes / norm
            norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) >= NORM_TOLERANCE:
            raise InvalidParameter('amplitudes', norm, 'norm must be 1')
        amplitudes.setflags(write=False)
        self.amplitudes = amplitudes

    @property
    def dim(self):
        """Dimension of the space"""
        return self.amplitudes.shape[0]

    def norm(self):
        """Euclidean norm of the amplitudes"""
        return float(np.linalg.norm(self.amplitudes))

    def density_matrix(self):
        """Projector ``|psi><psi|`` as a DensityMatrix"""
        return DensityMatrix(np.outer(self.amplitudes,
                                      self.amplitudes.conj()))

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None \
            else self.amplitudes.astype(dtype)

    def __repr__(self):
        return '<StateVector.dim={}>'.format(self.dim)


class DensityMatrix:
    """Mixed state on the truncated space.

    Args:
        entries (array): Hermitian matrix (1e-10) of unit trace (1e-8)
        validate (bool, optional): also check that the smallest eigenvalue
            is above -1e-8. Default to True.
    """
    def __init__(self, entries, validate=True):
        entries = _readonly(entries)
        if validate:
            residual = hermitian_residual(entries)
            if residual >= DENSITY_HERMITIAN_TOLERANCE:
                raise NonHermitianError(residual)
            trace = np.trace(entries).real
            if abs(trace - 1) >= TRACE_TOLERANCE:
                raise InvalidParameter('trace', trace, 'must be 1')
            smallest = self.min_eigenvalue(entries)
            if smallest <= -POSITIVITY_TOLERANCE:
                raise InvalidParameter('eigenvalue', smallest,
                                       'density matrix must be positive')
        self.entries = entries

    @staticmethod
    def min_eigenvalue(entries):
        """Smallest eigenvalue of the Hermitian part of ``entries``"""
        entries = np.asarray(entries)
        return float(np.linalg.eigvalsh(0.5 * (entries + entries.conj().T))[0])

    @classmethod
    def maximally_mixed(cls, dim):
        """Identity divided by the dimension"""
        return cls(np.eye(dim) / dim)

    @property
    def dim(self):
        """Dimension of the space"""
        return self.entries.shape[0]

    def trace(self):
        """Real part of the trace"""
        return float(np.trace(self.entries).real)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self):
        return '<DensityMatrix.dim={}>'.format(self.dim)


def build_basis(trunc):
    """Ordered list of the bare labels of a truncation.

    Args:
        trunc (Truncation): truncation of the space
    Returns:
        list[BareLabel]: labels sorted by flat index
    """
    trunc = Truncation.coerce(trunc)
    return [
        BareLabel(qubit, n_a, n_m)
        for qubit in _QUBIT_ORDER
        for n_a in range(trunc.n_a_max + 1)
        for n_m in range(trunc.n_m_max + 1)
    ]


def _annihilation(levels):
    return np.diag(np.sqrt(np.arange(1, levels)), k=1)


_QUBIT_MATRICES = {
    OPERATOR.SIGMA_MINUS: np.array([[0, 1], [0, 0]]),
    OPERATOR.SIGMA_PLUS: np.array([[0, 0], [1, 0]]),
    OPERATOR.SIGMA_X: np.array([[0, 1], [1, 0]]),
    OPERATOR.SIGMA_Z: np.array([[-1, 0], [0, 1]]),
}


@lru_cache(maxsize=128)
def _embedded(kind, n_a_max, n_m_max):
    qubit, photon, magnon = np.eye(2), np.eye(n_a_max + 1), np.eye(n_m_max + 1)
    if kind in (OPERATOR.A, OPERATOR.A_DAG):
        photon = _annihilation(n_a_max + 1)
        if kind == OPERATOR.A_DAG: photon = photon.T
    elif kind in (OPERATOR.M, OPERATOR.M_DAG):
        magnon = _annihilation(n_m_max + 1)
        if kind == OPERATOR.M_DAG: magnon = magnon.T
    elif kind in _QUBIT_MATRICES:
        qubit = _QUBIT_MATRICES[kind]
    return _readonly(np.kron(qubit, np.kron(photon, magnon)))


def embed_operator(kind, trunc):
    """Single-subsystem operator tensored with identities elsewhere.

    Ladder operators carry ``sqrt(n)`` matrix elements and annihilate the
    state above the cutoff.

    Args:
        kind (str): one of ``OPERATOR`` values
        trunc (Truncation): truncation of the space
    Returns:
        OperatorMatrix:
    """
    OPERATOR.check(kind)
    trunc = Truncation.coerce(trunc)
    hermitian = kind in (OPERATOR.SIGMA_X, OPERATOR.SIGMA_Z, OPERATOR.IDENTITY)
    return OperatorMatrix(_embedded(kind, *trunc), hermitian=hermitian,
                          trunc=trunc)


def bare_projector(label, trunc):
    """Unit vector of a bare label.

    Args:
        label (BareLabel or str): bare state, e.g. ``'e11'``
        trunc (Truncation): truncation of the space
    Raises:
        TruncationError: if the label lies outside the truncation
    Returns:
        StateVector:
    """
    trunc = Truncation.coerce(trunc)
    amplitudes = np.zeros(trunc.dim, dtype=np.complex128)
    amplitudes[trunc.index(label)] = 1.0
    return StateVector(amplitudes)


def superpose(components, trunc):
    """Normalized superposition of bare states.

    Args:
        components (dict): amplitude indexed by bare label
        trunc (Truncation): truncation of the space
    Returns:
        StateVector:
    """
    trunc = Truncation.coerce(trunc)
    amplitudes = np.zeros(trunc.dim, dtype=np.complex128)
    for label, amplitude in components.items():
        amplitudes[trunc.index(label)] += amplitude
    return StateVector(amplitudes, normalize=True)
