"""
Diagonalization of the Hamiltonian, bare-state bookkeeping of the dressed
levels, and location of avoided level crossings.

A bare label is followed through a scan by assigning it the eigenvector
with which it overlaps most. The assignment of all tracked labels is
solved jointly (``scipy.optimize.linear_sum_assignment``) so two labels
never share a branch, and the previous grid point's assignment wins ties.
"""

import logging
from functools import partial

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment, minimize_scalar

from .exceptions import (AmbiguousBranchTracking, NoCrossingInBracket,
                         NonHermitianError, NumericalError)
from .hamiltonian import build_full
from .hilbert import BareLabel, Truncation
from .model import ResultModel, Table
from .utils.checker import hermitian_residual
from .utils.pool import map_grid

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9
OVERLAP_THRESHOLD = 0.25
HYSTERESIS = 1e-9
SCAN_STEPS = 201
BRACKET_HALF_WIDTH = 0.2


class EigenSystem(ResultModel):
    """Ascending eigenpairs of a Hermitian operator.

    Attributes:
        eigenvalues (ndarray): ascending real eigenvalues
        eigenvectors (ndarray): eigenvectors as columns
        overlaps (dict): for each tracked label (as ``str``), the pair
            ``(index, |<label|E_index>|^2)`` of its assigned eigenvector
        residual (float): ``max_n ||H v_n - E_n v_n|| / ||H||``
        unitarity (float): ``max |V^dagger V - 1|``
    """
    def __init__(self, eigenvalues, eigenvectors, overlaps, trunc=None,
                 residual=0.0, unitarity=0.0):
        super().__init__(dict(eigenvalues=eigenvalues,
                              eigenvectors=eigenvectors,
                              overlaps=overlaps, trunc=trunc,
                              residual=residual, unitarity=unitarity))

    @property
    def dim(self):
        """Dimension of the space"""
        return len(self.eigenvalues)

    def branch(self, label):
        """Index of the eigenvector assigned to a tracked label"""
        return self.overlaps[str(BareLabel.coerce(label))][0]

    def energy(self, label):
        """Eigenvalue of the branch assigned to a tracked label"""
        return float(self.eigenvalues[self.branch(label)])

    def vector(self, label):
        """Eigenvector of the branch assigned to a tracked label"""
        return self.eigenvectors[:, self.branch(label)]

    def check(self):
        """Raise ``NumericalError`` if the residual or the unitarity
        invariant is broken."""
        if self.residual >= RESIDUAL_TOLERANCE \
                or self.unitarity >= RESIDUAL_TOLERANCE:
            raise NumericalError(
                'Eigen-decomposition is inaccurate (residual {:.2e}, '
                'unitarity {:.2e}).'.format(self.residual, self.unitarity)
            )
        return None

    def __repr__(self):
        return '<EigenSystem.dim={}.tracked={}>'.format(
            self.dim, len(self.overlaps)
        )


def label_weights(eigenvectors, labels, trunc):
    """Matrix of ``|<label|E_n>|^2`` with one row per label"""
    rows = [trunc.index(label) for label in labels]
    return np.abs(np.asarray(eigenvectors)[rows, :]) ** 2


def assign_branches(weights, previous=None):
    """Assign one distinct eigenvector to each tracked label.

    Args:
        weights (ndarray): ``|<label|E_n>|^2``, labels as rows
        previous (list[int], optional): assignment at the previous grid
            point; it wins ties
    Returns:
        list[int]: eigenvector index per label
    """
    cost = -np.array(weights, dtype=float)
    if previous is not None:
        for row, column in enumerate(previous):
            cost[row, column] -= HYSTERESIS
    rows, columns = linear_sum_assignment(cost)
    assignment = [0] * len(rows)
    for row, column in zip(rows, columns):
        assignment[row] = int(column)
    return assignment


def diagonalize(H, tracked=(), trunc=None, previous=None, validate=True):
    """Full ascending spectrum of a Hermitian operator.

    Args:
        H (OperatorMatrix): Hermitian-flagged operator
        tracked (list[BareLabel], optional): labels whose branch must be
            identified
        trunc (Truncation, optional): default to the operator's truncation
        previous (list[int], optional): previous assignment, for hysteresis
        validate (bool, optional): raise if the residual or the unitarity
            invariant fails. Default to True.
    Raises:
        NonHermitianError: if the operator is not flagged Hermitian
    Returns:
        EigenSystem:
    """
    if not H.hermitian:
        raise NonHermitianError(hermitian_residual(H.entries))
    trunc = Truncation.coerce(trunc or H.trunc) if (trunc or H.trunc) \
        else None
    eigenvalues, eigenvectors = np.linalg.eigh(H.entries)
    scale = max(np.linalg.norm(H.entries, 2), 1e-300)
    residual = np.max(np.linalg.norm(
        H.entries @ eigenvectors - eigenvectors * eigenvalues, axis=0
    )) / scale
    unitarity = np.max(np.abs(
        eigenvectors.conj().T @ eigenvectors - np.eye(len(eigenvalues))
    ))
    labels = [BareLabel.coerce(label) for label in tracked]
    overlaps = dict()
    if labels:
        weights = label_weights(eigenvectors, labels, trunc)
        assignment = assign_branches(weights, previous)
        overlaps = {
            str(label): (index, float(weights[row, index]))
            for row, (label, index) in enumerate(zip(labels, assignment))
        }
    system = EigenSystem(eigenvalues, eigenvectors, overlaps, trunc,
                         float(residual), float(unitarity))
    if validate: system.check()
    return system


def _scan_point(params, labels, omega_q):
    """Eigenvalues and tracked weights at one qubit frequency"""
    H = build_full(params.replace(omega_q=omega_q))
    eigenvalues, eigenvectors = np.linalg.eigh(H.entries)
    return eigenvalues, label_weights(eigenvectors, labels, params['trunc'])


class SpectrumScan(Table):
    """Dressed spectrum as a function of the qubit frequency. Each row holds
    ``omega_q``, the eigenvalues ``E_0 ... E_{dim-1}``, and for each tracked
    label its overlap and branch energy; with two tracked labels, the
    ``gap`` column holds their branch separation.
    """
    def __init__(self, rows=None, metadata=None, labels=()):
        super().__init__(rows, metadata)
        self.labels = [str(label) for label in labels]

    def local_minima(self):
        """Grid indices of the strict local minima of the tracked gap"""
        gaps = self.column('gap')
        return [index for index in range(1, len(gaps) - 1)
                if gaps[index] < gaps[index - 1]
                and gaps[index] <= gaps[index + 1]]


def scan_spectrum(params, omega_q_range, tracked=(), jobs=1):
    """Spectrum of H over a uniform grid of qubit frequencies.

    Grid points are diagonalized independently (possibly in parallel) and
    the branch tracking is then done in grid order.

    Args:
        params (SystemParameter): model parameters (omega_q is scanned)
        omega_q_range (tuple): ``(lo, hi, steps)``
        tracked (list[BareLabel], optional): labels to follow
        jobs (int, optional): number of worker processes
    Returns:
        SpectrumScan:
    """
    low, high, steps = omega_q_range
    if not low < high or steps < 2:
        raise ValueError('omega_q_range needs lo < hi and steps >= 2')
    labels = [BareLabel.coerce(label) for label in tracked]
    grid = np.linspace(low, high, int(steps))
    points = map_grid(partial(_scan_point, params, labels), grid, jobs=jobs)
    scan = SpectrumScan(labels=labels, metadata={
        'dataset': 'dressed spectrum versus qubit frequency',
        'truncation': '{},{}'.format(*params['trunc']),
        'dim': params['trunc'].dim,
    })
    previous = None
    for omega_q, (eigenvalues, weights) in zip(grid, points):
        row = {'omega_q': float(omega_q)}
        row.update(('E_{}'.format(index), float(value))
                   for index, value in enumerate(eigenvalues))
        if labels:
            previous = assign_branches(weights, previous)
            for row_index, (label, branch) in enumerate(zip(labels, previous)):
                row['overlap_{}'.format(label)] = \
                    float(weights[row_index, branch])
                row['energy_{}'.format(label)] = float(eigenvalues[branch])
        if len(labels) == 2:
            row['gap'] = abs(row['energy_{}'.format(labels[0])]
                             - row['energy_{}'.format(labels[1])])
        scan.append(row)
    return scan


class CrossingReport(ResultModel):
    """Numerically extracted avoided crossing of a bare pair.

    Attributes:
        pair (tuple[str]): the two bare labels
        omega_q_star (float): qubit frequency of the minimal gap
        gap_min (float): minimal separation of the two tracked branches
        bare_resonance (float): resonance of the free Hamiltonian
        delta_numeric (float): ``omega_q_star - bare_resonance``
        g_eff_numeric (float): ``gap_min / 2``
        coupling_sign (int): sign of the effective matrix element between
            the two bare states, read on the lower branch
        overlaps (dict): tracked overlaps at ``omega_q_star``
        bracket (tuple): search interval
    """
    @property
    def signed_coupling(self):
        """``coupling_sign * g_eff_numeric``"""
        return self.coupling_sign * self.g_eff_numeric

    def __repr__(self):
        return '<CrossingReport.pair={}/{}.omega_q_star={:.8f}>'.format(
            self.pair[0], self.pair[1], self.omega_q_star
        )


def default_bracket(params, pair):
    """Interval of half width 0.2 reference units around the bare
    resonance of the pair"""
    center = params.bare_resonance(pair)
    width = BRACKET_HALF_WIDTH * params.reference_frequency()
    return center - width, center + width


def _tracked_difference(params, labels, omega_q):
    """Signed difference of the two tracked branch energies"""
    eigenvalues, weights = _scan_point(params, labels, omega_q)
    first, second = assign_branches(weights)
    return float(eigenvalues[first] - eigenvalues[second])


def find_avoided_crossing(params, pair, bracket=None, steps=SCAN_STEPS,
                          tol=1e-8, threshold=OVERLAP_THRESHOLD, jobs=1):
    """Locate the minimal gap between the branches of a bare pair.

    A coarse scan brackets the minimum, a golden-section search refines
    it. When the tracked energies change sign inside the refined bracket
    (a true crossing between symmetry sectors) the sign change is also
    located by Brent's method and the smaller gap of the two is kept.

    Args:
        params (SystemParameter): model parameters (omega_q is scanned)
        pair (tuple): two bare labels, e.g. ``('e00', 'g11')``
        bracket (tuple, optional): search interval. Default to
            ``default_bracket``.
        steps (int, optional): points of the coarse scan. Default to 201.
        tol (float, optional): relative tolerance of the golden section
        threshold (float, optional): smallest accepted tracked overlap
        jobs (int, optional): workers of the coarse scan
    Raises:
        NoCrossingInBracket: if the coarse minimum sits on the bracket edge
        AmbiguousBranchTracking: if a label loses its branch at the minimum
    Returns:
        CrossingReport:
    """
    labels = [BareLabel.coerce(label) for label in pair]
    bracket = tuple(bracket or default_bracket(params, labels))
    scan = scan_spectrum(params, (bracket[0], bracket[1], steps), labels,
                         jobs=jobs)
    gaps = np.array(scan.column('gap'))
    grid = np.array(scan.column('omega_q'))
    best = int(np.argmin(gaps))
    if best in (0, len(gaps) - 1):
        raise NoCrossingInBracket(tuple(str(label) for label in labels),
                                  bracket)
    minima = scan.local_minima()
    if len(minima) > 1:
        logger.warning('%s local gap minima for %s/%s in [%s, %s]; keeping '
                       'the deepest', len(minima), labels[0], labels[1],
                       *bracket)

    def gap(omega_q):
        return abs(_tracked_difference(params, labels, omega_q))

    result = minimize_scalar(
        gap, bracket=(grid[best - 1], grid[best], grid[best + 1]),
        method='golden', tol=tol
    )
    omega_star, gap_min = float(result.x), float(result.fun)
    logger.debug('Golden section: %s evaluations, omega_q* = %.10f',
                 result.nfev, omega_star)

    low, high = grid[best - 1], grid[best + 1]
    difference = partial(_tracked_difference, params, labels)
    if np.sign(difference(low)) != np.sign(difference(high)):
        root = brentq(difference, low, high, xtol=1e-15)
        if gap(root) < gap_min:
            omega_star, gap_min = float(root), gap(root)

    system = diagonalize(build_full(params.replace(omega_q=omega_star)),
                         labels)
    for label in labels:
        index, overlap = system.overlaps[str(label)]
        if overlap < threshold:
            raise AmbiguousBranchTracking(str(label), overlap, omega_star)

    lower = min(labels, key=system.energy)
    vector = system.vector(lower)
    trunc = params['trunc']
    product = vector[trunc.index(labels[0])] \
        * np.conj(vector[trunc.index(labels[1])])
    bare = params.bare_resonance(labels)
    report = CrossingReport(dict(
        pair=tuple(str(label) for label in labels),
        omega_q_star=omega_star,
        gap_min=gap_min,
        bare_resonance=bare,
        delta_numeric=omega_star - bare,
        g_eff_numeric=gap_min / 2,
        coupling_sign=int(-np.sign(product.real)),
        overlaps=dict(system.overlaps),
        bracket=bracket,
    ))
    logger.info('Crossing %s/%s at omega_q = %.8f, gap = %.4e',
                labels[0], labels[1], omega_star, gap_min)
    return report
