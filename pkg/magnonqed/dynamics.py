"""
Time evolution of the hybrid system.

* ``evolve_closed`` propagates a pure state through one eigendecomposition
  of a constant Hamiltonian.
* ``evolve_effective_two_level`` is the ideal Rabi rotation of a resonant
  bare pair.
* ``evolve_lindblad`` integrates the master equation with dressed jump
  operators. It works in the energy eigenbasis and in the interaction
  picture, ``rho~ = exp(iHt) rho exp(-iHt)``, so the coherent part is
  exact and only the dissipator goes through the fixed-step RK4 scheme::

      d rho~_mn / dt = exp(i (E_m - E_n) t) D[rho](t)_mn

The environments are at zero temperature and Markovian.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy.optimize import curve_fit, minimize_scalar

from .constants import OPERATOR, TIMING, WORKFLOW
from .exceptions import (DegenerateSpectrumError, IntegrationError,
                         InvalidParameter, NonHermitianError,
                         PositivityViolation, TruncationError,
                         UnreachableTarget)
from .hamiltonian import build_full
from .hilbert import (POSITIVITY_TOLERANCE, TRACE_TOLERANCE, BareLabel,
                      DensityMatrix, OperatorMatrix, StateVector, Truncation,
                      bare_projector, embed_operator)
from .model import ResultModel, Table
from .perturbation import closed_form_for
from .spectral import find_avoided_crossing
from .utils.checker import check_integer, check_positive, hermitian_residual

logger = logging.getLogger(__name__)

DEFAULT_STEP = 0.05
MAX_HALVINGS = 4
POSITIVITY_ABORT = 1e-6
SPECTRUM_GAP_FLOOR = 1e-10
RABI_STEPS = 801
RABI_SPAN = 1.25

_HERMITIAN_PART = {
    OPERATOR.A: (OPERATOR.A, OPERATOR.A_DAG),
    OPERATOR.M: (OPERATOR.M, OPERATOR.M_DAG),
    OPERATOR.SIGMA_MINUS: (OPERATOR.SIGMA_MINUS, OPERATOR.SIGMA_PLUS),
}


class TimeGrid(namedtuple('TimeGrid', 't0 t1 steps')):
    """Uniform grid of recorded times.

    Args:
        t0 (float): first time
        t1 (float): last time (> t0)
        steps (int): number of points (>= 2)
    """
    __slots__ = ()

    def __new__(cls, t0, t1, steps):
        steps = check_integer(steps, 'steps', minimum=2)
        if not t1 > t0:
            raise InvalidParameter('t1', t1, 'must be greater than t0')
        return super().__new__(cls, float(t0), float(t1), steps)

    @classmethod
    def span(cls, duration, steps):
        """Grid over ``[0, duration]``"""
        return cls(0.0, check_positive(duration, 'duration'), steps)

    @property
    def times(self):
        """Recorded times"""
        return np.linspace(self.t0, self.t1, self.steps)

    @property
    def spacing(self):
        """Distance between two recorded times"""
        return (self.t1 - self.t0) / (self.steps - 1)


class Trajectory(list):
    """Recorded states of an evolution, as raw arrays in the bare basis:
    vectors for pure states (``kind = 'pure'``), matrices for mixed states
    (``kind = 'mixed'``).

    Args:
        times (array): recorded times
        records (iterable[array]): one state per time
        kind (str): ``'pure'`` or ``'mixed'``
        trunc (Truncation): truncation of the space
    """
    def __init__(self, times, records, kind, trunc, **info):
        super().__init__(records)
        self.times = np.asarray(times, dtype=float)
        self.kind = kind
        self.trunc = Truncation.coerce(trunc)
        self.info = info

    def state(self, index):
        """Record as a validated StateVector or DensityMatrix"""
        if self.kind == 'pure':
            return StateVector(self[index])
        return DensityMatrix(self[index])

    @property
    def final(self):
        """Last record"""
        return self[-1]

    def populations(self, label):
        """Population of a bare label at every recorded time"""
        index = self.trunc.index(label)
        if self.kind == 'pure':
            return np.array([abs(vector[index]) ** 2 for vector in self])
        return np.array([matrix[index, index].real for matrix in self])

    def fidelities(self, target):
        """Fidelity against a fixed target or against ``target(t)``"""
        if callable(target):
            return np.array([fidelity(record, target(time))
                             for time, record in zip(self.times, self)])
        return np.array([fidelity(record, target) for record in self])

    def to_table(self, labels=(), target=None, metadata=None, offset=0.0):
        """Time column, one population column per label and an optional
        fidelity column"""
        columns = {'time': self.times + offset}
        for label in labels:
            columns['P_{}'.format(BareLabel.coerce(label))] = \
                self.populations(label)
        if target is not None:
            columns['fidelity'] = self.fidelities(target)
        rows = [
            {name: float(values[index]) for name, values in columns.items()}
            for index in range(len(self))
        ]
        return Table(rows, metadata=metadata)

    def __repr__(self):
        return '<Trajectory.kind={}.length={}>'.format(self.kind, len(self))


def _require_trunc(trunc, dim):
    # (n_a, n_m) can not be recovered from 2 (n_a + 1) (n_m + 1) alone
    if trunc is None:
        raise TruncationError('trunc', None, 'required for a space of '
                              'dimension {}'.format(dim))
    trunc = Truncation.coerce(trunc)
    if trunc.dim != dim:
        raise TruncationError('trunc', tuple(trunc), 'describes dimension {}, '
                              'not {}'.format(trunc.dim, dim))
    return trunc


def _entries(state):
    return np.asarray(state.amplitudes if isinstance(state, StateVector)
                      else state)


def population(state, label, trunc):
    """Population of a bare label: ``|<label|psi>|^2`` or
    ``<label|rho|label>``.

    Args:
        state (StateVector, DensityMatrix or array): state
        label (BareLabel or str): bare state
        trunc (Truncation): truncation of the space
    Raises:
        TruncationError: if ``trunc`` is missing or does not match the
            dimension of the state
    Returns:
        float:
    """
    entries = _entries(state)
    trunc = _require_trunc(trunc, len(entries))
    index = trunc.index(label)
    if entries.ndim == 1:
        return float(abs(entries[index]) ** 2)
    return float(entries[index, index].real)


def fidelity(state, target):
    """Overlap of a state with a pure target: ``|<phi|psi>|^2`` or
    ``<phi|rho|phi>``.

    Raises:
        InvalidParameter: if the dimensions differ
    Returns:
        float:
    """
    entries, phi = _entries(state), _entries(target)
    if entries.shape[0] != phi.shape[0]:
        raise InvalidParameter('target', phi.shape[0],
                               'dimension differs from the state '
                               '({})'.format(entries.shape[0]))
    if entries.ndim == 1:
        return float(abs(np.vdot(phi, entries)) ** 2)
    return float(np.real(np.vdot(phi, entries @ phi)))


def _require_hermitian(H):
    if not H.hermitian:
        raise NonHermitianError(hermitian_residual(H.entries))
    return None


def evolve_closed(H, psi0, grid):
    """Pure-state evolution under a constant Hamiltonian::

        psi(t) = sum_n exp(-i E_n (t - t0)) |E_n><E_n|psi0>

    Args:
        H (OperatorMatrix): Hermitian-flagged Hamiltonian
        psi0 (StateVector): state at ``grid.t0``
        grid (TimeGrid): recorded times
    Raises:
        NonHermitianError: if ``H`` is not flagged Hermitian
    Returns:
        Trajectory:
    """
    _require_hermitian(H)
    energies, vectors = np.linalg.eigh(H.entries)
    coefficients = vectors.conj().T @ _entries(psi0)
    times = grid.times
    phases = np.exp(-1j * np.outer(times - grid.t0, energies))
    states = (phases * coefficients) @ vectors.T
    return Trajectory(times, list(states), 'pure',
                      _require_trunc(H.trunc, H.dim))


def evolve_effective_two_level(g_eff, pair, psi0, grid, trunc):
    """Exact Rabi rotation of a resonant pair ``(X, Y)``::

        c_X(t) = cos(g t) c_X - i sin(g t) c_Y
        c_Y(t) = -i sin(g t) c_X + cos(g t) c_Y

    with every other amplitude frozen.

    Args:
        g_eff (float): signed effective coupling
        pair (tuple): bare labels ``X`` and ``Y``
        psi0 (StateVector): state at ``grid.t0``
        grid (TimeGrid): recorded times
        trunc (Truncation): truncation of the space
    Returns:
        Trajectory:
    """
    amplitudes = _entries(psi0)
    trunc = _require_trunc(trunc, len(amplitudes))
    first, second = [trunc.index(label) for label in pair]
    times = grid.times
    angles = g_eff * (times - grid.t0)
    states = np.tile(amplitudes, (len(times), 1)).astype(np.complex128)
    states[:, first] = np.cos(angles) * amplitudes[first] \
        - 1j * np.sin(angles) * amplitudes[second]
    states[:, second] = -1j * np.sin(angles) * amplitudes[first] \
        + np.cos(angles) * amplitudes[second]
    return Trajectory(times, list(states), 'pure', trunc)


def _check_spectrum(energies):
    scale = max(float(np.max(np.abs(energies))), 1.0)
    gaps = np.diff(energies)
    index = int(np.argmin(gaps))
    if gaps[index] < SPECTRUM_GAP_FLOOR * scale:
        raise DegenerateSpectrumError(index, float(gaps[index]))
    return None


def _eigen_lowering(vectors, bare, trunc):
    lower, upper = _HERMITIAN_PART[bare]
    quadrature = embed_operator(lower, trunc).entries \
        + embed_operator(upper, trunc).entries
    return np.triu(vectors.conj().T @ quadrature @ vectors, k=1)


def dressed_lowering(H, bare, basis='bare'):
    """Dressed lowering operator built from the eigenstates of ``H``::

        O = sum_{E_n > E_m} <E_m|(o + o^dag)|E_n> |E_m><E_n|

    Args:
        H (OperatorMatrix): Hermitian-flagged Hamiltonian
        bare (str): ``OPERATOR.A``, ``OPERATOR.M`` or
            ``OPERATOR.SIGMA_MINUS``
        basis (str, optional): ``'bare'`` (default) or ``'eigen'``. In the
            eigenbasis (ascending energies) the matrix is strictly upper
            triangular.
    Raises:
        DegenerateSpectrumError: if two eigenvalues are closer than
            ``1e-10`` relative
    Returns:
        OperatorMatrix:
    """
    _require_hermitian(H)
    if bare not in _HERMITIAN_PART:
        raise InvalidParameter('bare', bare, 'expected a, m or sigma_minus')
    if basis not in ('bare', 'eigen'):
        raise InvalidParameter('basis', basis, "expected 'bare' or 'eigen'")
    trunc = _require_trunc(H.trunc, H.dim)
    energies, vectors = np.linalg.eigh(H.entries)
    _check_spectrum(energies)
    operator = _eigen_lowering(vectors, bare, trunc)
    if basis == 'bare':
        operator = vectors @ operator @ vectors.conj().T
    return OperatorMatrix(operator, trunc=trunc)


def _channels(vectors, rates, trunc):
    channels = []
    for key, bare in (('kappa_a', OPERATOR.A), ('kappa_m', OPERATOR.M),
                      ('gamma', OPERATOR.SIGMA_MINUS)):
        if rates[key] > 0:
            channels.append((rates[key],
                             _eigen_lowering(vectors, bare, trunc)))
    return channels


class _Dissipator:
    """``sum_k kappa_k (L_k rho L_k^dag - {L_k^dag L_k, rho} / 2)`` in the
    interaction picture"""
    def __init__(self, energies, channels):
        self.frequencies = energies[:, None] - energies[None, :]
        self.channels = [(rate, jump, jump.conj().T)
                         for rate, jump in channels]
        self.decay = sum(rate * jump.conj().T @ jump
                         for rate, jump in channels)

    def phases(self, time):
        return np.exp(1j * self.frequencies * time)

    def __call__(self, time, rho_tilde):
        phases = self.phases(time)
        rho = rho_tilde * phases.conj()
        result = -0.5 * (self.decay @ rho + rho @ self.decay)
        for rate, jump, jump_dag in self.channels:
            result += rate * (jump @ rho @ jump_dag)
        return result * phases


def _rk4_step(func, time, rho, step):
    k1 = func(time, rho)
    k2 = func(time + step / 2, rho + step / 2 * k1)
    k3 = func(time + step / 2, rho + step / 2 * k2)
    k4 = func(time + step, rho + step * k3)
    rho = rho + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return 0.5 * (rho + rho.conj().T)


def _integrate(dissipator, rho_tilde, grid, dt):
    """Interaction-picture states at the recorded times, with the largest
    trace drift and the smallest eigenvalue met"""
    times = grid.times
    records = [rho_tilde]
    drift, smallest = 0.0, DensityMatrix.min_eigenvalue(rho_tilde)
    for start, stop in zip(times[:-1], times[1:]):
        substeps = max(1, math.ceil((stop - start) / dt - 1e-9))
        step = (stop - start) / substeps
        for index in range(substeps):
            rho_tilde = _rk4_step(dissipator, start - grid.t0 + index * step,
                                  rho_tilde, step)
        records.append(rho_tilde)
        drift = max(drift, abs(np.trace(rho_tilde).real - 1))
        smallest = min(smallest, DensityMatrix.min_eigenvalue(rho_tilde))
        if drift >= TRACE_TOLERANCE or smallest <= -POSITIVITY_ABORT:
            return records, drift, smallest, stop
    return records, drift, smallest, times[-1]


def evolve_lindblad(H, rates, rho0, grid, dt=DEFAULT_STEP,
                    max_halvings=MAX_HALVINGS):
    """Density-matrix evolution under the master equation with dressed
    jump operators::

        d rho / dt = -i [H, rho] + kappa_a L[X_a] rho + kappa_m L[X_m] rho
                     + gamma L[S_-] rho

    The step is halved (and the run restarted) while the trace drifts by
    more than 1e-8 or an eigenvalue falls below -1e-6.

    Args:
        H (OperatorMatrix): Hermitian-flagged Hamiltonian
        rates (DecoherenceParameter): dissipation rates
        rho0 (DensityMatrix or StateVector): state at ``grid.t0``
        grid (TimeGrid): recorded times
        dt (float, optional): largest integration step. Default to 0.05.
        max_halvings (int, optional): allowed step halvings. Default to 4.
    Raises:
        NonHermitianError: if ``H`` is not flagged Hermitian
        DegenerateSpectrumError: if the dressed operators are ill-defined
        IntegrationError: if the trace keeps drifting
        PositivityViolation: if positivity is lost at the smallest step
    Returns:
        Trajectory: density matrices in the bare basis
    """
    _require_hermitian(H)
    trunc = _require_trunc(H.trunc, H.dim)
    if isinstance(rho0, StateVector):
        rho0 = rho0.density_matrix()
    energies, vectors = np.linalg.eigh(H.entries)
    rho_tilde = vectors.conj().T @ _entries(rho0) @ vectors
    channels = _channels(vectors, rates, trunc)
    dissipator = _Dissipator(energies, channels)

    if not channels:
        records = [rho_tilde] * grid.steps
    else:
        _check_spectrum(energies)
        step = check_positive(dt, 'dt')
        for halving in range(max_halvings + 1):
            records, drift, smallest, reached = _integrate(
                dissipator, rho_tilde, grid, step
            )
            if drift < TRACE_TOLERANCE and smallest > -POSITIVITY_ABORT:
                break
            logger.debug('Halving the step %.3e at t = %.4g (drift %.2e, '
                         'eigenvalue %.2e)', step, reached, drift, smallest)
            if halving == max_halvings:
                if drift >= TRACE_TOLERANCE:
                    raise IntegrationError(drift, step)
                raise PositivityViolation(smallest, reached, step)
            step /= 2
        if smallest <= -POSITIVITY_TOLERANCE:
            logger.warning('Smallest eigenvalue %.2e along the run',
                           smallest)

    states = [
        vectors @ (record * dissipator.phases(time - grid.t0).conj())
        @ vectors.conj().T
        for time, record in zip(grid.times, records)
    ]
    return Trajectory(grid.times, states, 'mixed', trunc, dt=dt)


class RabiReport(ResultModel):
    """Rabi oscillation of a resonant pair under the full Hamiltonian.

    Attributes:
        pair (tuple[str]): initial and target labels
        omega_q (float): qubit frequency of the run
        g_eff (float): closed-form coupling of the effective Hamiltonian
        p_max (float): largest target population over one period
        t_peak (float): time of that maximum, refined between samples
        half_period (float): ``pi / (2 |g_eff|)``
        rabi_half_period (float): half period of the slow oscillation of
            the full run, fitted with ``A sin^2(w t) + B``
        period_error (float): ``|rabi_half_period - half_period| /
            half_period``
        table (Table): time, full and effective target populations
    """
    def __repr__(self):
        return '<RabiReport.p_max={:.4f}.period_error={:.4f}>'.format(
            self.p_max, self.period_error
        )


_RABI_PAIRS = {
    WORKFLOW.BELL: ('e00', 'g11'),
    WORKFLOW.GHZ: ('g20', 'e11'),
    WORKFLOW.QUBIT_MAGNON: ('g10', 'e01'),
}


def resonance(params, pair, timing=TIMING.CLOSED_FORM):
    """Qubit frequency and signed coupling of a resonant pair, from the
    closed forms or from the numeric avoided crossing.

    Returns:
        tuple: ``(omega_q, g_eff)``
    """
    TIMING.check(timing)
    bare = params.bare_resonance(pair)
    if timing == TIMING.CLOSED_FORM:
        report = closed_form_for(pair)(params.replace(omega_q=bare))
        return bare + report.delta, report.g_eff
    crossing = find_avoided_crossing(params, pair)
    return crossing.omega_q_star, crossing.signed_coupling


def _population_at(H, psi0, index):
    """``t -> |<index|exp(-iHt)|psi0>|^2`` from one eigendecomposition"""
    energies, vectors = np.linalg.eigh(H.entries)
    weights = vectors[index] * (vectors.conj().T @ _entries(psi0))

    def evaluate(time):
        return float(abs(np.sum(weights * np.exp(-1j * energies * time)))
                     ** 2)
    return evaluate


def _refine_peak(population_at, times, index):
    """Maximum of the population between the neighbours of the sampled
    maximum ``times[index]``"""
    sampled = population_at(times[index])
    low = times[max(index - 1, 0)]
    high = times[min(index + 1, len(times) - 1)]
    result = minimize_scalar(lambda time: -population_at(time),
                             bounds=(low, high), method='bounded')
    if result.success and -result.fun > sampled:
        return float(result.x), float(-result.fun)
    return float(times[index]), sampled


def _sine_squared(time, amplitude, rate, offset):
    return amplitude * np.sin(rate * time) ** 2 + offset


def _fitted_half_period(times, populations, rate):
    """Half period of the slow transfer. The fast oscillations of the
    dressing average out of the fit."""
    guess = (float(np.max(populations)), rate, 0.0)
    try:
        (_, fitted, _), _ = curve_fit(_sine_squared, times, populations,
                                      p0=guess)
    except RuntimeError as error:
        logger.warning('Rabi fit failed (%s), using the peak time', error)
        return None
    return math.pi / (2 * abs(fitted))


def rabi_analysis(params, workflow, timing=TIMING.NUMERIC_CROSSING,
                  steps=RABI_STEPS):
    """Population transfer of the workflow's pair under the full
    Hamiltonian, compared with the effective two-level rotation.

    The qubit is tuned on the numeric avoided crossing (or on the closed
    form resonance with ``TIMING.CLOSED_FORM``). The reference period
    ``tau = pi / |g_eff|`` always comes from the closed-form coupling. The
    run spans 1.25 ``tau``; the maximum is searched over the first period
    and refined between samples.

    Args:
        params (SystemParameter): model parameters
        workflow (str): ``WORKFLOW`` value
        timing (str, optional): ``TIMING`` value of the qubit frequency.
            Default to ``TIMING.NUMERIC_CROSSING``.
        steps (int, optional): recorded points. Default to 801.
    Raises:
        UnreachableTarget: if the effective coupling vanishes
    Returns:
        RabiReport:
    """
    WORKFLOW.check(workflow)
    pair = _RABI_PAIRS[workflow]
    bare = params.bare_resonance(pair)
    g_eff = closed_form_for(pair)(params.replace(omega_q=bare)).g_eff
    if g_eff == 0:
        raise UnreachableTarget(workflow, 'the effective coupling vanishes')
    omega_q, _ = resonance(params, pair, timing)
    tau = math.pi / abs(g_eff)
    grid = TimeGrid.span(RABI_SPAN * tau, steps)
    run = params.replace(omega_q=omega_q)
    trunc = run['trunc']
    H = build_full(run)
    psi0 = bare_projector(pair[0], trunc)
    full = evolve_closed(H, psi0, grid)
    effective = evolve_effective_two_level(g_eff, pair, psi0, grid, trunc)
    target_full = full.populations(pair[1])
    target_effective = effective.populations(pair[1])

    window = grid.times <= tau
    peak = int(np.argmax(np.where(window, target_full, -1.0)))
    t_peak, p_max = _refine_peak(_population_at(H, psi0, trunc.index(pair[1])),
                                 grid.times, peak)
    half_period = tau / 2
    rabi_half_period = _fitted_half_period(
        grid.times[window], target_full[window], abs(g_eff)
    ) or t_peak
    table = Table([
        {'time': float(time), 'P_full': float(p_full),
         'P_effective': float(p_eff)}
        for time, p_full, p_eff in zip(grid.times, target_full,
                                       target_effective)
    ], metadata={
        'dataset': 'rabi oscillation of {} -> {}'.format(*pair),
        'workflow': workflow, 'g': params['g'], 'G': params['G'],
        'omega_q': omega_q, 'timing_source': timing,
        'truncation': '{},{}'.format(*trunc),
        'dim': trunc.dim,
    })
    report = RabiReport(dict(
        workflow=workflow, pair=pair, omega_q=omega_q, g_eff=g_eff,
        p_max=p_max, t_peak=t_peak, half_period=half_period,
        rabi_half_period=rabi_half_period,
        period_error=abs(rabi_half_period - half_period) / half_period,
        table=table,
    ))
    logger.info('Rabi %s -> %s: P_max = %.4f, period error = %.4f',
                pair[0], pair[1], report.p_max, report.period_error)
    return report
