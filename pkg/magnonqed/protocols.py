"""
Generation sequences of the entangled targets.

Every protocol starts from ``|g00>`` with the qubit parked far from any
resonance, applies an instantaneous single-qubit gate, then tunes the qubit
frequency onto one or two effective resonances and lets each half Rabi
swap complete::

    bell_photon_magnon   gate -> (e00, g11)                -> (g00 + e^{i phi} g11) / sqrt 2
    ghz                  gate -> (e00, g20) -> (g20, e11)  -> (g00 + e^{i phi} e11) / sqrt 2
    bell_qubit_magnon    gate -> (e00, g10) -> (g10, e01)  -> (g00 + e^{i phi} e01) / sqrt 2

The fidelity is scored in the frame of the ideal free evolution: the
second component of the target carries ``exp(-i chi(t))`` where ``chi``
accumulates the dressed energy offset of the populated component from
``|g00>`` and a phase ``pi`` per swap whose effective coupling is negative.
"""

import logging
import math
from functools import partial
from itertools import product

import numpy as np

from .constants import GATE, PROPAGATOR, PROTOCOL, SWITCHING, TIMING
from .dynamics import (TimeGrid, evolve_closed,
                       evolve_effective_two_level, evolve_lindblad, fidelity,
                       resonance)
from .exceptions import InvalidParameter, UnreachableTarget
from .hamiltonian import build_full
from .hilbert import (BareLabel, DensityMatrix, StateVector, bare_projector,
                      superpose)
from .model import ResultModel, Table
from .spectral import diagonalize, find_avoided_crossing
from .utils.pool import Guarded, map_grid

logger = logging.getLogger(__name__)

PARKING_RATIO = 5.0
UNREACHABLE_FLOOR = 1e-10

_GROUND = BareLabel('g', 0, 0)

_TARGET_LABEL = {
    PROTOCOL.BELL_PHOTON_MAGNON: 'g11',
    PROTOCOL.GHZ: 'e11',
    PROTOCOL.BELL_QUBIT_MAGNON: 'e01',
}


def qubit_gate(gate, phi):
    """2x2 matrix of a step-1 gate in the qubit basis ``(g, e)``.

    ``bell_gate`` maps ``|g>`` to ``(|g> + i e^{i phi}|e>) / sqrt 2`` and
    ``ghz_gate`` maps ``|g>`` to ``(|g> - e^{i phi}|e>) / sqrt 2``.
    """
    GATE.check(gate)
    phase = np.exp(1j * phi)
    if gate == GATE.BELL:
        matrix = [[1, 1j * phase.conjugate()], [1j * phase, 1]]
    else:
        matrix = [[1, phase.conjugate()], [-phase, 1]]
    return np.array(matrix, dtype=np.complex128) / math.sqrt(2)


def apply_qubit_gate(state, gate, phi=0.0):
    """Apply a step-1 gate on the qubit factor of a state.

    Args:
        state (StateVector, DensityMatrix or array): state of the full space
        gate (str): ``GATE`` value
        phi (float, optional): phase of the target, in radians
    Returns:
        StateVector, DensityMatrix or array: same kind as ``state``
    """
    entries = np.asarray(state.amplitudes if isinstance(state, StateVector)
                         else state)
    modes = entries.shape[0] // 2
    unitary = np.kron(qubit_gate(gate, phi), np.eye(modes))
    if entries.ndim == 1:
        result = unitary @ entries
    else:
        result = unitary @ entries @ unitary.conj().T
    if isinstance(state, StateVector):
        return StateVector(result)
    if isinstance(state, DensityMatrix):
        return DensityMatrix(result)
    return result


def ideal_target(kind, phi=0.0, trunc=None, frame_phase=0.0):
    """Target of a protocol, ``(|g00> + e^{i (phi - chi)}|Y>) / sqrt 2``.

    Args:
        kind (str): ``PROTOCOL`` value
        phi (float, optional): relative phase, in radians
        trunc (Truncation, optional): default to (5, 5)
        frame_phase (float, optional): phase ``chi`` of the scoring frame
    Returns:
        StateVector:
    """
    PROTOCOL.check(kind)
    trunc = trunc or (5, 5)
    return superpose({
        _GROUND: 1.0,
        _TARGET_LABEL[kind]: np.exp(1j * (phi - frame_phase)),
    }, trunc)


class ProtocolResult(ResultModel):
    """Outcome of a protocol run.

    Attributes:
        kind (str): ``PROTOCOL`` value
        phi (float): phase of the target
        stages (list[dict]): name, pair, omega_q, g_eff, duration, start and
            trajectory of every stage
        schedule (Table): qubit frequencies, couplings and durations used
        frame_phase (float): phase ``chi`` at the end of the run
        final_state (array): state at the end of the run
        target (StateVector): target in the scoring frame
        final_fidelity (float): fidelity of the final state
        bare_fidelity (float): fidelity against the target without frame
            correction
        fidelity_trace (Table): time, stage, populations and fidelity
    """
    def __repr__(self):
        return '<ProtocolResult.kind={}.fidelity={:.4f}>'.format(
            self.kind, self.final_fidelity
        )


def _swap_resonance(params, pair, timing):
    """Qubit frequency and coupling of a directly coupled pair"""
    if timing == TIMING.CLOSED_FORM:
        return params.bare_resonance(pair), \
            params['G'] * math.cos(params['theta'])
    crossing = find_avoided_crossing(params, pair)
    return crossing.omega_q_star, crossing.signed_coupling


def _plan(spec):
    """Gate and resonant steps ``(name, pair, resolver)`` of a protocol"""
    kind, timing = spec['kind'], spec['timing_source']
    tuned = partial(resonance, timing=timing)
    if kind == PROTOCOL.BELL_PHOTON_MAGNON:
        return GATE.BELL, [('step_2', ('e00', 'g11'), tuned)]
    if kind == PROTOCOL.GHZ:
        return GATE.GHZ, [('step_2', ('e00', 'g20'), tuned),
                          ('step_3', ('g20', 'e11'), tuned)]
    if timing == TIMING.CLOSED_FORM \
            and spec['propagator'] == PROPAGATOR.FULL:
        logger.warning('The closed-form qubit-magnon resonance is detuned '
                       'from the crossing by more than the coupling, the '
                       'swap will be incomplete (use numeric timing)')
    swap = partial(_swap_resonance, timing=spec['swap_timing'])
    return GATE.GHZ, [('step_2', ('e00', 'g10'), swap),
                      ('step_3', ('g10', 'e01'), tuned)]


def _dressed_offset(params, omega_q, populated, partner=None):
    """Dressed energy of the populated component (mean of the pair branches
    when a partner is given) minus the dressed energy of ``|g00>``"""
    labels = [_GROUND, populated] + ([partner] if partner else [])
    system = diagonalize(build_full(params.replace(omega_q=omega_q)), labels)
    energy = np.mean([system.energy(label) for label in labels[1:]])
    return float(energy - system.energy(_GROUND))


class _Runner:
    """Carries the state of a protocol through its stages"""
    def __init__(self, spec):
        self.spec = spec
        self.params = spec['params']
        self.trunc = self.params['trunc']
        self.closed = spec['rates'].is_closed()
        self.effective = spec['propagator'] == PROPAGATOR.EFFECTIVE
        self.stages = []
        self.clock = 0.0
        self.chi = 0.0

    def target(self, chi):
        return ideal_target(self.spec['kind'], self.spec['phi'], self.trunc,
                            chi)

    def evolve(self, omega_q, state, duration, steps):
        grid = TimeGrid.span(duration, steps)
        H = build_full(self.params.replace(omega_q=omega_q))
        if self.closed:
            return evolve_closed(H, state, grid)
        return evolve_lindblad(H, self.spec['rates'], state, grid,
                               dt=self.spec['dt'])

    def record(self, name, pair, omega_q, g_eff, duration, trajectory,
               chi_rate, chi_offset):
        chi_start = self.chi + chi_offset
        self.stages.append(dict(
            name=name, pair=pair, omega_q=omega_q, g_eff=g_eff,
            duration=duration, start=self.clock, trajectory=trajectory,
            chi=(chi_start, chi_rate),
        ))
        self.clock += duration
        self.chi = chi_start + chi_rate * duration
        return trajectory.final

    def ramp(self, name, start, stop, state, populated):
        slices = self.spec['ramp_slices']
        duration = self.spec['ramp_duration'] / slices
        for index in range(slices):
            omega_q = start + (index + 0.5) / slices * (stop - start)
            offset = _dressed_offset(self.params, omega_q, populated)
            trajectory = self.evolve(omega_q, state, duration, 2)
            state = self.record('{}_{}'.format(name, index + 1), None,
                                omega_q, 0.0, duration, trajectory, offset,
                                0.0)
        return state

    def swap(self, name, pair, omega_q, g_eff, state):
        duration = math.pi / (2 * abs(g_eff))
        sign_phase = math.pi if g_eff < 0 else 0.0
        steps = self.spec['steps']
        if self.effective:
            trajectory = evolve_effective_two_level(
                g_eff, pair, state, TimeGrid.span(duration, steps),
                self.trunc
            )
            rate = 0.0
        else:
            trajectory = self.evolve(omega_q, state, duration, steps)
            rate = _dressed_offset(self.params, omega_q,
                                   BareLabel.coerce(pair[0]),
                                   BareLabel.coerce(pair[1]))
        logger.info('%s: %s <-> %s at omega_q = %.8f for T = %.4f', name,
                    pair[0], pair[1], omega_q, duration)
        return self.record(name, pair, omega_q, g_eff, duration, trajectory,
                           rate, sign_phase)


def _initial_state(spec, runner):
    ground = bare_projector(_GROUND, runner.trunc)
    if runner.closed or runner.effective:
        return ground
    return ground.density_matrix()


def _run(spec, expected):
    if spec['kind'] != expected:
        raise InvalidParameter('kind', spec['kind'],
                               'expected {}'.format(expected))
    params = spec['params']
    runner = _Runner(spec)
    if runner.effective and not runner.closed:
        logger.warning('The effective propagator ignores the dissipation '
                       'rates')
        runner.closed = True

    gate, steps = _plan(spec)
    parking = PARKING_RATIO * max(params['omega_a'], params['omega_m'])
    resolved = []
    for name, pair, resolver in steps:
        omega_q, g_eff = resolver(params, pair)
        if abs(g_eff) < UNREACHABLE_FLOOR * params.reference_frequency():
            raise UnreachableTarget(spec['kind'], 'the {}/{} coupling '
                                    'vanishes'.format(*pair))
        resolved.append((name, pair, omega_q, g_eff))

    state = apply_qubit_gate(_initial_state(spec, runner), gate, spec['phi'])
    schedule = [{'stage': 'step_1', 'omega_q': parking, 'g_eff': 0.0,
                 'duration': 0.0, 'start': 0.0}]
    previous = parking
    for name, pair, omega_q, g_eff in resolved:
        if spec['switching'] == SWITCHING.LINEAR_RAMP and not runner.effective:
            state = runner.ramp('ramp_' + name.split('_')[-1], previous,
                                omega_q, state, BareLabel.coerce(pair[0]))
        state = runner.swap(name, pair, omega_q, g_eff, state)
        previous = omega_q
    schedule.extend(
        {'stage': stage['name'], 'omega_q': stage['omega_q'],
         'g_eff': stage['g_eff'], 'duration': stage['duration'],
         'start': stage['start']}
        for stage in runner.stages
    )

    return _result(spec, runner, state, schedule, resolved)


def _result(spec, runner, state, schedule, resolved):
    kind, phi = spec['kind'], spec['phi']
    labels = ['g00', 'e00'] + [label for _, pair, _, _ in resolved
                               for label in pair if label != 'e00']
    labels = list(dict.fromkeys(labels))
    rows = []
    for stage in runner.stages:
        chi_start, chi_rate = stage['chi']

        def target(time, chi_start=chi_start, chi_rate=chi_rate):
            return runner.target(chi_start + chi_rate * time)

        table = stage['trajectory'].to_table(labels, target,
                                             offset=stage['start'])
        rows.extend(dict(stage=stage['name'], **row) for row in table)

    target = runner.target(runner.chi)
    final_fidelity = fidelity(state, target)
    params = spec['params']
    metadata = {
        'dataset': 'protocol fidelity dynamics',
        'protocol': kind,
        'phi': phi,
        'g': params['g'],
        'G': params['G'],
        'theta': params['theta'],
        'kappa_a': spec['rates']['kappa_a'],
        'kappa_m': spec['rates']['kappa_m'],
        'gamma': spec['rates']['gamma'],
        'timing_source': spec['timing_source'],
        'propagator': spec['propagator'],
        'switching': spec['switching'],
        'truncation': '{},{}'.format(*runner.trunc),
        'dim': runner.trunc.dim,
        'final_fidelity': final_fidelity,
    }
    if kind == PROTOCOL.BELL_QUBIT_MAGNON:
        metadata['swap_timing'] = spec['swap_timing']
    result = ProtocolResult(dict(
        kind=kind, phi=phi, stages=runner.stages,
        schedule=Table(schedule, metadata={'dataset': 'protocol schedule'}),
        frame_phase=runner.chi, final_state=state, target=target,
        final_fidelity=final_fidelity,
        bare_fidelity=fidelity(state, ideal_target(kind, phi, runner.trunc)),
        fidelity_trace=Table(rows, metadata=metadata),
    ))
    logger.info('%s finished with fidelity %.6f', kind, final_fidelity)
    return result


def run_bell_photon_magnon(spec):
    """Two-step generation of the photon-magnon Bell state
    ``(|g00> + e^{i phi}|g11>) / sqrt 2``.

    Step 1 applies ``bell_gate`` on ``|g00>``. Step 2 tunes the qubit to
    ``omega_a + omega_m + delta`` for half a Rabi period of the
    three-wave-mixing coupling.

    Args:
        spec (ProtocolParameter): run specification
    Returns:
        ProtocolResult:
    """
    return _run(spec, PROTOCOL.BELL_PHOTON_MAGNON)


def run_ghz(spec):
    """Three-step generation of ``(|g00> + e^{i phi}|e11>) / sqrt 2``:
    ``ghz_gate``, then the two-photon swap ``e00 -> g20`` near
    ``omega_q = 2 omega_a``, then the swap ``g20 -> e11`` near
    ``omega_q = omega_a - omega_m``."""
    return _run(spec, PROTOCOL.GHZ)


def run_bell_qubit_magnon(spec):
    """Three-step generation of the qubit-magnon Bell state
    ``(|g00> + e^{i phi}|e01>) / sqrt 2``: ``ghz_gate``, the
    single-photon swap ``e00 -> g10`` at ``omega_q = omega_a``, then the
    swap ``g10 -> e01`` near ``omega_q = omega_a - omega_m``.

    Raises:
        UnreachableTarget: if ``g = 0`` (the last swap needs the magnon)
    """
    if spec['params']['g'] == 0:
        raise UnreachableTarget(spec['kind'], 'the g10/e01 swap needs a '
                                'photon-magnon coupling')
    return _run(spec, PROTOCOL.BELL_QUBIT_MAGNON)


_RUNNERS = {
    PROTOCOL.BELL_PHOTON_MAGNON: run_bell_photon_magnon,
    PROTOCOL.GHZ: run_ghz,
    PROTOCOL.BELL_QUBIT_MAGNON: run_bell_qubit_magnon,
}


def run_protocol(spec):
    """Run the protocol named by ``spec['kind']``"""
    PROTOCOL.check(spec['kind'])
    return _RUNNERS[spec['kind']](spec)


def _sweep_cell(spec, cell):
    g, G = cell
    params = spec['params'].replace(g=g, G=G)
    return run_protocol(spec.replace(params=params)).final_fidelity


def fidelity_sweep(spec, g_values, G_values, jobs=1):
    """Final fidelity over a ``(g, G)`` grid. A failing cell is reported as
    NaN and logged.

    Args:
        spec (ProtocolParameter): run specification (couplings overridden)
        g_values (iterable[float]): photon-magnon couplings
        G_values (iterable[float]): photon-qubit couplings
        jobs (int, optional): number of worker processes
    Returns:
        Table: ``g``, ``G``, ``fidelity`` rows, ``g`` major
    """
    cells = list(product([float(value) for value in g_values],
                         [float(value) for value in G_values]))
    results = map_grid(Guarded(partial(_sweep_cell, spec)), cells, jobs=jobs)
    rows = [
        {'g': g, 'G': G,
         'fidelity': float('nan') if value is None else value}
        for (g, G), value in zip(cells, results)
    ]
    params, rates = spec['params'], spec['rates']
    return Table(rows, metadata={
        'dataset': 'final fidelity over the coupling grid',
        'protocol': spec['kind'],
        'kappa': rates['kappa_a'],
        'theta': params['theta'],
        'timing_source': spec['timing_source'],
        'truncation': '{},{}'.format(*params['trunc']),
        'dim': params['trunc'].dim,
    })
