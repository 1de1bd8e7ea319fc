"""
Perturbative energy shifts and effective couplings of the hybrid system.

Two families of tools live here:

* generic sums over the truncated space (``second_order_shift``,
  ``second_order_coupling``, ``third_order_coupling``, ``enumerate_paths``)
  built from the free Hamiltonian and the interaction matrix;
* closed forms of the shifts and couplings of the three entangling
  transitions (Bell pair, GHZ pair, two-photon stage and qubit-magnon
  pair), returned as ``PerturbationReport`` objects.

All the denominators are referenced to the energy of the initial state::

    eps_i   = sum_n  V_in V_ni / (E_i - E_n)
    g_ij(2) = sum_n  V_jn V_ni / (E_i - E_n)
    g_ij(3) = sum_nm V_jn V_nm V_mi / ((E_i - E_n)(E_i - E_m))
"""

import logging
import math
from collections import namedtuple
from functools import partial

import numpy as np

from .constants import METHOD, QUBIT, VARY
from .exceptions import (DegenerateDenominatorError, InvalidParameter,
                         LowerOrderConnectionError, MagnonQEDError,
                         ResonancePole)
from .hamiltonian import build_H0, build_V
from .hilbert import BareLabel, Truncation
from .model import ResultModel, Table
from .spectral import find_avoided_crossing
from .utils.pool import map_grid

logger = logging.getLogger(__name__)

DENOMINATOR_FLOOR = 1e-6
ELEMENT_TOLERANCE = 1e-12
POLE_TOLERANCE = 1e-12


class TransitionPath(namedtuple('TransitionPath', 'nodes amplitude')):
    """Chain of interaction matrix elements from an initial to a final bare
    state, with its contribution to the effective coupling.

    Example:

        >>> str(path)
        'e00 -> e10 -> g20 -> g11'
    """
    __slots__ = ()

    @property
    def order(self):
        """Number of interaction matrix elements of the chain"""
        return len(self.nodes) - 1

    def __str__(self):
        return ' -> '.join(str(node) for node in self.nodes)


class PerturbationReport(ResultModel):
    """Shifts and effective coupling of a bare pair.

    Attributes:
        pair (tuple[BareLabel]): initial and final states
        shift_initial (float): second-order shift of the initial state
        shift_final (float): second-order shift of the final state
        delta (float): shift of the qubit frequency at which the pair is
            resonant
        g_eff (float): leading-order effective coupling (signed)
        paths (list[TransitionPath]): contributing chains, if enumerated
        method (str): ``METHOD`` value
        diagnostics (dict): secondary quantities (alternative forms,
            self-consistent solutions...)
    """
    def __init__(self, pair, shift_initial, shift_final, delta, g_eff,
                 method, paths=None, diagnostics=None):
        METHOD.check(method)
        super().__init__(dict(
            pair=tuple(BareLabel.coerce(label) for label in pair),
            shift_initial=shift_initial, shift_final=shift_final,
            delta=delta, g_eff=g_eff, method=method,
            paths=list(paths or []), diagnostics=dict(diagnostics or {}),
        ))

    def __repr__(self):
        return '<PerturbationReport.pair={}/{}.method={}>'.format(
            self.pair[0], self.pair[1], self.method
        )


def _arrays(H0, V):
    energies = np.real(np.diag(np.asarray(H0)))
    interaction = np.asarray(V)
    return energies, interaction


def _trunc(H0, V, trunc=None):
    trunc = trunc or H0.trunc or V.trunc
    return Truncation.coerce(trunc)


def _scale(interaction):
    scale = float(np.max(np.abs(interaction))) if interaction.size else 0.0
    return scale if scale > 0 else 1.0


def _connected(values, scale):
    """Mask of the matrix elements considered nonzero"""
    return np.abs(values) > ELEMENT_TOLERANCE * scale


def _check_denominators(energies, initial, indices, floor, trunc):
    for index in indices:
        gap = energies[initial] - energies[index]
        if abs(gap) < floor:
            raise DegenerateDenominatorError(trunc.label(initial),
                                             trunc.label(index), gap, floor)
    return None


def second_order_shift(H0, V, i, reference=1.0, exclude=(), trunc=None):
    """Second-order shift of a bare state.

    Args:
        H0 (OperatorMatrix): free Hamiltonian (diagonal)
        V (OperatorMatrix): interaction
        i (BareLabel): state whose shift is computed
        reference (float, optional): frequency unit of the denominator
            floor. Default to 1.
        exclude (list[BareLabel], optional): states left out of the sum
            (the resonant partner of a first-order pair)
        trunc (Truncation, optional): default to the operators' truncation
    Raises:
        DegenerateDenominatorError: if a connected state lies within
            ``1e-6 reference`` of ``E_i``
    Returns:
        float:
    """
    trunc = _trunc(H0, V, trunc)
    energies, interaction = _arrays(H0, V)
    initial = trunc.index(i)
    mask = _connected(interaction[:, initial], _scale(interaction))
    mask[initial] = False
    for label in exclude:
        mask[trunc.index(label)] = False
    indices = np.flatnonzero(mask)
    _check_denominators(energies, initial, indices,
                        DENOMINATOR_FLOOR * reference, trunc)
    terms = interaction[initial, indices] * interaction[indices, initial] \
        / (energies[initial] - energies[indices])
    return float(np.real(np.sum(terms)))


def connection_order(V, i, j, trunc=None):
    """Lowest order (1, 2 or 3) at which ``V`` connects two bare states.
    Pairs not connected below third order report 3."""
    trunc = Truncation.coerce(trunc or V.trunc)
    interaction = np.asarray(V)
    scale = _scale(interaction)
    initial, final = trunc.index(i), trunc.index(j)
    if _connected(interaction[final, initial], scale):
        return 1
    products = interaction[final, :] * interaction[:, initial]
    products[[initial, final]] = 0
    if np.any(_connected(products, scale ** 2)):
        return 2
    return 3


def second_order_coupling(H0, V, i, j, reference=1.0, trunc=None):
    """Second-order effective coupling of two bare states not directly
    connected by ``V``.

    Raises:
        LowerOrderConnectionError: if ``<j|V|i>`` is nonzero
        DegenerateDenominatorError: if an intermediate state is degenerate
            with ``i``
    Returns:
        float:
    """
    trunc = _trunc(H0, V, trunc)
    if connection_order(V, i, j, trunc) < 2:
        raise LowerOrderConnectionError(BareLabel.coerce(i),
                                        BareLabel.coerce(j), 1)
    energies, interaction = _arrays(H0, V)
    initial, final = trunc.index(i), trunc.index(j)
    products = interaction[final, :] * interaction[:, initial]
    mask = _connected(products, _scale(interaction) ** 2)
    mask[[initial, final]] = False
    indices = np.flatnonzero(mask)
    _check_denominators(energies, initial, indices,
                        DENOMINATOR_FLOOR * reference, trunc)
    terms = products[indices] / (energies[initial] - energies[indices])
    return float(np.real(np.sum(terms)))


def third_order_coupling(H0, V, i, j, reference=1.0, intermediates=None,
                         trunc=None):
    """Third-order effective coupling of two bare states.

    Args:
        H0 (OperatorMatrix): free Hamiltonian (diagonal)
        V (OperatorMatrix): interaction
        i (BareLabel): initial state (reference of the denominators)
        j (BareLabel): final state
        reference (float, optional): frequency unit of the floor
        intermediates (list[BareLabel], optional): restrict the sum to
            these intermediate states
        trunc (Truncation, optional): default to the operators' truncation
    Raises:
        LowerOrderConnectionError: if the pair is connected at first or
            second order
        DegenerateDenominatorError: if an intermediate state is degenerate
            with ``i``
    Returns:
        float:
    """
    trunc = _trunc(H0, V, trunc)
    order = connection_order(V, i, j, trunc)
    if order < 3:
        raise LowerOrderConnectionError(BareLabel.coerce(i),
                                        BareLabel.coerce(j), order)
    energies, interaction = _arrays(H0, V)
    scale = _scale(interaction)
    initial, final = trunc.index(i), trunc.index(j)
    allowed = np.ones(trunc.dim, dtype=bool)
    if intermediates is not None:
        allowed[:] = False
        allowed[[trunc.index(label) for label in intermediates]] = True
    allowed[[initial, final]] = False

    first = _connected(interaction[:, initial], scale) & allowed
    last = _connected(interaction[final, :], scale) & allowed
    _check_denominators(energies, initial, np.flatnonzero(first | last),
                        DENOMINATOR_FLOOR * reference, trunc)
    denominators = np.where(first | last, energies[initial] - energies, 1.0)
    u = np.where(first, interaction[:, initial] / denominators, 0.0)
    v = np.where(last, interaction[final, :] / denominators, 0.0)
    return float(np.real(v @ interaction @ u))


def enumerate_paths(H0, V, i, j, order=3, reference=1.0, trunc=None):
    """Every chain of nonzero matrix elements of ``V`` of a given length
    from ``i`` to ``j`` whose intermediate states differ from both ends.

    Paths are sorted lexicographically on the flat indices of their
    intermediate states.

    Args:
        order (int): 2 or 3
    Returns:
        list[TransitionPath]:
    """
    if order not in (2, 3):
        raise ValueError('order must be 2 or 3')
    trunc = _trunc(H0, V, trunc)
    energies, interaction = _arrays(H0, V)
    scale = _scale(interaction)
    initial, final = trunc.index(i), trunc.index(j)
    ends = (initial, final)
    floor = DENOMINATOR_FLOOR * reference

    def nonzero(vector):
        return [index for index in np.flatnonzero(_connected(vector, scale))
                if index not in ends]

    paths = []
    for m in nonzero(interaction[:, initial]):
        _check_denominators(energies, initial, [m], floor, trunc)
        head = interaction[m, initial] / (energies[initial] - energies[m])
        if order == 2:
            if _connected(interaction[final, m], scale):
                paths.append(TransitionPath(
                    (trunc.label(initial), trunc.label(m), trunc.label(final)),
                    float(np.real(interaction[final, m] * head))
                ))
            continue
        for n in nonzero(interaction[:, m]):
            if not _connected(interaction[final, n], scale):
                continue
            _check_denominators(energies, initial, [n], floor, trunc)
            amplitude = interaction[final, n] * interaction[n, m] * head \
                / (energies[initial] - energies[n])
            paths.append(TransitionPath(
                tuple(trunc.label(index) for index in (initial, m, n, final)),
                float(np.real(amplitude))
            ))
    logger.debug('%s paths of order %s from %s to %s', len(paths), order,
                 trunc.label(initial), trunc.label(final))
    return paths


def paths_table(paths):
    """Path catalogue as a table (chain and signed amplitude)"""
    return Table(
        [{'index': index, 'path': str(path), 'amplitude': path.amplitude}
         for index, path in enumerate(paths, start=1)],
        metadata={'dataset': 'perturbative transition paths',
                  'paths': len(paths)}
    )


def effective_coupling(params, pair, method=METHOD.GENERIC_SUM):
    """Shifts and leading-order coupling of a bare pair from the generic
    sums, at the qubit frequency of ``params``.

    The order of the coupling is detected: a directly connected pair
    reports ``<j|V|i>``, a second-order pair the second-order sum and any
    other pair the third-order sum. Shifts exclude the resonant partner.

    Args:
        params (SystemParameter): model parameters
        pair (tuple): initial and final bare labels
        method (str, optional): ``generic_sum`` or ``path_enumeration``
    Returns:
        PerturbationReport:
    """
    if method == METHOD.CLOSED_FORM:
        return closed_form_for(pair)(params)
    METHOD.check(method)
    initial, final = [BareLabel.coerce(label) for label in pair]
    H0, V = build_H0(params), build_V(params)
    reference = params.reference_frequency()
    shifts = {
        label: second_order_shift(H0, V, label, reference, exclude=[other])
        for label, other in ((initial, final), (final, initial))
    }
    order = connection_order(V, initial, final)
    paths = []
    if order == 1:
        trunc = params['trunc']
        g_eff = float(np.real(
            np.asarray(V)[trunc.index(final), trunc.index(initial)]
        ))
    elif method == METHOD.PATH_ENUMERATION:
        paths = enumerate_paths(H0, V, initial, final, order, reference)
        g_eff = math.fsum(path.amplitude for path in paths)
    elif order == 2:
        g_eff = second_order_coupling(H0, V, initial, final, reference)
    else:
        g_eff = third_order_coupling(H0, V, initial, final, reference)
    excited, ground = (initial, final) if initial.qubit == QUBIT.E \
        else (final, initial)
    return PerturbationReport(
        (initial, final), shifts[initial], shifts[final],
        shifts[ground] - shifts[excited], g_eff, method, paths,
        diagnostics={'order': order, 'omega_q': params['omega_q']},
    )


def _values(params):
    return (params['omega_a'], params['omega_m'], params['omega_q'],
            params['g'], params['G'], params['theta'])


def _pole(name, value, reason):
    """Raise on a vanishing denominator of a closed form"""
    if abs(value) < POLE_TOLERANCE:
        raise ResonancePole(name, value, reason)
    return value


def closed_form_bell(params):
    """Shift and three-wave-mixing coupling of the Bell pair
    ``(e00, g11)``.

    The resonance shift and the coupling are leading-order expressions
    taken at the bare resonance ``omega_q = omega_a + omega_m``; the state
    shifts use the qubit frequency of ``params``. Diagnostics hold the
    self-consistent corrections of the resonance shift.

    Raises:
        ResonancePole: if ``omega_a = omega_m`` or ``omega_q = omega_a``
    Returns:
        PerturbationReport:
    """
    wa, wm, wq, g, G, theta = _values(params)
    cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    sin_2theta = math.sin(2 * theta)
    detuning = _pole('g_eff', wa - wm, 'omega_a = omega_m')
    _pole('shift_initial', wq - wa, 'omega_q = omega_a')

    shift_e00 = -G ** 2 * sin2 / wa + G ** 2 * cos2 / (wq - wa) \
        - g ** 2 / (wa + wm)
    shift_g11 = -G ** 2 * sin2 / wa + G ** 2 * cos2 / (wa - wq) \
        - 2 * G ** 2 * cos2 / (wq + wa) - 3 * g ** 2 / (wa + wm)
    delta = -2 * G ** 2 * cos2 * (1 / wm + 1 / (2 * wa + wm)) \
        - 2 * g ** 2 / (wa + wm)
    g_eff = 2 * G ** 2 * g * sin_2theta / (wm * detuning)

    a_minus = -2 * G ** 2 * cos2 * (1 / wm - 1 / (2 * wa + wm)) \
        - 2 * g ** 2 / (wa + wm)
    b = 2 * G ** 2 * cos2 * (1 / wm ** 2 + 1 / (2 * wa + wm) ** 2)
    diagnostics = {
        'A': a_minus,
        'B': b,
        'delta_self_consistent_minus': a_minus / (1 + b),
        'delta_self_consistent': delta / (1 - b),
    }
    return PerturbationReport(('e00', 'g11'), shift_e00, shift_g11, delta,
                              g_eff, METHOD.CLOSED_FORM,
                              diagnostics=diagnostics)


def _ghz_delta(wa, wm, g, G, theta):
    cos2 = math.cos(theta) ** 2
    return 4 * G ** 2 * cos2 * (1 / wm - 1 / (2 * wa - wm)) \
        + 2 * g ** 2 / (wa - wm)


def closed_form_ghz(params):
    """Shift and coupling of the GHZ pair ``(g20, e11)``, resonant near
    ``omega_q = omega_a - omega_m``.

    ``shift_initial`` is the shift of ``g20`` and ``shift_final`` the shift
    of ``e11``, both at the qubit frequency of ``params``. The diagnostic
    ``shift_final_flipped`` carries the opposite sign on the
    ``G^2 cos^2(theta) / (2 omega_a - omega_m)`` term of the ``e11`` shift
    at resonance.

    The coupling is the sum of the third-order paths at
    ``omega_q = omega_a - omega_m``::

        g_eff = -2 sqrt(2) G^2 g sin(2 theta) / (omega_m (omega_a + omega_m))

    ``g_eff_uncorrected`` keeps the form with the factor
    ``(omega_a + 3 omega_m) / (2 omega_a)`` on top of it; both agree only
    when ``omega_a = 3 omega_m``.

    Raises:
        ResonancePole: if ``omega_a = omega_m``, ``2 omega_a = omega_m`` or
            ``omega_q = omega_a``
    Returns:
        PerturbationReport:
    """
    wa, wm, wq, g, G, theta = _values(params)
    cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    _pole('delta', wa - wm, 'omega_a = omega_m')
    _pole('delta', 2 * wa - wm, '2 omega_a = omega_m')
    _pole('shift_initial', wq - wa, 'omega_q = omega_a')

    shift_g20 = -G ** 2 * sin2 / wa + 2 * G ** 2 * cos2 / (wa - wq) \
        - 3 * G ** 2 * cos2 / (wa + wq) + 2 * g ** 2 / (wa - wm) \
        - 3 * g ** 2 / (wa + wm)
    shift_e11 = -G ** 2 * sin2 / wa + G ** 2 * cos2 / (wq + wa) \
        + 2 * G ** 2 * cos2 / (wq - wa) - 3 * g ** 2 / (wa + wm)
    delta = _ghz_delta(wa, wm, g, G, theta)
    # 18 paths; the (-, +, -) photon sequences cancel
    g_eff = -2 * math.sqrt(2) * G ** 2 * g * math.sin(2 * theta) \
        / (wm * (wa + wm))
    uncorrected = -math.sqrt(2) * G ** 2 * g * math.sin(2 * theta) \
        * (wa + 3 * wm) / (wa * wm * (wa + wm))
    flipped = -G ** 2 * sin2 / wa - G ** 2 * cos2 / (2 * wa - wm) \
        - 2 * G ** 2 * cos2 / wm - 3 * g ** 2 / (wa + wm)
    return PerturbationReport(('g20', 'e11'), shift_g20, shift_e11, delta,
                              g_eff, METHOD.CLOSED_FORM,
                              diagnostics={'shift_final_flipped': flipped,
                                           'g_eff_uncorrected': uncorrected})


def closed_form_two_photon(params):
    """Shift and coupling of the two-photon stage ``(e00, g20)``, resonant
    near ``omega_q = 2 omega_a``.

    ``delta`` is the theta-independent shift; the diagnostic
    ``delta_theta`` is the shift for any mixing angle (both agree at
    ``theta = pi/4``).

    Raises:
        ResonancePole: if ``omega_a = omega_m`` or ``omega_q = omega_a``
    Returns:
        PerturbationReport:
    """
    wa, wm, wq, g, G, theta = _values(params)
    cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    _pole('delta', wa - wm, 'omega_a = omega_m')
    _pole('shift_initial', wq - wa, 'omega_q = omega_a')

    shift_e00 = -G ** 2 * sin2 / wa + G ** 2 * cos2 / (wq - wa) \
        - g ** 2 / (wa + wm)
    shift_g20 = -G ** 2 * sin2 / wa + 2 * G ** 2 * cos2 / (wa - wq) \
        - 3 * G ** 2 * cos2 / (wa + wq) + 2 * g ** 2 / (wa - wm) \
        - 3 * g ** 2 / (wa + wm)
    magnon_terms = -2 * g ** 2 / (wa + wm) + 2 * g ** 2 / (wa - wm)
    delta = -2 * G ** 2 / wa + magnon_terms
    g_eff = -math.sqrt(2) * G ** 2 * math.sin(2 * theta) / wa
    diagnostics = {'delta_theta': -4 * G ** 2 * cos2 / wa + magnon_terms}
    return PerturbationReport(('e00', 'g20'), shift_e00, shift_g20, delta,
                              g_eff, METHOD.CLOSED_FORM,
                              diagnostics=diagnostics)


def closed_form_qubit_magnon(params):
    """Shift and coupling of the qubit-magnon pair ``(g10, e01)``.

    The resonance shift is the one of the GHZ pair (the same qubit
    frequency is used for both transitions). The diagnostic
    ``delta_pair`` is the difference of the shifts of ``g10`` and ``e01``
    at resonance.

    Raises:
        ResonancePole: if ``omega_a = omega_m``, ``2 omega_a = omega_m`` or
            ``omega_q = omega_a``
    Returns:
        PerturbationReport:
    """
    wa, wm, wq, g, G, theta = _values(params)
    cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    _pole('delta', wa - wm, 'omega_a = omega_m')
    _pole('delta', 2 * wa - wm, '2 omega_a = omega_m')
    _pole('shift_initial', wq - wa, 'omega_q = omega_a')

    shift_g10 = -G ** 2 * sin2 / wa + G ** 2 * cos2 / (wa - wq) \
        - 2 * G ** 2 * cos2 / (wq + wa) + g ** 2 / (wa - wm) \
        - 2 * g ** 2 / (wa + wm)
    shift_e01 = -G ** 2 * sin2 / wa + G ** 2 * cos2 / (wq - wa) \
        + g ** 2 / (wm - wa) - 2 * g ** 2 / (wa + wm)
    g_eff = -2 * G ** 2 * g * math.sin(2 * theta) / (wm * (wa + wm))
    delta_pair = 2 * G ** 2 * cos2 * (1 / wm - 1 / (2 * wa - wm)) \
        + 2 * g ** 2 / (wa - wm)
    return PerturbationReport(('g10', 'e01'), shift_g10, shift_e01,
                              _ghz_delta(wa, wm, g, G, theta), g_eff,
                              METHOD.CLOSED_FORM,
                              diagnostics={'delta_pair': delta_pair})


_CLOSED_FORMS = {
    ('e00', 'g11'): closed_form_bell,
    ('g20', 'e11'): closed_form_ghz,
    ('e00', 'g20'): closed_form_two_photon,
    ('g10', 'e01'): closed_form_qubit_magnon,
}


def closed_form_for(pair):
    """Closed form of a documented pair (in either order)

    Raises:
        InvalidParameter: if no closed form exists for the pair
    """
    key = tuple(str(BareLabel.coerce(label)) for label in pair)
    func = _CLOSED_FORMS.get(key) or _CLOSED_FORMS.get(key[::-1])
    if func is None:
        raise InvalidParameter('pair', key, 'no closed form for this pair')
    return func


class ValidityTable(Table):
    """Closed-form against numeric resonance shifts and splittings along a
    coupling sweep. Columns: the varied coupling, ``delta_closed``,
    ``delta_numeric``, ``two_g_closed``, ``two_g_numeric`` and the relative
    deviations ``delta_error`` and ``two_g_error``.
    """
    def within(self, band, column='delta_error'):
        """Rows whose relative deviation is below ``band``"""
        return [row for row in self if row[column] <= band]


def _relative(closed, numeric):
    if numeric == 0 or math.isnan(numeric):
        return float('nan')
    return abs(closed - numeric) / abs(numeric)


def _validity_cell(params, vary, pair, value):
    cell = params.replace(**{vary: value})
    closed = closed_form_for(pair)(cell.replace(
        omega_q=cell.bare_resonance(pair)
    ))
    try:
        numeric = find_avoided_crossing(cell, pair)
        delta_numeric, two_g_numeric = numeric.delta_numeric, \
            2 * numeric.g_eff_numeric
    except MagnonQEDError as error:
        logger.warning('No numeric crossing at %s = %s: %s', vary, value,
                       error)
        delta_numeric = two_g_numeric = float('nan')
    return {
        vary: float(value),
        'delta_closed': closed.delta,
        'delta_numeric': delta_numeric,
        'two_g_closed': 2 * abs(closed.g_eff),
        'two_g_numeric': two_g_numeric,
        'delta_error': _relative(closed.delta, delta_numeric),
        'two_g_error': _relative(2 * abs(closed.g_eff), two_g_numeric),
    }


def validity_sweep(params, vary, coupling_range, pair, jobs=1):
    """Compare the closed forms with the numeric avoided crossing while one
    coupling varies and the other keeps its value in ``params``.

    Args:
        params (SystemParameter): model parameters
        vary (str): ``VARY`` value (``g`` or ``G``)
        coupling_range (tuple): ``(lo, hi, steps)``
        pair (tuple): documented bare pair
        jobs (int, optional): number of worker processes
    Returns:
        ValidityTable: one row per coupling value, in sweep order
    """
    VARY.check(vary)
    low, high, steps = coupling_range
    values = np.linspace(low, high, int(steps))
    rows = map_grid(partial(_validity_cell, params, vary, tuple(pair)),
                    values, jobs=jobs)
    other = 'G' if vary == VARY.PHOTON_MAGNON else 'g'
    return ValidityTable(rows, metadata={
        'dataset': 'closed-form versus numeric shift and splitting',
        'pair': '{}/{}'.format(*pair),
        'vary': vary,
        other: params[other],
        'truncation': '{},{}'.format(*params['trunc']),
        'dim': params['trunc'].dim,
    })


class ConvergenceReport(ResultModel):
    """Scalar quantity evaluated at two truncations"""
    def __repr__(self):
        return '<ConvergenceReport.change={:.3e}>'.format(self.change)


def convergence_check(func, params, larger=(7, 7)):
    """Evaluate ``func(params)`` at the truncation of ``params`` and at a
    larger one.

    Args:
        func (callable): function of a SystemParameter returning a float
        params (SystemParameter): model parameters
        larger (tuple, optional): second truncation. Default to (7, 7).
    Returns:
        ConvergenceReport: ``small``, ``large`` and the absolute ``change``
    """
    larger = Truncation.coerce(larger)
    small = float(func(params))
    large = float(func(params.replace(trunc=larger)))
    logger.info('Truncation %s -> %s changes the value by %.3e',
                tuple(params['trunc']), tuple(larger), abs(large - small))
    return ConvergenceReport(dict(small=small, large=large,
                                  change=abs(large - small),
                                  truncations=(tuple(params['trunc']),
                                               tuple(larger))))
