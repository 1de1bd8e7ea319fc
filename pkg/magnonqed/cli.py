"""
Command line of ``magnonqed``.

Every subcommand writes comma-separated tables preceded by ``# key: value``
header lines. The options are read, by increasing precedence, from the
workflow preset, from the ``--config`` file and from the flags. Exit codes:
0 on success, 1 on an I/O error, 2 on a configuration error, 3 on a
numerical failure.

Example:

    $ magnonqed spectrum --workflow bell --out bell_scan.csv
    $ magnonqed rabi --workflow ghz --trunc 5 -v
    $ magnonqed protocol --workflow qubit-magnon --timing numeric
"""

import argparse
import logging
import os
import sys

import numpy as np

from .constants import COMMAND, PRESET, TIMING, VARY, WORKFLOW
from .dynamics import rabi_analysis
from .exceptions import (ConfigError, MagnonQEDError, NoCrossingInBracket,
                         NumericalError)
from .parameters import DecoherenceParameter, RunConfig, SystemParameter
from .perturbation import validity_sweep
from .protocols import fidelity_sweep, run_protocol
from .spectral import find_avoided_crossing, scan_spectrum
from .utils._internal import parse_config_file
from .utils.colorizer import green, red, yellow
from .utils.pool import available_jobs

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

DEFAULT_SWEEP_KAPPAS = (0.0, 1e-5)

# flag dest -> option key of RunConfig
_FLAGS = (
    'omega_a', 'omega_m', 'omega_q', 'g', 'G', 'theta', 'trunc', 'kappa',
    'kappa_a', 'kappa_m', 'gamma', 'kappas', 'phi', 'timing', 'swap_timing',
    'switching', 'ramp_slices', 'propagator', 'dt', 'steps', 'range', 'grid',
    'pair', 'vary', 'jobs', 'out',
)


def _common_parser():
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument('--workflow', choices=WORKFLOW.values(),
                        help='preset family (default: bell)')
    common.add_argument('--config', help="flat 'key = value' file")
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for details')
    model = common.add_argument_group('model')
    model.add_argument('--omega-a', dest='omega_a', metavar='FREQ')
    model.add_argument('--omega-m', dest='omega_m', metavar='FREQ')
    model.add_argument('--omega-q', dest='omega_q', metavar='FREQ')
    model.add_argument('--g', dest='g', metavar='COUPLING',
                       help='photon-magnon coupling')
    model.add_argument('--G', dest='G', metavar='COUPLING',
                       help='photon-qubit coupling')
    model.add_argument('--theta', metavar='FRACTION_OF_PI')
    model.add_argument('--trunc', metavar='N[,M]',
                       help='highest photon and magnon levels')
    rates = common.add_argument_group('dissipation')
    rates.add_argument('--kappa', metavar='RATE[,RATE...]',
                       help='uniform rate; a list sets the kappa ladder')
    rates.add_argument('--kappa-a', dest='kappa_a', metavar='RATE')
    rates.add_argument('--kappa-m', dest='kappa_m', metavar='RATE')
    rates.add_argument('--gamma', metavar='RATE')
    rates.add_argument('--kappas', metavar='RATE,RATE...')
    protocol = common.add_argument_group('protocol')
    protocol.add_argument('--phi', metavar='FRACTION_OF_PI')
    protocol.add_argument('--timing', metavar='{closed,numeric}')
    protocol.add_argument('--swap-timing', dest='swap_timing',
                          metavar='{closed,numeric}')
    protocol.add_argument('--switching', metavar='{sudden,ramp:<dur>}')
    protocol.add_argument('--ramp-slices', dest='ramp_slices', metavar='N')
    protocol.add_argument('--propagator', metavar='{full,effective}')
    protocol.add_argument('--dt', metavar='STEP')
    protocol.add_argument('--steps', metavar='N')
    grids = common.add_argument_group('grids and output')
    grids.add_argument('--range', metavar='LO:HI:STEPS',
                       help='qubit-frequency scan')
    grids.add_argument('--grid', metavar='LO:HI:STEPS',
                       help='coupling grid of sweeps')
    grids.add_argument('--pair', metavar='LABEL,LABEL')
    grids.add_argument('--vary', choices=VARY.values())
    grids.add_argument('--jobs', metavar='N',
                       help='worker processes (default: all CPUs)')
    grids.add_argument('--out', metavar='PATH',
                       help='output file (default: standard output)')
    return common


def build_parser():
    """Parser of the command line"""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='magnonqed', allow_abbrev=False,
        description='Hybrid qubit-photon-magnon cavity simulations.'
    )
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True
    descriptions = {
        COMMAND.SPECTRUM: 'dressed spectrum and avoided crossing',
        COMMAND.RABI: 'population transfer at the effective resonance',
        COMMAND.SWEEP: 'final fidelity over a (g, G) grid',
        COMMAND.FIDELITY_DYNAMICS: 'fidelity traces along the kappa ladder',
        COMMAND.VALIDITY: 'closed forms against the numeric crossing',
        COMMAND.PROTOCOL: 'one protocol run with its schedule',
    }
    for name, description in descriptions.items():
        commands.add_parser(name, parents=[common], help=description,
                            description=description, allow_abbrev=False)
    return parser


def configure_logging(verbosity):
    """Root logger on stderr: WARNING, INFO (-v) or DEBUG (-vv)"""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity,
                                                       logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    return level


def load_config(args):
    """RunConfig from the preset, the config file and the flags"""
    options = parse_config_file(args.config) if args.config else {}
    workflow = args.workflow or options.get('workflow')
    if workflow is not None:
        workflow = workflow.strip()
        WORKFLOW.check(workflow)
    cfg = RunConfig(args.command, workflow)
    cfg.update_from(options)
    for key in _FLAGS:
        value = getattr(args, key)
        if value is not None:
            cfg.set_option(key, value)
    if cfg['jobs'] is None:
        cfg['jobs'] = available_jobs()
    return cfg


_STATES = {
    WORKFLOW.BELL: 'photon-magnon Bell state',
    WORKFLOW.GHZ: 'qubit-photon-magnon GHZ state',
    WORKFLOW.QUBIT_MAGNON: 'qubit-magnon Bell state',
}

# header 'figure': the plot each command regenerates
_FIGURES = {
    COMMAND.SPECTRUM: 'dressed energy levels around the {pair} avoided '
                      'crossing against omega_q',
    COMMAND.RABI: 'populations of {pair} in time, full against effective '
                  'Hamiltonian, for the four (g, G) presets',
    COMMAND.SWEEP: 'final fidelity of the {state} over the (g, G) plane',
    COMMAND.FIDELITY_DYNAMICS: 'fidelity of the {state} in time along the '
                               'dissipation ladder',
    COMMAND.VALIDITY: 'closed-form shift and 2|g_eff| of {pair} against '
                      'the numeric crossing, g then G varied',
    COMMAND.PROTOCOL: 'populations and fidelity along the {state} '
                      'preparation',
}


def figure_name(command, workflow):
    """Name of the plot reproduced by a command for a workflow"""
    pair = '{}/{}'.format(*PRESET.of(workflow).pair)
    return _FIGURES[command].format(pair=pair, state=_STATES[workflow])


def _header(cfg, params=None, workflow=None):
    params = params or cfg.system
    workflow = workflow or cfg['workflow']
    return {
        'workflow': workflow,
        'figure': figure_name(cfg['command'], workflow),
        'omega_a': params['omega_a'],
        'omega_m': params['omega_m'],
        'g': params['g'],
        'G': params['G'],
        'theta': params['theta'],
        'timing_source': cfg.protocol['timing_source'],
        'truncation': '{},{}'.format(*params['trunc']),
        'dim': params['trunc'].dim,
    }


def _with_header(table, header):
    table.metadata = dict(header, **table.metadata)
    return table


def _pair(cfg):
    return cfg['pair'] or tuple(PRESET.of(cfg['workflow']).pair)


def cmd_spectrum(cfg):
    """Dressed spectrum over the qubit-frequency range with the crossing of
    the tracked pair in the header."""
    pair = _pair(cfg)
    scan_range = cfg['omega_q_range'] or tuple(PRESET.of(cfg['workflow']).scan)
    scan = scan_spectrum(cfg.system, scan_range, pair, jobs=cfg['jobs'])
    header = _header(cfg)
    header['dataset'] = 'avoided-crossing scan'
    header['pair'] = '{}/{}'.format(*pair)
    try:
        crossing = find_avoided_crossing(cfg.system, pair,
                                         bracket=scan_range[:2])
    except NoCrossingInBracket as error:
        logger.warning('%s', error)
        sys.stderr.write(yellow('No crossing in the scan range: {}\n'
                                .format(error)))
    else:
        header.update(omega_q_star=crossing.omega_q_star,
                      gap_min=crossing.gap_min,
                      bare_resonance=crossing.bare_resonance,
                      delta_numeric=crossing.delta_numeric,
                      g_eff_numeric=crossing.g_eff_numeric,
                      coupling_sign=crossing.coupling_sign)
    return [('spectrum', _with_header(scan, header))]


def cmd_rabi(cfg):
    """Full-Hamiltonian and effective population traces. Without explicit
    couplings the four (g, G) presets are run, and without ``--timing``
    the qubit sits on the numeric avoided crossing."""
    system = cfg.system
    timing = cfg.protocol['timing_source'] \
        if cfg['explicit'] & {'timing', 'timing_source'} \
        else TIMING.NUMERIC_CROSSING
    if cfg['explicit'] & {'g', 'G'}:
        couplings = [(system['g'], system['G'])]
    else:
        couplings = list(PRESET.RABI)
    outputs = []
    for g, G in couplings:
        params = system.replace(g=g, G=G)
        report = rabi_analysis(params, cfg['workflow'], timing)
        table = _with_header(report.table, _header(cfg, params))
        table.metadata.update(p_max=report.p_max, t_peak=report.t_peak,
                              half_period=report.half_period,
                              rabi_half_period=report.rabi_half_period,
                              period_error=report.period_error,
                              g_eff=report.g_eff)
        outputs.append(('rabi_g{}_G{}'.format(g, G), table))
    return outputs


def _kappa_spec(cfg, kappa):
    return cfg.protocol.replace(rates=DecoherenceParameter().uniform(kappa))


def cmd_sweep(cfg):
    """Final fidelity over the (g, G) grid, with and without dissipation"""
    low, high, steps = cfg['grid'] or (PRESET.SWEEP.low, PRESET.SWEEP.high,
                                       PRESET.SWEEP.steps)
    values = np.linspace(low, high, steps)
    kappas = cfg['kappas'] or list(DEFAULT_SWEEP_KAPPAS)
    outputs = []
    for kappa in kappas:
        table = fidelity_sweep(_kappa_spec(cfg, kappa), values, values,
                               jobs=cfg['jobs'])
        header = _header(cfg)
        del header['g'], header['G']
        outputs.append(('sweep_kappa{}'.format(kappa),
                        _with_header(table, header)))
    return outputs


def cmd_fidelity_dynamics(cfg):
    """Fidelity traces of the workflow's protocol along the kappa ladder"""
    outputs = []
    for kappa in cfg['kappas'] or PRESET.KAPPAS:
        result = run_protocol(_kappa_spec(cfg, kappa))
        outputs.append(('fidelity_kappa{}'.format(kappa),
                        _with_header(result.fidelity_trace, _header(cfg))))
    return outputs


def cmd_validity(cfg):
    """Closed-form against numeric shifts and splittings. Without
    ``--workflow`` both the bell and the ghz tables are produced."""
    if cfg['workflow_given']:
        targets = [(cfg['workflow'], cfg.system)]
    else:
        fixed = PRESET.VALIDITY.fixed
        targets = [
            (workflow, SystemParameter.default(workflow, cfg.system['trunc'])
             .replace(g=fixed, G=fixed))
            for workflow in (WORKFLOW.BELL, WORKFLOW.GHZ)
        ]
    grid = cfg['grid'] or (PRESET.VALIDITY.low, PRESET.VALIDITY.high,
                           PRESET.VALIDITY.steps)
    varied = [cfg['vary']] if cfg['vary'] else VARY.values()
    outputs = []
    for workflow, params in targets:
        pair = tuple(PRESET.of(workflow).pair)
        for vary in varied:
            table = validity_sweep(params, vary, grid, pair,
                                   jobs=cfg['jobs'])
            header = _header(cfg, params, workflow)
            header.pop(vary)
            outputs.append(('validity_{}_{}'.format(workflow, vary),
                            _with_header(table, header)))
    return outputs


def cmd_protocol(cfg):
    """One protocol run: per-stage trajectory table and schedule"""
    result = run_protocol(cfg.protocol)
    return [
        ('protocol', _with_header(result.fidelity_trace, _header(cfg))),
        ('schedule', _with_header(result.schedule, _header(cfg))),
    ]


_COMMANDS = {
    COMMAND.SPECTRUM: cmd_spectrum,
    COMMAND.RABI: cmd_rabi,
    COMMAND.SWEEP: cmd_sweep,
    COMMAND.FIDELITY_DYNAMICS: cmd_fidelity_dynamics,
    COMMAND.VALIDITY: cmd_validity,
    COMMAND.PROTOCOL: cmd_protocol,
}


def _output_path(out, name, several):
    if not several:
        return out
    root, extension = os.path.splitext(out)
    return '{}_{}{}'.format(root, name, extension or '.csv')


def write_outputs(outputs, out=None, stream=None):
    """Write named tables to ``out`` (one file per table when there are
    several) or to a stream"""
    stream = stream or sys.stdout
    several = len(outputs) > 1
    for index, (name, table) in enumerate(outputs):
        if out is None:
            if index: stream.write('\n')
            table.write(stream)
            continue
        path = _output_path(out, name, several)
        table.to_csv(path)
        sys.stderr.write(green('{} written to {}\n'.format(name, path)))
    return None


def main(argv=None):
    """Entry point of the ``magnonqed`` console script.

    Returns:
        int: exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        cfg = load_config(args)
        cfg.system.check_dispersive()
        outputs = _COMMANDS[args.command](cfg)
        write_outputs(outputs, cfg['out'])
    except ConfigError as error:
        logger.error('%s', error)
        sys.stderr.write(red('Configuration error: {}\n'.format(error)))
        return EXIT_CONFIG
    except NumericalError as error:
        logger.error('%s', error)
        sys.stderr.write(red('Numerical failure: {}\n'.format(error)))
        return EXIT_NUMERICAL
    except MagnonQEDError as error:
        logger.error('%s', error)
        sys.stderr.write(red('{}\n'.format(error)))
        return EXIT_NUMERICAL
    except OSError as error:
        logger.error('%s', error)
        sys.stderr.write(red('I/O error: {}\n'.format(error)))
        return EXIT_IO
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
