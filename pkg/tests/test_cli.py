import pytest

from magnonqed.cli import (EXIT_CONFIG, EXIT_IO, EXIT_NUMERICAL, EXIT_OK,
                           build_parser, figure_name, load_config, main)
from magnonqed.constants import COMMAND, TIMING, WORKFLOW


def header_of(text):
    return dict(
        line[2:].split(': ', 1) for line in text.splitlines()
        if line.startswith('# ')
    )


def test_parser_defaults():
    args = build_parser().parse_args(['spectrum'])
    assert args.command == 'spectrum'
    assert args.workflow is None
    assert args.verbose == 0
    cfg = load_config(build_parser().parse_args(
        ['rabi', '--workflow', 'ghz', '--G', '0.05', '--jobs', '2']
    ))
    assert cfg['workflow'] == 'ghz'
    assert cfg.system['G'] == 0.05
    assert cfg['jobs'] == 2


def test_parser_rejects_unknown_workflow():
    with pytest.raises(SystemExit):
        build_parser().parse_args(['spectrum', '--workflow', 'w-state'])


def test_config_file_precedence(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('workflow = ghz\nG = 0.05\ng = 0.08\n')
    cfg = load_config(build_parser().parse_args(
        ['rabi', '--config', str(path), '--g', '0.12']
    ))
    assert cfg['workflow'] == 'ghz'
    assert cfg.system['G'] == 0.05
    assert cfg.system['g'] == 0.12


def test_spectrum_to_file(tmp_path):
    out = tmp_path / 'spectrum.csv'
    code = main(['spectrum', '--workflow', 'bell', '--trunc', '2',
                 '--range', '2.6:2.8:11', '--jobs', '1', '--out', str(out)])
    assert code == EXIT_OK
    text = out.read_text()
    header = header_of(text)
    assert header['workflow'] == 'bell'
    assert header['dim'] == '18'
    assert header['pair'] == 'e00/g11'
    assert 'omega_q_star' in header
    assert header['figure'].startswith('dressed energy levels around the '
                                       'e00/g11 avoided crossing')
    rows = [line for line in text.splitlines() if not line.startswith('#')]
    assert rows[0].startswith('omega_q,E_0,')
    assert len(rows) == 12


def test_rabi_to_stdout(capsys):
    code = main(['rabi', '--workflow', 'bell', '--trunc', '2', '--g', '0.1',
                 '--G', '0.1', '--jobs', '1'])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    header = header_of(text)
    assert 'p_max' in header
    assert 'rabi_half_period' in header
    assert header['timing_source'] == TIMING.NUMERIC_CROSSING
    assert header['figure'].startswith('populations of e00/g11 in time')
    assert 'time,P_full,P_effective' in text


def test_protocol_writes_two_tables(tmp_path):
    out = tmp_path / 'bell.csv'
    code = main(['protocol', '--workflow', 'bell', '--trunc', '2',
                 '--timing', 'closed', '--propagator', 'effective',
                 '--steps', '11', '--jobs', '1', '--out', str(out)])
    assert code == EXIT_OK
    trace = (tmp_path / 'bell_protocol.csv').read_text()
    schedule = (tmp_path / 'bell_schedule.csv').read_text()
    assert header_of(trace)['protocol'] == 'bell_photon_magnon'
    assert 'photon-magnon Bell state' in header_of(trace)['figure']
    assert header_of(schedule)['figure'] == header_of(trace)['figure']
    assert 'stage,time,P_g00' in trace
    assert 'stage,omega_q,g_eff,duration,start' in schedule


def test_sweep_command(capsys):
    code = main(['sweep', '--workflow', 'ghz', '--trunc', '2',
                 '--timing', 'closed', '--propagator', 'effective',
                 '--grid', '0.05:0.1:2', '--kappas', '0', '--steps', '3',
                 '--jobs', '1'])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    rows = [line for line in text.splitlines() if not line.startswith('#')]
    assert rows[0] == 'g,G,fidelity'
    assert header_of(text)['figure'] == \
        figure_name(COMMAND.SWEEP, WORKFLOW.GHZ)
    assert len(rows) == 5


def test_validity_command(capsys):
    code = main(['validity', '--workflow', 'bell', '--vary', 'G',
                 '--grid', '0.05:0.1:2', '--jobs', '1'])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    header = header_of(text)
    assert 'G' not in header
    assert header['vary'] == 'G'
    assert '2|g_eff| of e00/g11' in header['figure']
    assert 'G,delta_closed,delta_numeric' in text


def test_configuration_errors(tmp_path):
    assert main(['spectrum', '--theta', '0.7']) == EXIT_CONFIG
    assert main(['spectrum', '--trunc', '1']) == EXIT_CONFIG
    path = tmp_path / 'run.cfg'
    path.write_text('colour = blue\n')
    assert main(['spectrum', '--config', str(path)]) == EXIT_CONFIG


def test_numerical_failure():
    code = main(['rabi', '--workflow', 'bell', '--trunc', '2', '--g', '0',
                 '--jobs', '1'])
    assert code == EXIT_NUMERICAL


def test_unwritable_output(tmp_path):
    out = tmp_path / 'missing' / 'spectrum.csv'
    code = main(['spectrum', '--trunc', '2', '--range', '2.6:2.8:5',
                 '--jobs', '1', '--out', str(out)])
    assert code == EXIT_IO


def test_fidelity_dynamics_per_kappa(tmp_path):
    out = tmp_path / 'fidelity.csv'
    code = main(['fidelity-dynamics', '--workflow', 'ghz', '--trunc', '2',
                 '--timing', 'closed', '--propagator', 'effective',
                 '--kappas', '0', '--steps', '5', '--jobs', '1',
                 '--out', str(out)])
    assert code == EXIT_OK
    text = out.read_text()
    header = header_of(text)
    assert header['figure'] == 'fidelity of the qubit-photon-magnon GHZ ' \
        'state in time along the dissipation ladder'
    assert header['workflow'] == 'ghz'
    assert float(header['final_fidelity']) == pytest.approx(1.0, abs=1e-9)
    assert 'stage,time,P_g00' in text
