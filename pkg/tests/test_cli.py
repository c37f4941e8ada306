import io
import json
from concurrent.futures import ThreadPoolExecutor

import pytest

import jpprym

from jpprym import cli
from jpprym.cli import HANDLERS
from jpprym.cli import main
from jpprym.cli import parse
from jpprym.reporters import JSONReporter
from jpprym.reporters import SweepCache


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_verify_reports_the_checks(capsys):
    status, out = run(capsys, 'jp', 'verify', '--N', '2', '--weights', '1,1,1,1', '--prime', '5')
    assert status == 0
    document = json.loads(out)
    assert document['ok'] and document['verified']
    assert document['anchor'] == 'jprep.verify'
    assert document['reference'] == HANDLERS['jp verify'].reference
    assert document['params']['lambda0'] == 4
    assert document['params']['lambdas'] == [4, 4, 4]
    assert all(document['checks'].values())


def test_selmer_average(capsys):
    status, out = run(capsys, 'selmer', 'avg', '--l', '7')
    assert status == 0
    assert json.loads(out)['expected'] == 10


def test_prym_dims_as_a_table(capsys):
    status, out = run(capsys, 'prym', 'dims', '--N', '3', '--weights', '1,1,1,1,1,1', '--output', 'tsv')
    assert status == 0
    header, row = out.splitlines()
    values = dict(zip(header.split('\t'), row.split('\t')))
    assert values['genus'] == '4'
    assert values['weight_dim'] == '3'


def test_domain_error_exits_with_one(capsys):
    status, out = run(capsys, 'prym', 'rank', '--N', '5', '--points', '1')
    assert status == 1
    document = json.loads(out)
    assert document == {'ok': False, 'error': 'NegativeRank', 'message': document['message'],
                        'anchor': 'prymstats.prym_rank', 'reference': 'rank of the Prym over a base of positive genus'}


@pytest.mark.parametrize('argv', [
    ['prym', 'torus'],
    ['selmer', 'avg'],
    ['jp', 'verify', '--N', '2', '--weights', '1,x', '--prime', '5'],
    ['classify', '--N', '7', '--weights', '1,1,1,4', '--prime', '2', '--prime-index', '3'],
    ])
def test_usage_errors_print_nothing_on_stdout(capsys, argv):
    status, out = run(capsys, *argv)
    assert status == 2
    assert out == ''


def test_parse_builds_a_run_config():
    config = parse(['selmer', 'avg', '--l', '5', '--seed', '7'])
    assert config.command == 'selmer avg'
    assert config.seed == 7
    assert config.options['l'] == 5


def test_sweep_reuses_cached_cells(capsys, tmp_path):
    argv = ['sweep', '--op', 'dims', '--N', '3', '--weights', '1,1,1,1,1,1', '1,1,2,2',
            '--cache-dir', str(tmp_path)]
    status, first = run(capsys, *argv)
    assert status == 0
    lines = [json.loads(line) for line in first.splitlines()]
    assert [line['cell']['weights'] for line in lines] == [[1, 1, 1, 1, 1, 1], [1, 1, 2, 2]]
    assert all(line['result']['ok'] for line in lines)
    assert len(list(tmp_path.iterdir())) == 2
    status, second = run(capsys, *argv)
    assert status == 0
    assert second == first


def test_every_operation_names_its_statement():
    for operation in HANDLERS.values():
        assert operation.anchor.split('.')[0] in ('jprep', 'forms', 'grpengine', 'lifting', 'prymstats')
        assert operation.reference


def test_aborted_parallel_sweep_keeps_finished_cells(monkeypatch, tmp_path):
    run_cell = cli.run_cell

    def failing(cell, settings):
        if cell['weights'] == [1, 1, 2, 2]:
            raise RuntimeError('worker crashed')
        return run_cell(cell, settings)

    monkeypatch.setattr(cli, 'ProcessPoolExecutor', ThreadPoolExecutor)
    monkeypatch.setattr(cli, 'run_cell', failing)
    config = parse(['sweep', '--op', 'dims', '--N', '3', '--weights', '1,1,1,1,1,1', '1,1,2,2', '2,2,2,2,2,2',
                    '--jobs', '2', '--cache-dir', str(tmp_path)])
    stream = io.StringIO()
    with pytest.raises(RuntimeError):
        cli.sweep(config, JSONReporter(stream))
    lines = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert [line['cell']['weights'] for line in lines] == [[1, 1, 1, 1, 1, 1]]
    cache = SweepCache(str(tmp_path), jpprym.__version__)
    assert cache.get(lines[0]['cell']) == lines[0]['result']
    assert 1 <= len(list(tmp_path.iterdir())) <= 2
