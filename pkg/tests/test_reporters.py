import io
import json

import pytest

from jpprym.reporters import JSONReporter
from jpprym.reporters import SweepCache
from jpprym.reporters import TableReporter
from jpprym.reporters import canonical_json
from jpprym.utils import InputError


def test_canonical_json_is_byte_stable():
    assert canonical_json({'b': 1, 'a': [1, 2]}) == canonical_json({'a': [1, 2], 'b': 1})
    assert canonical_json({'x': {3, 1, 2}}) == '{"x":[1,2,3]}'


def test_json_reporter_tags_every_report():
    stream = io.StringIO()
    reporter = JSONReporter(stream, anchor='jprep.verify')
    reporter.report({'ok': True})
    reporter.report({'ok': False, 'anchor': 'cli.sweep'})
    assert stream.getvalue().splitlines() == ['{"anchor":"jprep.verify","ok":true}',
                                              '{"anchor":"cli.sweep","ok":false}']


def test_json_reporter_adds_the_reference():
    stream = io.StringIO()
    reporter = JSONReporter(stream, anchor='prymstats.prym_rank', reference='rank of the Prym')
    reporter.report({'ok': True, 'reference': 'kept'})
    reporter.report({'ok': True})
    first, second = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert first['reference'] == 'kept'
    assert second == {'ok': True, 'anchor': 'prymstats.prym_rank', 'reference': 'rank of the Prym'}


def test_json_reporter_with_extra_file():
    first, second = io.StringIO(), io.StringIO()
    JSONReporter(first, extraFile=second).report({'n': 2})
    assert first.getvalue() == second.getvalue() == '{"n":2}\n'


def test_unknown_keyword():
    with pytest.raises(InputError):
        JSONReporter(io.StringIO(), anchr='x')


def test_table_reporter_writes_one_header():
    stream = io.StringIO()
    reporter = TableReporter(stream)
    reporter.report({'a': 1, 'b': [1, 2]})
    reporter.report({'a': 2, 'b': [3]})
    assert stream.getvalue().splitlines() == ['a\tb', '1\t[1,2]', '2\t[3]']


def test_sweep_cache(tmp_path):
    cache = SweepCache(str(tmp_path), '1.0')
    cell = {'op': 'dims', 'N': 3, 'weights': [1, 1, 1, 1, 1, 1]}
    assert cache.get(cell) is None
    cache.put(cell, {'genus': 4})
    assert cache.get(cell) == {'genus': 4}
    assert (cache.hits, cache.misses) == (1, 1)
    assert SweepCache(str(tmp_path), '1.1').key(cell) != cache.key(cell)
    disabled = SweepCache(None, '1.0')
    disabled.put(cell, {'genus': 4})
    assert disabled.get(cell) is None
