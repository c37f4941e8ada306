"""
.. module:: reporters
   :platform: Unix, Windows
   :synopsis: a module for writing reports and caching sweep results.

.. moduleauthor:: jpprym developers

.. _pandas.DataFrame: https://pandas.pydata.org/pandas-docs/stable/generated/pandas.DataFrame.html

"""

import hashlib
import json
import logging
import os
import sys

import numpy as np
import pandas as pd

from jpprym.utils import InputError

logger = logging.getLogger(__name__)


class _MultiStream:
    def __init__(self, outputs):
        self._outputs = list()
        for output in outputs:
            self._outputs.append(open(output, 'w') if isinstance(output, str) else output)

    def __del__(self):
        for output in self._outputs:
            if output != sys.stdout and output != sys.stderr:
                output.close()

    def write(self, message):
        for output in self._outputs:
            output.write(message)

    def flush(self):
        for output in self._outputs:
            output.flush()


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    # sympy numbers
    if hasattr(value, 'is_Integer') and value.is_Integer:
        return int(value)
    if hasattr(value, 'is_Rational') and value.is_Rational:
        return str(value)
    raise TypeError('%r is not JSON serializable' % (value,))


def canonical_json(document):
    """
    Serializes a report with sorted keys and no spaces, so equal reports give equal bytes.

    >>> canonical_json({'b': 1, 'a': [1, 2]})
    '{"a":[1,2],"b":1}'

    """
    return json.dumps(document, sort_keys=True, separators=(',', ':'), default=_default)


class _Reporter():
    """
    Base class for reporters.

    Parameters
    ----------
        file : str or file
            The output file or its name.

    Keyword Args
    ------------
        extraFile : str or file, default=None
            A second output receiving the same reports, such as `sys.stdout`.
        anchor : str, default=None
            The operation tag stored in every report under the key 'anchor'.
        reference : str, default=None
            The statement tag stored in every report under the key 'reference'.

    """
    def __init__(self, file, **kwargs):
        extraFile = kwargs.pop('extraFile', None)
        if extraFile is None:
            self._out = open(file, 'w') if isinstance(file, str) else file
        else:
            self._out = _MultiStream([file, extraFile])
        tags = {key: kwargs.pop(key, None) for key in ('anchor', 'reference')}
        self._tags = {key: value for key, value in tags.items() if value is not None}
        if kwargs:
            raise InputError('unknown keyword arguments: %s' % ', '.join(sorted(kwargs)))

    def _tag(self, document):
        missing = {key: value for key, value in self._tags.items() if key not in document}
        return dict(document, **missing) if missing else document

    def report(self, document):
        self._out.write(self._format(self._tag(document)))
        self._out.flush()


class JSONReporter(_Reporter):
    """
    Writes each report as one line of canonical JSON. A single call gives a JSON document and
    repeated calls give JSON Lines.

    """
    def _format(self, document):
        return canonical_json(document) + '\n'


class TableReporter(_Reporter):
    """
    Writes reports as rows of a tab-separated table through a pandas.DataFrame_. Nested values
    are stored as canonical JSON in their cells.

    Keyword Args
    ------------
        separator : str, default='\\t'
            The column separator.

    """
    def __init__(self, file, **kwargs):
        self._separator = kwargs.pop('separator', '\t')
        super().__init__(file, **kwargs)
        self._header = True

    def _format(self, document):
        return self.frame([document]).to_csv(sep=self._separator, index=False, header=self._header)

    def report(self, document):
        super().report(document)
        self._header = False

    @staticmethod
    def frame(documents):
        rows = []
        for document in documents:
            rows.append({key: value if isinstance(value, (str, int, float, bool)) or value is None
                         else canonical_json(value) for key, value in document.items()})
        return pd.DataFrame(rows)


class SweepCache(object):
    """
    A content-addressed store of sweep cells. The key of a cell is the SHA-256 digest of its
    canonical JSON together with the package version.

    Parameters
    ----------
        directory : str or None
            Where cells are stored. `None` disables the cache.
        version : str
            The code version tag mixed into every key.

    """
    def __init__(self, directory, version):
        self.directory = directory
        self.version = version
        self.hits = 0
        self.misses = 0
        if directory is not None:
            os.makedirs(directory, exist_ok=True)

    def key(self, cell):
        payload = canonical_json({'cell': cell, 'version': self.version})
        return hashlib.sha256(payload.encode('utf-8')).hexdigest()

    def _path(self, cell):
        return os.path.join(self.directory, self.key(cell) + '.json')

    def get(self, cell):
        if self.directory is None:
            return None
        path = self._path(cell)
        if not os.path.exists(path):
            self.misses += 1
            logger.info('cache miss for %s', canonical_json(cell))
            return None
        self.hits += 1
        logger.info('cache hit for %s', canonical_json(cell))
        with open(path) as stream:
            return json.load(stream)

    def put(self, cell, result):
        if self.directory is None:
            return
        path = self._path(cell)
        temporary = path + '.tmp'
        with open(temporary, 'w') as stream:
            stream.write(canonical_json(result))
        os.replace(temporary, path)
