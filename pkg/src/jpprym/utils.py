"""
.. module:: utils
   :platform: Unix, Windows
   :synopsis: a module for auxiliary tasks: errors, settings and logging.

.. moduleauthor:: jpprym developers

"""

import logging
import os
import sys
from dataclasses import dataclass
from dataclasses import replace

logger = logging.getLogger(__name__)


class JPError(Exception):
    """
    Base class of every domain error raised by jpprym.

    The class name doubles as a stable error code, which the command-line interface reports in
    its JSON output.

    """
    def __init__(self, msg):
        super(JPError, self).__init__(msg)
        self.msg = msg

    @property
    def code(self):
        return type(self).__name__

    def __str__(self):
        if sys.stderr.isatty():
            return '\033[1;31m' + self.msg + '\033[0m'
        return self.msg


class InputError(JPError):
    """Raised when the caller passes data that violates a documented precondition."""


class PreconditionError(InputError):
    pass


class UsageError(InputError):
    pass


class NonPrime(InputError):
    pass


class BadWeights(InputError):
    pass


class BadWeight(InputError):
    pass


class BadTarget(InputError):
    pass


class RankTooSmall(InputError):
    pass


class NotAField(JPError):
    pass


class Singular(JPError):
    pass


class NotInvertible(JPError):
    pass


class DegenerateParameter(JPError):
    pass


class DegenerateParams(JPError):
    pass


class NoSolution(JPError):
    pass


class DegenerateRestriction(JPError):
    pass


class NoForm(JPError):
    pass


class NonUnique(JPError):
    pass


class IllConditioned(JPError):
    pass


class TooLarge(JPError):
    pass


class NegativeRank(JPError):
    pass


class NonIntegral(JPError):
    pass


class NotNormal(JPError):
    pass


@dataclass(frozen=True)
class Settings:
    """
    Tunable limits shared by the group engine, the irreducibility test, the lifting detectors and
    the command-line front end.

    Parameters
    ----------
        orbit_cap : int, optional, default=2**24
            Largest orbit accepted while building a base and strong generating set.
        word_cap : int, optional, default=64
            Longest random word used for verification and conjugate searches.
        meataxe_attempts : int, optional, default=64
            Random algebra elements tried before an irreducibility test gives up.
        stable_sifts : int, optional, default=32
            Consecutive trivial sifts that end the randomized Schreier-Sims loop.
        verify_words : int, optional, default=32
            Random words sifted after a BSGS is built.
        conjugate_budget : int, optional, default=2000
            Random conjugators tried by the transvection-conjugate detector.
        signature_tol : float, optional, default=1e-8
            Singular-value gap used by the floating-point signature oracle.
        brute_force_cap : int, optional, default=10**7
            Largest group enumerated by the brute-force Selmer averages.
        cache_dir : str, optional, default=None
            Directory of the sweep result cache. `None` disables caching.

    """
    orbit_cap: int = 2**24
    word_cap: int = 64
    meataxe_attempts: int = 64
    stable_sifts: int = 32
    verify_words: int = 32
    conjugate_budget: int = 2000
    signature_tol: float = 1e-8
    brute_force_cap: int = 10**7
    cache_dir: str = None

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """
        Builds settings from the defaults, overlaid by the environment variables
        ``JPPRYM_CACHE_DIR``, ``JPPRYM_ORBIT_CAP`` and ``JPPRYM_WORD_CAP``, and finally by any
        explicit keyword arguments whose value is not `None`.

        """
        environ = os.environ if environ is None else environ
        values = dict()
        if environ.get('JPPRYM_CACHE_DIR'):
            values['cache_dir'] = environ['JPPRYM_CACHE_DIR']
        for name, key in [('orbit_cap', 'JPPRYM_ORBIT_CAP'), ('word_cap', 'JPPRYM_WORD_CAP')]:
            if environ.get(key):
                try:
                    values[name] = int(environ[key])
                except ValueError:
                    raise UsageError('environment variable %s must be an integer' % key)
        values.update((name, value) for name, value in overrides.items() if value is not None)
        return replace(cls(), **values)


DEFAULTS = Settings()


def settingsOrDefault(settings):
    return DEFAULTS if settings is None else settings


def configure_logging(verbosity=0, stream=None):
    """
    Attaches a stderr handler to the package logger. Only the command-line front end calls this;
    library code never configures handlers.

    Parameters
    ----------
        verbosity : int, optional, default=0
            0 for warnings only, 1 for INFO and 2 or more for DEBUG.

    """
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    root = logging.getLogger('jpprym')
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr if stream is None else stream)
    handler.setFormatter(logging.Formatter('%(asctime)s %(name)s %(levelname)s: %(message)s'))
    root.addHandler(handler)
    root.setLevel(level)
    return root


def parseIntegerList(text):
    """
    Converts a comma-separated string such as ``'1,1,-2'`` into a list of integers.

    >>> parseIntegerList('1, 2,3')
    [1, 2, 3]

    """
    try:
        return [int(item) for item in str(text).split(',') if item.strip()]
    except ValueError:
        raise UsageError('expected a comma-separated list of integers, got %r' % text)
