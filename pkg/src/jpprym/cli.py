"""
.. module:: cli
   :platform: Unix, Windows
   :synopsis: the jpprym command-line interface.

.. moduleauthor:: jpprym developers

Every subcommand writes one JSON document (or one TSV row) to stdout and logs to stderr. Domain
errors exit with status 1 and a JSON document ``{"ok": false, "error": <code>, "message": ...}``;
usage errors exit with status 2 and print nothing on stdout. The ``sweep`` subcommand runs a grid
of cells and writes one JSON line per cell, in grid order.

"""

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field as datafield

import jpprym
from jpprym.cyclo import WeightVector
from jpprym.cyclo import params_from_lambdas
from jpprym.cyclo import params_from_weights
from jpprym.cyclo import reduce_params
from jpprym.cyclo import split_prime
from jpprym.exactalg import Involution
from jpprym.exactalg import Matrix
from jpprym.exactalg import field_make
from jpprym.forms import SignatureQuery
from jpprym.forms import invariant_form
from jpprym.forms import signature_formula
from jpprym.forms import signature_numeric
from jpprym.grpengine import classify
from jpprym.grpengine import pairwise_test
from jpprym.jprep import construct
from jpprym.jprep import verify
from jpprym.lifting import LiftParams
from jpprym.lifting import lie_detect
from jpprym.lifting import lift_params_from_weights
from jpprym.lifting import sl2_w2_split_test
from jpprym.lifting import span_full
from jpprym.prymstats import CoverCombinatorics
from jpprym.prymstats import SelmerQuery
from jpprym.prymstats import coset_burnside
from jpprym.prymstats import cover_genus
from jpprym.prymstats import expected_selmer
from jpprym.prymstats import fixed_space_average
from jpprym.prymstats import graph_torus_rank
from jpprym.prymstats import parse_graph
from jpprym.prymstats import prym_rank
from jpprym.prymstats import sl_orbit_count_bruteforce
from jpprym.prymstats import torus_rank
from jpprym.prymstats import unitary_group
from jpprym.prymstats import weight_dim
from jpprym.prymstats import wild_multiplicity
from jpprym.reporters import JSONReporter
from jpprym.reporters import SweepCache
from jpprym.reporters import TableReporter
from jpprym.utils import IllConditioned
from jpprym.utils import JPError
from jpprym.utils import PreconditionError
from jpprym.utils import Settings
from jpprym.utils import UsageError
from jpprym.utils import configure_logging
from jpprym.utils import parseIntegerList

logger = logging.getLogger(__name__)

SWEEP_OPS = ('verify', 'classify', 'dims', 'pairwise')


@dataclass(frozen=True)
class RunConfig:
    """
    A parsed invocation: the subcommand, its options and the shared flags.

    Parameters
    ----------
        command : str
            The subcommand, such as 'jp verify'.
        options : dict
            Subcommand options.
        seed : int, optional, default=0
            A 64-bit seed.
        output : str, optional, default='json'
            'json' or 'tsv'.
        settings : Settings, optional
            Tunables, including the cache directory.
        jobs : int, optional, default=1
            Concurrent sweep cells.

    """
    command: str
    options: dict = datafield(default_factory=dict)
    seed: int = 0
    output: str = 'json'
    settings: Settings = datafield(default_factory=Settings)
    jobs: int = 1


def _fold_seed(seed):
    # RandomState takes 32-bit seeds
    return (seed ^ (seed >> 32)) & 0xffffffff


def _integers(text):
    try:
        return parseIntegerList(text)
    except UsageError as error:
        raise argparse.ArgumentTypeError(error.msg)


def _seed(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError('the seed must be a 64-bit unsigned integer')
    return value


def _symbolic(options):
    if options.get('weights') is not None:
        return params_from_weights(WeightVector(options['N'], tuple(options['weights'])))
    if options.get('lambdas') is not None:
        return params_from_lambdas(options['N'], options['lambdas'])
    raise UsageError('either --weights or --lambdas is required')


def _residue_data(options):
    primes = split_prime(options['N'], options['prime'])
    index = options.get('prime_index', 0)
    if not 0 <= index < len(primes):
        raise UsageError('prime index %d out of range: %d prime(s) above %d' % (index, len(primes), options['prime']))
    return primes[index]


def _tuple(options, target='field'):
    symbolic = _symbolic(options)
    rd = _residue_data(options)
    params = reduce_params(symbolic, rd, options.get('embedding', 0), target)
    return construct(params), rd


def run_jp_verify(options, seed, settings):
    t, _ = _tuple(options, options.get('target', 'field'))
    report = verify(t, seed, settings)
    return dict(report.to_dict(), verified=report.ok)


def run_jp_build(options, seed, settings):
    t, _ = _tuple(options, options.get('target', 'field'))
    report = verify(t, seed, settings)
    return dict(report.to_dict(), verified=report.ok, gens=[g.tolist() for g in t.gens])


def run_forms_find(options, seed, settings):
    t, rd = _tuple(options, 'algebra')
    kind = options.get('involution') or rd.involution
    return invariant_form(t, Involution(kind, t.ring)).to_dict()


def _signature_query(options):
    if options.get('exponents'):
        return SignatureQuery(tuple(options['exponents']))
    if options.get('weights') is None:
        raise UsageError('either --exponents or --N with --weights is required')
    return SignatureQuery.from_weights(options['N'], options['weights'], options.get('d', 1))


def run_forms_signature(options, seed, settings):
    query = _signature_query(options)
    pos, neg = signature_formula(query)
    result = {'pos': pos, 'neg': neg, 'exponents': [str(a) for a in query.exponents]}
    try:
        numeric = signature_numeric(query, settings=settings)
    except IllConditioned as error:
        logger.warning('numeric signature failed: %s', error.msg)
        return dict(result, numeric=None, numeric_agree=False)
    return dict(result, numeric=list(numeric), numeric_agree=numeric == (pos, neg))


def run_classify(options, seed, settings):
    t, rd = _tuple(options)
    return classify(t, rd, seed, settings).to_dict()


def run_pairwise(options, seed, settings):
    symbolic = _symbolic(options)
    primes = split_prime(options['N'], options['prime'])
    indices = options.get('primes') or ([0, 1] if len(primes) > 1 else [0, 0])
    embeddings = options.get('embeddings') or ([0, 0] if indices[0] != indices[1] else [0, 1])
    if len(indices) != 2 or len(embeddings) != 2:
        raise UsageError('--primes and --embeddings take two values each')
    try:
        rd1, rd2 = primes[indices[0]], primes[indices[1]]
    except IndexError:
        raise UsageError('prime indices %s out of range: %d prime(s)' % (indices, len(primes)))
    for rd, which in ((rd1, embeddings[0]), (rd2, embeddings[1])):
        if not 0 <= which < len(rd.exponents):
            raise UsageError('embedding %d out of range' % which)
    return pairwise_test(symbolic, rd1, rd2, embeddings[0], embeddings[1], seed, settings)


def _lie_target(t):
    F = t.ring
    minus_one = int(F.neg(F.one))
    if all(int(x) == minus_one for x in t.params.values):
        return 'sp', invariant_form(t, Involution.IDENTITY).A
    if F.k % 2 == 0:
        q1 = F.p**(F.k//2)
        if all(int(F.pow(x, q1 + 1)) == F.one for x in t.params.values):
            return 'su', invariant_form(t, Involution.FROBENIUS_HALF).A
    return 'sl', None


def run_lift_detect(options, seed, settings):
    symbolic = _symbolic(options)
    rd = _residue_data(options)
    which = options.get('embedding', 0)
    if options.get('nus') is not None:
        lp = LiftParams(reduce_params(symbolic, rd, which), tuple(options['nus'])).validate()
    else:
        lp = lift_params_from_weights(symbolic, rd, which).validate()
    element = lie_detect(lp, seed, settings)
    result = {'nus': list(lp.nus), 'nus_equal': len(set(lp.nus)) == 1, 'found': element is not None}
    if element is None:
        return dict(result, word=None, trace=None, span_full=None, target=None)
    base = construct(lp.base)
    target = options.get('lie_target') or 'auto'
    if target == 'auto':
        target, form = _lie_target(base)
    else:
        form = None if target == 'sl' else _lie_target(base)[1]
    result.update(element.to_dict())
    return dict(result, target=target, span_full=span_full(element, base.gens, target, form))


def run_lift_sl2w2(options, seed, settings):
    degree = options.get('degree', 2)
    F = field_make(2, degree)
    generators = None
    if degree == 1:
        generators = [Matrix(F, [[1, 1], [0, 1]])]
    return sl2_w2_split_test(F, generators, not options.get('relax', False)).to_dict()


def run_prym_dims(options, seed, settings):
    N, weights, d = options['N'], options['weights'], options.get('d', 1)
    return {'weight_dim': weight_dim(N, d, weights), 'genus': cover_genus(N, weights),
            'prym_rank': prym_rank(N, len(weights), 0), 'd': d}


def run_prym_torus(options, seed, settings):
    if options.get('graph'):
        try:
            with open(options['graph']) as stream:
                graph = parse_graph(stream.read())
        except OSError as error:
            raise UsageError('cannot read graph file: %s' % error)
        cc = graph.combinatorics()
        rank = torus_rank(cc)
        oracle = graph_torus_rank(graph)
        return {'torus_rank': rank, 'graph_rank': oracle, 'agree': rank == oracle,
                'combinatorics': {'N': cc.N, 'b': cc.b, 'nn': cc.nn, 'c': cc.c, 'ii': cc.ii}}
    counts = [options.get(name) for name in ('N', 'b', 'nn', 'c', 'ii')]
    if None in counts:
        raise UsageError('either --graph or all of --N --b --nn --c --ii are required')
    return {'torus_rank': torus_rank(CoverCombinatorics(*counts))}


def run_prym_rank(options, seed, settings):
    return {'prym_rank': prym_rank(options['N'], options['points'], options['genus'])}


def run_prym_wildmult(options, seed, settings):
    return {'multiplicity': wild_multiplicity(options['g_cover'], options['g_sub'], options['p'], options['l'])}


def run_selmer_avg(options, seed, settings):
    query = SelmerQuery(options['l'], options.get('n', 3), options.get('q_mod_3', 1),
                        options.get('allow_l3', False))
    expected = expected_selmer(query)
    result = {'expected': expected}
    if options.get('brute'):
        l, n = query.l, query.n
        if l % 3 == 1:
            brute, method = sl_orbit_count_bruteforce(n, l, settings), 'sl_orbits'
        elif l % 3 == 2:
            brute, method = fixed_space_average(unitary_group(n, l, settings)), 'unitary_fixed_space'
        else:
            raise PreconditionError('no brute-force average for l = 3')
        result.update(brute=brute, method=method, agree=brute == expected)
    return result


def run_selmer_burnside(options, seed, settings):
    check = coset_burnside(options.get('n', 3), options.get('l', 2), settings)
    return {'average': check['twisted_fixed_points'], 'preserved_orbits': len(check['preserved_orbits']),
            'agree': check['agree']}


@dataclass(frozen=True)
class Operation:
    """
    A subcommand handler with the tags stored in its reports: `anchor` names the library
    operation and `reference` the mathematical statement it computes or checks.

    """
    handler: object
    anchor: str
    reference: str


HANDLERS = {
    'jp build': Operation(run_jp_build, 'jprep.construct',
                          'unique irreducible tuple of pseudo-reflections with prescribed eigenvalues'),
    'jp verify': Operation(run_jp_verify, 'jprep.verify',
                           'pseudo-reflections generating an irreducible group, with subset-product spectra'),
    'forms find': Operation(run_forms_find, 'forms.invariant_form',
                            'invariant anti-Hermitian form, unique up to scalars'),
    'forms signature': Operation(run_forms_signature, 'forms.signature',
                                 'signature of the invariant Hermitian form from fractional exponents'),
    'classify': Operation(run_classify, 'grpengine.classify',
                          'irreducible images generated by pseudo-reflections over finite fields'),
    'pairwise': Operation(run_pairwise, 'grpengine.pairwise_test',
                          'joint image at two primes is everything or the graph of an automorphism'),
    'lift detect': Operation(run_lift_detect, 'lifting.lie_detect',
                             'Lie algebra elements of the image over the dual numbers'),
    'lift sl2w2': Operation(run_lift_sl2w2, 'lifting.sl2_w2_split_test',
                            'SL2 over length-two Witt vectors of GF(4) does not split'),
    'prym dims': Operation(run_prym_dims, 'prymstats.weight_dim',
                           'dimension of the space of differentials of a given weight'),
    'prym torus': Operation(run_prym_torus, 'prymstats.torus_rank',
                            'dimension of the torus factor of the Prym of a nodal cover'),
    'prym rank': Operation(run_prym_rank, 'prymstats.prym_rank',
                           'rank of the Prym over a base of positive genus'),
    'prym wildmult': Operation(run_prym_wildmult, 'prymstats.wild_multiplicity',
                               'multiplicity of a wildly ramified point'),
    'selmer avg': Operation(run_selmer_avg, 'prymstats.expected_selmer',
                            'average Selmer size of elliptic surfaces with j = 0'),
    'selmer burnside': Operation(run_selmer_burnside, 'prymstats.burnside_coset_average',
                                 'Burnside lemma for a coset of a normal subgroup'),
}

SWEEP = Operation(None, 'cli.sweep', 'grid of sweep cells')

_SWEEP_COMMANDS = {'verify': 'jp verify', 'classify': 'classify', 'dims': 'prym dims', 'pairwise': 'pairwise'}


def _error_document(error, operation=None):
    document = {'ok': False, 'error': error.code, 'message': error.msg}
    if operation is not None:
        document.update(anchor=operation.anchor, reference=operation.reference)
    return document


def run_cell(cell, settings):
    """
    Evaluates one sweep cell. Domain errors become error documents, so one failing cell never
    aborts the sweep.

    """
    operation = HANDLERS[_SWEEP_COMMANDS[cell['op']]]
    options = {'N': cell['N'], 'weights': cell['weights'], 'prime': cell.get('prime'), 'embedding': 0}
    try:
        result = operation.handler(options, _fold_seed(cell.get('seed', 0)), settings)
    except JPError as error:
        return _error_document(error, operation)
    return dict(result, ok=True, anchor=operation.anchor, reference=operation.reference)


def _sweep_cells(options, seed):
    if options.get('grid'):
        try:
            with open(options['grid']) as stream:
                grid = json.load(stream)
        except (OSError, ValueError) as error:
            raise UsageError('cannot read grid file: %s' % error)
    else:
        grid = {'op': options.get('op'), 'N': options.get('N_values'), 'weights': options.get('weight_lists'),
                'primes': options.get('primes')}
    op = grid.get('op') or 'classify'
    if op not in SWEEP_OPS:
        raise UsageError('unknown sweep op %r, expected one of %s' % (op, ', '.join(SWEEP_OPS)))
    Ns, weights = grid.get('N') or [], grid.get('weights') or []
    primes = grid.get('primes') or ([None] if op == 'dims' else [])
    if not Ns or not weights or not primes:
        raise UsageError('the grid needs N, weights and primes')
    cells = []
    for N in Ns:
        for w in weights:
            for p in primes:
                cells.append({'op': op, 'N': int(N), 'weights': [int(x) for x in w],
                              'prime': None if p is None else int(p), 'seed': seed})
    return cells


def sweep(config, reporter):
    """
    Runs the grid of a sweep, reusing cached cells, and reports one line per cell in grid order.
    Each cell is cached and reported as soon as it and every earlier cell are done. If a cell
    raises, finished cells are cached before the error propagates.

    Returns
    -------
        (int, int)
            Cache hits and misses.

    """
    cells = _sweep_cells(config.options, config.seed)
    cache = SweepCache(config.settings.cache_dir, jpprym.__version__)
    results = [cache.get(cell) for cell in cells]
    pending = [i for i, result in enumerate(results) if result is None]
    executor, futures = None, {}
    if config.jobs > 1 and len(pending) > 1:
        executor = ProcessPoolExecutor(max_workers=config.jobs)
        futures = {i: executor.submit(run_cell, cells[i], config.settings) for i in pending}
    try:
        for i, cell in enumerate(cells):
            if results[i] is None:
                result = futures[i].result() if i in futures else run_cell(cell, config.settings)
                cache.put(cell, result)
                results[i] = result
            reporter.report({'cell': cell, 'result': results[i]})
    except BaseException:
        for future in futures.values():
            future.cancel()
        if executor is not None:
            executor.shutdown(wait=True)
        for i, future in futures.items():
            if results[i] is None and future.done() and not future.cancelled() and future.exception() is None:
                cache.put(cells[i], future.result())
        logger.error('sweep aborted after %d of %d cells', sum(r is not None for r in results), len(cells))
        raise
    if executor is not None:
        executor.shutdown(wait=True)
    logger.info('sweep finished: %d cells, %d cache hits', len(cells), cache.hits)
    return cache.hits, cache.misses


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=_seed, default=0, help='64-bit seed of every randomized step (default: 0)')
    common.add_argument('--output', choices=['json', 'tsv'], default='json', help='report format')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG on stderr')
    common.add_argument('--jobs', type=int, default=1, help='concurrent sweep cells')
    common.add_argument('--cache-dir', default=None, help='sweep cache directory (overrides JPPRYM_CACHE_DIR)')
    return common


def _add_params(parser, prime=True):
    parser.add_argument('--N', type=int, required=True, help='order of the cyclic group')
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--weights', type=_integers, help='weights m0,m1,... of the cover')
    group.add_argument('--lambdas', type=_integers, help='parameters as exponents e0,e1,... of zeta_N')
    if prime:
        parser.add_argument('--prime', type=int, required=True, help='rational prime p')
        parser.add_argument('--prime-index', type=int, default=0, help='which prime of the real subfield above p')
        parser.add_argument('--embedding', type=int, default=0, help='which embedding of a split prime')


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='jpprym', description='Jordan-Pochhammer monodromy of cyclic Pryms.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + jpprym.__version__)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def leaf(subparsers, name, command, help):
        p = subparsers.add_parser(name, parents=[common], help=help)
        p.set_defaults(full_command=command)
        return p

    jp = commands.add_parser('jp', help='construct and verify tuples').add_subparsers(dest='action', metavar='action')
    jp.required = True
    for name in ('build', 'verify'):
        p = leaf(jp, name, 'jp ' + name, '%s the tuple reduced at a prime' % name)
        _add_params(p)
        p.add_argument('--target', choices=['field', 'algebra', 'dual'], default='field', help='reduction target')

    forms = commands.add_parser('forms', help='invariant forms').add_subparsers(dest='action', metavar='action')
    forms.required = True
    p = leaf(forms, 'find', 'forms find', 'invariant form at a prime')
    _add_params(p)
    p.add_argument('--involution', choices=[Involution.IDENTITY, Involution.FROBENIUS_HALF, Involution.SWAP_FACTORS],
                   default=None, help='defaults to the involution of the prime')
    p = leaf(forms, 'signature', 'forms signature', 'signature of the complex Hermitian form')
    p.add_argument('--exponents', type=lambda text: [x for x in text.split(',') if x.strip()],
                   help='rational exponents a0,a1,... in (0, 1)')
    p.add_argument('--N', type=int)
    p.add_argument('--weights', type=_integers)
    p.add_argument('--d', type=int, default=1, help='eigenspace zeta^d')

    p = leaf(commands, 'classify', 'classify', 'classify the image at a prime')
    _add_params(p)
    p = leaf(commands, 'pairwise', 'pairwise', 'joint image at two primes or embeddings')
    _add_params(p)
    p.add_argument('--primes', type=_integers, default=None, help='two prime indices')
    p.add_argument('--embeddings', type=_integers, default=None, help='two embedding indices')

    lift = commands.add_parser('lift', help='lifting detectors').add_subparsers(dest='action', metavar='action')
    lift.required = True
    p = leaf(lift, 'detect', 'lift detect', 'search for a Lie algebra element over dual numbers')
    _add_params(p)
    p.add_argument('--nus', type=_integers, default=None, help='nu_0,nu_1,... (derived from the weights by default)')
    p.add_argument('--lie-target', choices=['auto', 'sl', 'su', 'sp'], default='auto')
    p = leaf(lift, 'sl2w2', 'lift sl2w2', 'splitting test over length-two Witt vectors')
    p.add_argument('--degree', type=int, choices=[1, 2], default=2, help='residue field GF(2^degree)')
    p.add_argument('--relax', action='store_true', help='drop the commuting condition')

    prym = commands.add_parser('prym', help='Prym counting formulas').add_subparsers(dest='action', metavar='action')
    prym.required = True
    p = leaf(prym, 'dims', 'prym dims', 'eigenspace dimension, genus and Prym rank')
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--weights', type=_integers, required=True)
    p.add_argument('--d', type=int, default=1)
    p = leaf(prym, 'torus', 'prym torus', 'torus rank from orbit counts or a graph file')
    p.add_argument('--graph', default=None, help='equivariant graph file')
    for name in ('N', 'b', 'nn', 'c', 'ii'):
        p.add_argument('--' + name, type=int, default=None)
    p = leaf(prym, 'rank', 'prym rank', 'Prym rank over a base curve')
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--points', type=int, required=True, help='number of ramification points')
    p.add_argument('--genus', type=int, default=0, help='genus of the base')
    p = leaf(prym, 'wildmult', 'prym wildmult', 'multiplicity of a wild point')
    p.add_argument('--g-cover', type=int, required=True)
    p.add_argument('--g-sub', type=int, required=True)
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--l', type=int, required=True)

    selmer = commands.add_parser('selmer', help='Selmer averages').add_subparsers(dest='action', metavar='action')
    selmer.required = True
    p = leaf(selmer, 'avg', 'selmer avg', 'expected Selmer size')
    p.add_argument('--l', type=int, required=True)
    p.add_argument('--n', type=int, default=3)
    p.add_argument('--q-mod-3', type=int, default=1, help='base field size modulo 3; only 1 has a known limit')
    p.add_argument('--allow-l3', action='store_true')
    p.add_argument('--brute', action='store_true', help='compare with a brute-force average')
    p = leaf(selmer, 'burnside', 'selmer burnside', 'coset Burnside check on V + V*')
    p.add_argument('--n', type=int, default=3)
    p.add_argument('--l', type=int, default=2)

    p = leaf(commands, 'sweep', 'sweep', 'run a grid of cells as JSON Lines')
    p.add_argument('--grid', default=None, help='JSON grid file')
    p.add_argument('--op', choices=SWEEP_OPS, default=None)
    p.add_argument('--N', dest='N_values', type=int, nargs='+', default=None)
    p.add_argument('--weights', dest='weight_lists', type=_integers, nargs='+', default=None)
    p.add_argument('--primes', type=int, nargs='+', default=None)
    return parser


_SHARED = ('command', 'action', 'full_command', 'seed', 'output', 'verbose', 'jobs', 'cache_dir')


def parse(argv=None):
    """Parses command-line arguments into a :class:`RunConfig`; usage errors raise `SystemExit(2)`."""
    args = build_parser().parse_args(argv)
    options = {key: value for key, value in vars(args).items() if key not in _SHARED}
    try:
        settings = Settings.from_env(cache_dir=args.cache_dir)
    except UsageError as error:
        print('jpprym: error: %s' % error.msg, file=sys.stderr)
        raise SystemExit(2)
    if args.jobs < 1:
        print('jpprym: error: --jobs must be positive', file=sys.stderr)
        raise SystemExit(2)
    configure_logging(args.verbose)
    return RunConfig(args.full_command, options, args.seed, args.output, settings, args.jobs)


def dispatch(config, stream=None):
    """
    Runs a parsed command and writes its report.

    Returns
    -------
        int
            0 on success, 1 on a domain error and 2 on a usage error.

    """
    stream = sys.stdout if stream is None else stream
    operation = SWEEP if config.command == 'sweep' else HANDLERS[config.command]
    reporter = (TableReporter if config.output == 'tsv' else JSONReporter)(stream, anchor=operation.anchor,
                                                                            reference=operation.reference)
    try:
        if config.command == 'sweep':
            sweep(config, reporter)
            return 0
        result = operation.handler(config.options, _fold_seed(config.seed), config.settings)
    except UsageError as error:
        print('jpprym: error: %s' % error.msg, file=sys.stderr)
        return 2
    except JPError as error:
        logger.debug('%s: %s', error.code, error.msg)
        reporter.report(_error_document(error))
        return 1
    reporter.report(dict(result, ok=True))
    return 0


def main(argv=None):
    try:
        config = parse(argv)
    except SystemExit as error:
        return error.code
    return dispatch(config)
