"""
.. module:: grpengine
   :platform: Unix, Windows
   :synopsis: a finite matrix group engine with classification of Jordan-Pochhammer images.

.. moduleauthor:: jpprym developers

Matrix groups over finite fields act on row vectors from the right, :math:`v \\mapsto v g`. A
base and strong generating set (:class:`BSGS`) is built by the randomized Schreier-Sims method,
using standard basis vectors as base points, and then verified by sifting random words. Group
orders obtained this way are compared with the orders of the classical groups to classify the
images of Jordan-Pochhammer tuples.

"""

import functools
import itertools
import logging
from dataclasses import dataclass
from dataclasses import field as datafield
from math import gcd

import numpy as np
from sympy import Rational
from sympy import floor

from jpprym.cyclo import JPParams
from jpprym.cyclo import SymbolicParams
from jpprym.cyclo import reduce_params
from jpprym.exactalg import Involution
from jpprym.exactalg import Matrix
from jpprym.exactalg import SplitAlgebra
from jpprym.forms import invariant_form
from jpprym.jprep import JPTuple
from jpprym.jprep import construct
from jpprym.jprep import meataxe
from jpprym.utils import InputError
from jpprym.utils import NoForm
from jpprym.utils import NonUnique
from jpprym.utils import NotAField
from jpprym.utils import TooLarge
from jpprym.utils import settingsOrDefault

logger = logging.getLogger(__name__)

_CHUNK = 4096

LINEAR_RANGE = 'LinearRange'
UNITARY_RANGE = 'UnitaryRange'
SYMPLECTIC = 'Symplectic'
ORTHOGONAL_RANGE = 'OrthogonalRange'
EXTENDED_SL2 = 'ExtendedSL2'
COMPLEX_REFLECTION_FINITE = 'ComplexReflectionFinite'
SYMMETRIC_SPN = 'SymmetricSpn'
SPORADIC = 'Sporadic'
REDUCIBLE = 'Reducible'
UNKNOWN = 'Unknown'

SURJECTIVE = 'Surjective'
GRAPH = 'Graph'
DEGENERATE = 'Degenerate'


class _Level(object):
    def __init__(self, ring, point):
        self.ring = ring
        self.point = point
        self.gens = []
        self.index = {point.tobytes(): 0}
        self.points = [point]
        n = point.size
        identity = np.eye(n, dtype=ring.dtype)*ring.one
        self.u = [identity]
        self.u_inv = [identity]

    @property
    def size(self):
        return len(self.points)

    def add_generator(self, g, g_inv, cap):
        self.gens.append((g, g_inv))
        self._extend(list(range(self.size)), [(g, g_inv)], cap)

    def _extend(self, frontier, gens, cap):
        ring = self.ring
        while frontier:
            found = []
            for g, g_inv in gens:
                for start in range(0, len(frontier), _CHUNK):
                    chunk = frontier[start:start+_CHUNK]
                    images = ring.matmul(np.stack([self.points[i] for i in chunk]), g)
                    fresh = []
                    for i, image in zip(chunk, images):
                        key = image.tobytes()
                        if key not in self.index:
                            self.index[key] = len(self.points)
                            self.points.append(image)
                            fresh.append(i)
                    if not fresh:
                        continue
                    if len(self.points) > cap:
                        raise TooLarge('orbit exceeds %d points' % cap)
                    u = ring.matmul(np.stack([self.u[i] for i in fresh]), g)
                    u_inv = ring.matmul(g_inv, np.stack([self.u_inv[i] for i in fresh]))
                    found.extend(range(len(self.u), len(self.u) + len(fresh)))
                    self.u.extend(u)
                    self.u_inv.extend(u_inv)
            frontier = found
            gens = self.gens


class BSGS(object):
    """
    A base and strong generating set of a matrix group over a finite field.

    Parameters
    ----------
        gens : list(Matrix)
            Invertible square matrices over the same field.
        seed : int, optional, default=0
            Seed of the product-replacement random elements.
        settings : Settings, optional, default=None
            Supplies `orbit_cap`, `word_cap`, `stable_sifts` and `verify_words`.

    """
    def __init__(self, gens, seed=0, settings=None):
        if not gens:
            raise InputError('a group needs at least one generator')
        ring = gens[0].ring
        if not ring.is_field:
            raise NotAField('groups are built over fields, got %r' % ring)
        self.ring = ring
        self.n = gens[0].rows
        self.gens = [g.data for g in gens]
        self._settings = settingsOrDefault(settings)
        self._rng = np.random.RandomState(seed)
        self.levels = []
        self._identity = Matrix.identity(ring, self.n).data
        self._build()

    @property
    def base(self):
        return [level.point for level in self.levels]

    @property
    def strong_gens(self):
        seen, result = set(), []
        for level in self.levels:
            for g, _ in level.gens:
                if g.tobytes() not in seen:
                    seen.add(g.tobytes())
                    result.append(Matrix(self.ring, g))
        return result

    @property
    def orbit_sizes(self):
        return [level.size for level in self.levels]

    @property
    def order(self):
        return functools.reduce(lambda a, b: a*b, self.orbit_sizes, 1)

    def sift(self, g):
        """
        Returns the residue of `g` and the depth where sifting stopped. A group element sifts to
        the identity at depth `len(levels)`.

        """
        ring = self.ring
        h = np.asarray(g)
        for depth, level in enumerate(self.levels):
            image = ring.matmul(level.point[None, :], h)[0]
            position = level.index.get(image.tobytes())
            if position is None:
                return h, depth
            h = ring.matmul(h, level.u_inv[position])
        return h, len(self.levels)

    def contains(self, g):
        data = g.data if isinstance(g, Matrix) else g
        h, depth = self.sift(data)
        return depth == len(self.levels) and np.array_equal(h, self._identity)

    def _add(self, h):
        h, depth = self.sift(h)
        if depth == len(self.levels):
            if np.array_equal(h, self._identity):
                return False
            moved = np.nonzero(np.any(h != self._identity, axis=1))[0][0]
            self.levels.append(_Level(self.ring, self._identity[moved].copy()))
        h_inv = Matrix(self.ring, h).inverse().data
        cap = self._settings.orbit_cap
        for level in self.levels[:depth + 1]:
            level.add_generator(h, h_inv, cap)
        logger.debug('sift failed at depth %d; orbit sizes now %s', depth, self.orbit_sizes)
        return True

    def _random_elements(self):
        ring = self.ring
        rng = self._rng
        state = [self.gens[i % len(self.gens)] for i in range(max(10, len(self.gens)))]
        accumulator = self._identity
        warmup = 50
        while True:
            i, j = rng.choice(len(state), 2, replace=False)
            state[i] = ring.matmul(state[i], state[j]) if rng.randint(2) else ring.matmul(state[j], state[i])
            accumulator = ring.matmul(accumulator, state[i])
            if warmup:
                warmup -= 1
            else:
                yield accumulator

    def _random_word(self):
        rng = self._rng
        word = self._identity
        for _ in range(rng.randint(1, self._settings.word_cap + 1)):
            word = self.ring.matmul(word, self.gens[rng.randint(len(self.gens))])
        return word

    def _build(self):
        settings = self._settings
        for g in self.gens:
            self._add(g)
        elements = self._random_elements()
        while True:
            stable = 0
            while stable < settings.stable_sifts:
                stable = 0 if self._add(next(elements)) else stable + 1
            failures = sum(self._add(g) for g in self.gens)
            failures += sum(self._add(self._random_word()) for _ in range(settings.verify_words))
            if not failures:
                break
        for depth, size in enumerate(self.orbit_sizes):
            logger.info('BSGS level %d: orbit of size %d', depth, size)


def bsgs_build(gens, seed=0, settings=None):
    return BSGS(gens, seed, settings)


def classical_order(family, n, q):
    """
    Orders of the finite classical groups. For the unitary groups `q` is the size of the fixed
    field, so :math:`\\mathrm{GU}_n(q) \\subset \\mathrm{GL}_n(q^2)`.

    >>> classical_order('SL', 2, 5)
    120
    >>> classical_order('GU', 3, 2), classical_order('SU', 3, 2)
    (648, 216)

    """
    if n < 1 or q < 2:
        raise InputError('invalid classical group dimensions')
    if family in ('GL', 'SL'):
        order = q**(n*(n - 1)//2)
        for i in range(1, n + 1):
            order *= q**i - 1
        return order if family == 'GL' else order//(q - 1)
    if family in ('GU', 'SU'):
        order = q**(n*(n - 1)//2)
        for i in range(1, n + 1):
            order *= q**i - (-1)**i
        return order if family == 'GU' else order//(q + 1)
    if family == 'Sp':
        if n % 2:
            raise InputError('symplectic groups need even dimension, got %d' % n)
        m = n//2
        order = q**(m*m)
        for i in range(1, m + 1):
            order *= q**(2*i) - 1
        return order
    raise InputError('unknown classical family %r' % family)


def _frac(x):
    return x - floor(x)


def canonical_key(params):
    """
    Canonical form of symbolic parameters up to reordering :math:`\\lambda_1, \\dots,
    \\lambda_{n+1}` and Galois conjugation :math:`\\zeta \\mapsto \\zeta^l`.

    """
    N = params.N
    keys = []
    for l in range(1, N):
        if gcd(l, N) != 1:
            continue
        fracs = [_frac(Rational(l*e, N)) for e in params.exponents]
        keys.append((params.n, fracs[0], tuple(sorted(fracs[1:]))))
    return min(keys)


class ExceptionRegistry(object):
    """
    The finite complex reflection groups that occur as Jordan-Pochhammer monodromy in ranks 3
    and 4. The orthogonal groups without reflections are excluded by the classification and
    have no entries.

    """
    ENTRIES = [((6, (2, 1, 1, 1, 1)), '3^{1+2}.2'),
               ((6, (1, 2, 1, 1, 1)), 'ST26'),
               ((6, (1, 1, 1, 1, 1, 1)), 'ST32')]

    def __init__(self, entries=None):
        self.entries = dict()
        for (N, exponents), name in (self.ENTRIES if entries is None else entries):
            self.entries[canonical_key(SymbolicParams(N, exponents))] = name

    def lookup(self, params):
        if params is None:
            return None
        return self.entries.get(canonical_key(params))


REGISTRY = ExceptionRegistry()


@dataclass
class ClassificationResult:
    verdict: str
    evidence: dict = datafield(default_factory=dict)
    name: str = None

    def to_dict(self):
        result = {'verdict': self.verdict, 'evidence': self.evidence}
        if self.name is not None:
            result['name'] = self.name
        return result


def det_image_order(gens):
    """Order of the cyclic group generated by the determinants."""
    ring = gens[0].ring
    order = 1
    for g in gens:
        m = ring.multiplicative_order(g.det())
        order = order*m//gcd(order, m)
    return order


def scalar_subgroup_order(group):
    """Number of scalar matrices in the group."""
    ring = group.ring
    count = 0
    for c in range(1, ring.size):
        if group.contains(Matrix.scalar(ring, group.n, c)):
            count += 1
    return count


def _subfield_degree(ring, values):
    degree = 1
    for x in values:
        d = ring.degree(x)
        degree = degree*d//gcd(degree, d)
    return degree


def kprime_report(t):
    """
    Values :math:`\\mathrm{tr}(g)^2/\\det(g)` for the generators and their pairwise products, which
    generate the field of definition of the projective image of a rank 2 tuple.

    """
    ring = t.ring
    values = []
    elements = list(t.gens) + [g @ h for g, h in itertools.combinations(t.gens, 2)]
    for g in elements:
        trace = g.trace()
        values.append(int(ring.mul(ring.mul(trace, trace), ring.inv(g.det()))))
    return {'values': values, 'degree': _subfield_degree(ring, values)}


def form_evidence(t):
    """
    Kind and sign of the invariant form of an irreducible tuple over a field: 'alternating' or
    'symmetric' for bilinear forms and 'hermitian' for sesquilinear forms over a field of even
    degree. All entries are `None` when no nondegenerate form exists.

    """
    ring = t.ring
    kinds = [Involution.IDENTITY]
    if ring.k % 2 == 0:
        kinds.append(Involution.FROBENIUS_HALF)
    for kind in kinds:
        try:
            form = invariant_form(t, kind)
        except (NoForm, NonUnique):
            continue
        if not form.nondegenerate:
            continue
        if kind == Involution.FROBENIUS_HALF:
            name = 'hermitian'
        else:
            name = 'alternating' if form.sign == -1 else 'symmetric'
        return {'form_kind': name, 'form_sign': form.sign, 'form_involution': kind}
    return {'form_kind': None, 'form_sign': None, 'form_involution': None}


def classify(t, rd=None, seed=0, settings=None):
    """
    Identifies the image of a tuple over a residue field.

    Parameters
    ----------
        t : JPTuple
            A tuple over a finite field. For a split algebra the first factor is used.
        rd : ResidueData, optional, default=None
            The prime the tuple was reduced at, reported in the evidence.

    Returns
    -------
        ClassificationResult
            The verdicts 'OrthogonalRange', 'SymmetricSpn' and 'Sporadic' are never produced for
            Jordan-Pochhammer images.

    """
    if isinstance(t.ring, SplitAlgebra):
        t = _factor_tuple(t, 0)
    ring = t.ring
    if not ring.is_field:
        raise NotAField('classification needs a field, got %r' % ring)
    evidence = {'prime': None if rd is None else rd.to_dict(), 'exception_hit': None,
                'form_kind': None, 'form_sign': None, 'form_involution': None,
                'group_order': None, 'classical_order': None}
    name = REGISTRY.lookup(t.params.source)
    if name is None and meataxe(t.gens, seed, settings).irreducible is False:
        logger.info('classification: reducible')
        return ClassificationResult(REDUCIBLE, evidence)
    group = BSGS(t.gens, seed, settings)
    order = group.order
    n, p = t.n, ring.p
    evidence['group_order'] = order
    evidence['det_image_order'] = det_image_order(t.gens)
    evidence['scalar_order'] = scalar_subgroup_order(group)
    evidence.update(form_evidence(t))
    if name is not None:
        evidence['exception_hit'] = name
        logger.info('classification: %s from the exception registry (order %d)', name, order)
        return ClassificationResult(COMPLEX_REFLECTION_FINITE, evidence, name)
    q0 = p**_subfield_degree(ring, t.params.values)
    if evidence['form_kind'] == 'alternating' and n % 2 == 0:
        sp = classical_order('Sp', n, q0)
        evidence['classical_order'] = {'family': 'Sp', 'q': q0, 'order': sp}
        if order == sp:
            return _verdict(ClassificationResult(SYMPLECTIC, evidence))
    if n == 2:
        report = kprime_report(t)
        evidence['kprime'] = report
        sl = classical_order('SL', 2, p**report['degree'])
        evidence['classical_order'] = {'family': 'SL', 'q': p**report['degree'], 'order': sl}
        verdict = EXTENDED_SL2 if order % sl == 0 else UNKNOWN
        return _verdict(ClassificationResult(verdict, evidence))
    if evidence['form_kind'] == 'hermitian':
        q1 = p**(ring.k//2)
        lower, upper = classical_order('SU', n, q1), classical_order('GU', n, q1)
        evidence['classical_order'] = {'family': 'GU', 'q': q1, 'lower': lower, 'upper': upper}
        if order % lower == 0 and upper % order == 0:
            return _verdict(ClassificationResult(UNITARY_RANGE, evidence))
    lower, upper = classical_order('SL', n, q0), classical_order('GL', n, q0)
    if order % lower == 0 and upper % order == 0:
        evidence['classical_order'] = {'family': 'GL', 'q': q0, 'lower': lower, 'upper': upper}
        return _verdict(ClassificationResult(LINEAR_RANGE, evidence))
    return _verdict(ClassificationResult(UNKNOWN, evidence))


def _verdict(result):
    logger.info('classification: %s (order %s)', result.verdict, result.evidence.get('group_order'))
    return result


def _factor_tuple(t, index):
    ring = t.ring
    F = ring.field
    params = JPParams(F, ring.factor(t.params.lambda0, index),
                      tuple(ring.factor(x, index) for x in t.params.lambdas), t.params.source)
    return JPTuple(params, tuple(Matrix(F, ring.factor(g.data, index)) for g in t.gens))


def _pair_subgroup_order(ring, pairs):
    elements = {(1, 1)}
    frontier = list(elements)
    while frontier:
        found = []
        for a, b in frontier:
            for c, d in pairs:
                x = (int(ring.mul(a, c)), int(ring.mul(b, d)))
                if x not in elements:
                    elements.add(x)
                    found.append(x)
        frontier = found
    return len(elements)


def pairwise_verdict(order, first, second, dets, det_first, det_second):
    """
    Compares the order of a subgroup of :math:`G_1 \\times G_2` with the two extreme cases: the
    full product of the determinant-one parts (times the joint determinant image) and the graph
    of an isomorphism.

    >>> pairwise_verdict(120, 120, 120, 1, 1, 1)
    'Graph'
    >>> pairwise_verdict(14400, 120, 120, 1, 1, 1)
    'Surjective'

    """
    if order*det_first*det_second == first*second*dets:
        return SURJECTIVE
    if order == first == second:
        return GRAPH
    return UNKNOWN


def pairwise_test(params, rd1, rd2, which1=0, which2=0, seed=0, settings=None):
    """
    Decides whether the joint image at two primes (or two embeddings) is as large as possible.

    Parameters
    ----------
        params : SymbolicParams
            The symbolic parameters.
        rd1, rd2 : ResidueData
            The two primes, which must lie above the same rational prime.
        which1, which2 : int, optional, default=0
            The embeddings used at each prime.

    Returns
    -------
        dict
            `verdict` is 'Surjective', 'Graph', 'Degenerate' or 'Unknown'; the orders used are
            included.

    """
    if rd1.p != rd2.p or rd1.f != rd2.f:
        raise InputError('both primes must lie above the same rational prime')
    first = reduce_params(params, rd1, which1, allow_degenerate=True)
    second = reduce_params(params, rd2, which2, allow_degenerate=True)
    ring = first.ring
    if any(x == ring.one for x in first.values + second.values):
        return {'verdict': DEGENERATE}
    t1, t2 = construct(first), construct(second)
    joint = [Matrix.block_diag(g, h) for g, h in zip(t1.gens, t2.gens)]
    g1, g2 = BSGS(t1.gens, seed, settings), BSGS(t2.gens, seed, settings)
    h = BSGS(joint, seed, settings)
    d1, d2 = det_image_order(t1.gens), det_image_order(t2.gens)
    dh = _pair_subgroup_order(ring, [(g.det(), k.det()) for g, k in zip(t1.gens, t2.gens)])
    verdict = pairwise_verdict(h.order, g1.order, g2.order, dh, d1, d2)
    logger.info('pairwise test: %s (|H|=%d, |G1|=%d, |G2|=%d)', verdict, h.order, g1.order, g2.order)
    return {'verdict': verdict, 'orders': {'joint': h.order, 'first': g1.order, 'second': g2.order},
            'det_orders': {'joint': dh, 'first': d1, 'second': d2},
            'primes': [rd1.to_dict(), rd2.to_dict()], 'embeddings': [which1, which2]}
