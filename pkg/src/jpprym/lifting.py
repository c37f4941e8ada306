"""
.. module:: lifting
   :platform: Unix, Windows
   :synopsis: detection of Lie algebra elements in images over dual numbers.

.. moduleauthor:: jpprym developers

A tuple over :math:`\\mathbb{F}_q[\\epsilon]/(\\epsilon^2)` whose reduction generates a large group
lifts to the full group over :math:`\\mathbb{Z}_p` once its image contains an element
:math:`I + \\epsilon B` with `B` nonscalar and the conjugates of `B` span the relevant Lie
algebra. This module searches for such elements with four strategies:

(a) the unipotent part of a generator, when :math:`(\\lambda_0\\lambda_i - 1)(\\nu_0 + \\nu_i) \\ne 0`;
(b) in characteristic 2, the square of a generator reducing to a transvection;
(c) when every base parameter is -1, short words in pairs of generators raised to the power
    :math:`(1-p)/2`;
(d) commutators :math:`h g_i h^{-1} g_i` with `h` conjugating a transvection to its inverse
    modulo :math:`\\epsilon`, found by random search.

"""

import itertools
import logging
from dataclasses import dataclass
from dataclasses import replace

import numpy as np
from sympy.ntheory.modular import crt

from jpprym.cyclo import JPParams
from jpprym.cyclo import reduce_params
from jpprym.exactalg import DualNumbers
from jpprym.exactalg import Echelon
from jpprym.exactalg import Matrix
from jpprym.exactalg import element_order
from jpprym.exactalg import field_make
from jpprym.exactalg import nullspace
from jpprym.exactalg import witt_vectors2
from jpprym.jprep import construct
from jpprym.jprep import is_pseudoreflection
from jpprym.utils import BadTarget
from jpprym.utils import InputError
from jpprym.utils import PreconditionError
from jpprym.utils import settingsOrDefault

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftParams:
    """
    Parameters :math:`\\lambda_i(1 + \\epsilon\\nu_i)` over dual numbers.

    Parameters
    ----------
        base : JPParams
            The residue parameters over a finite field.
        nus : tuple(int)
            Field codes of :math:`\\nu_0, \\dots, \\nu_{n+1}`, summing to zero.

    """
    base: JPParams
    nus: tuple

    def __post_init__(self):
        object.__setattr__(self, 'nus', tuple(int(x) for x in self.nus))

    @property
    def field(self):
        return self.base.ring

    def validate(self):
        F = self.field
        if not F.is_field:
            raise InputError('base parameters must lie in a field')
        if len(self.nus) != len(self.base.values):
            raise InputError('expected %d nu values, got %d' % (len(self.base.values), len(self.nus)))
        self.base.validate()
        if int(F.sum(F.asarray(self.nus))) != 0:
            raise InputError('the nu values must sum to zero')
        return self

    @property
    def totally_ramified(self):
        minus_one = int(self.field.neg(self.field.one))
        return all(int(x) == minus_one for x in self.base.values)

    def dual_params(self):
        self.validate()
        D = DualNumbers(self.field)
        F = self.field
        values = [int(D.make(x, F.mul(x, nu))) for x, nu in zip(self.base.values, self.nus)]
        return JPParams(D, values[0], tuple(values[1:]), self.base.source)

    def to_dict(self):
        return {'base': self.base.to_dict(), 'nus': list(self.nus)}


def lift_params_from_weights(params, rd, which=0):
    """
    Reduces symbolic parameters at a ramified prime to :math:`\\mathbb{F}_q[\\epsilon]`, with
    :math:`\\zeta_{p^l} \\mapsto 1 + \\epsilon`.

    """
    dual = reduce_params(params, rd, which, target='dual')
    D = dual.ring
    F = D.field
    base, eps = D.split(dual.values)
    base = [int(b) for b in base]
    nus = [int(x) for x in F.mul(eps, F.inv(base))]
    return LiftParams(JPParams(F, base[0], tuple(base[1:]), params), tuple(nus))


@dataclass(frozen=True)
class LieElement:
    """
    A matrix `B` over the residue field with :math:`I + \\epsilon B` in the image. `origin` is a
    word of (generator index, exponent) pairs, indices starting at 1.
    `nus_equal` is set by the characteristic 2 rule, which yields nothing when all
    :math:`\\nu_i` agree.

    """
    B: Matrix
    origin: tuple = None
    strategy: str = None
    nus_equal: bool = None

    @property
    def nonscalar(self):
        return not self.B.is_scalar()

    def to_dict(self):
        origin = None if self.origin is None else [list(x) for x in self.origin]
        result = {'B': self.B.tolist(), 'word': origin, 'trace': int(self.B.trace()),
                  'strategy': self.strategy}
        if self.nus_equal is not None:
            result['nus_equal'] = self.nus_equal
        return result


def evaluate_word(t, word):
    return _evaluate(t.gens, word)


def _evaluate(gens, word):
    result = Matrix.identity(gens[0].ring, gens[0].rows)
    for index, exponent in word:
        result = result @ gens[index - 1].power(exponent)
    return result


def _inverse_word(word):
    return tuple((index, -exponent) for index, exponent in reversed(word))


def jordan_parts(g):
    """
    Splits an invertible matrix over dual numbers into commuting semisimple and unipotent
    parts, both powers of `g`.

    With :math:`M = m' p^b` the order of `g` and :math:`p \\nmid m'`, the exponent `e` with
    :math:`e \\equiv 1 \\pmod{m'}` and :math:`e \\equiv 0 \\pmod{p^b}` gives :math:`g_s = g^e`.

    Returns
    -------
        (Matrix, Matrix)
            :math:`g_s` and :math:`g_u = g_s^{-1} g`.

    """
    exponent = _semisimple_exponent(g)
    g_s = g.power(exponent)
    return g_s, g_s.inverse() @ g


def _semisimple_exponent(g):
    order = element_order(g)
    p = g.ring.p
    p_part = 1
    while order % p == 0:
        order //= p
        p_part *= p
    if p_part == 1:
        return 1
    if order == 1:
        return 0
    return int(crt([order, p_part], [1, 0])[0])


def _epsilon_part(h):
    """Returns `B` when `h` is :math:`I + \\epsilon B`, else `None`."""
    ring = h.ring
    F = ring.field
    residue, eps = ring.split(h.data)
    if not np.array_equal(residue, np.eye(h.rows, dtype=np.int64)):
        return None
    return Matrix(F, eps)


def _found(t, word, strategy):
    B = _epsilon_part(evaluate_word(t, word))
    if B is not None and not B.is_scalar():
        logger.debug('strategy %s found a nonscalar element from word %s', strategy, list(word))
        return LieElement(B, tuple(word), strategy)
    return None


def _power_detector(lp, t):
    F = lp.field
    lam = lp.base.lambda0
    for i, (x, nu) in enumerate(zip(lp.base.lambdas, lp.nus[1:]), 1):
        if int(F.mul(lam, x)) == 1 or int(F.add(lp.nus[0], nu)) == 0:
            continue
        exponent = _semisimple_exponent(t.gens[i - 1])
        result = _found(t, ((i, 1 - exponent),), 'power')
        if result is not None:
            return result
    return None


def _char2_detector(lp, t):
    if lp.field.p != 2:
        return None
    nus_equal = len(set(lp.nus)) == 1
    for i in range(1, len(t.gens) + 1):
        residue = Matrix(lp.field, t.ring.split(t.gens[i - 1].data)[0])
        if residue.det() != 1 or not is_pseudoreflection(residue):
            continue
        result = _found(t, ((i, 2),), 'char2')
        if result is not None:
            return replace(result, nus_equal=nus_equal)
    if nus_equal:
        logger.debug('characteristic 2: all nu_i are equal')
    return None


def _ramified_detector(lp, t):
    p = lp.field.p
    if p == 2 or not lp.totally_ramified:
        return None
    e = (1 - p)//2
    for i, j in itertools.combinations(range(1, len(t.gens) + 1), 2):
        words = [((i, e), (j, e), (i, e))*4]
        if p > 3:
            words.append(((i, e), (j, e))*6)
        for word in words:
            result = _found(t, word, 'ramified')
            if result is not None:
                return result
    return None


def _conjugate_detector(lp, t, seed, settings):
    F = lp.field
    p = F.p
    if p == 2 or lp.totally_ramified:
        return None
    settings = settingsOrDefault(settings)
    residues = [Matrix(F, t.ring.split(g.data)[0]) for g in t.gens]
    rng = np.random.RandomState(seed)
    lam = lp.base.lambda0
    candidates = [i for i, (x, nu) in enumerate(zip(lp.base.lambdas, lp.nus[1:]), 1)
                  if int(F.mul(lam, x)) == 1 and int(F.add(lp.nus[0], nu)) != 0]
    for i in candidates:
        target = residues[i - 1].inverse()
        for _ in range(settings.conjugate_budget):
            word = tuple((int(rng.randint(1, len(t.gens) + 1)), 1)
                         for _ in range(rng.randint(1, settings.word_cap + 1)))
            h = _evaluate(residues, word)
            if h @ residues[i - 1] @ h.inverse() == target:
                result = _found(t, word + ((i, 1),) + _inverse_word(word) + ((i, 1),), 'conjugate')
                if result is not None:
                    return result
    return None


def lie_detect(lp, seed=0, settings=None):
    """
    Searches the image of the tuple with parameters `lp` for an element :math:`I + \\epsilon B`
    with `B` nonscalar. Powers of single generators are tried first, then products of squares in
    characteristic two, then ramified pairs, and finally a seeded search over conjugates.

    Returns
    -------
        LieElement or None

    """
    t = construct(lp.dual_params())
    for detector in (_power_detector, _char2_detector, _ramified_detector):
        result = detector(lp, t)
        if result is not None:
            return result
    return _conjugate_detector(lp, t, seed, settings)


def _basis_index(n, k):
    return [(a, b, j) for a in range(n) for b in range(n) for j in range(k)]


def _matrix_digits(F, M):
    return F.digits(M.data).reshape(-1)


def _basis_matrix(F, n, a, b, j):
    data = np.zeros((n, n), dtype=np.int64)
    data[a, b] = F.p**j
    return Matrix(F, data)


def _solve_over_prime_field(F, n, conditions):
    """Kernel over :math:`\\mathbb{F}_p` of an :math:`\\mathbb{F}_p`-linear map on matrices."""
    P = field_make(F.p)
    columns = []
    for a, b, j in _basis_index(n, F.k):
        columns.append(np.concatenate([F.digits(x).reshape(-1) for x in conditions(_basis_matrix(F, n, a, b, j))]))
    return nullspace(P, np.array(columns).T)


def target_basis(F, n, target, form=None):
    """
    Basis over :math:`\\mathbb{F}_p`, in digit coordinates, of the Lie algebra 'sl',
    'su' (needs an anti-Hermitian form) or 'sp' (the trace-zero part of
    :math:`\\{B : BJ \\text{ alternating}\\}`, which needs an alternating form `J`).

    """
    k = F.k
    if target == 'sl':
        def conditions(X):
            return [X.trace()]
        expected = k*(n*n - 1)
    elif target == 'su':
        if form is None or k % 2:
            raise BadTarget('su needs an anti-Hermitian form over an even-degree field')

        def conditions(X):
            conj = F.frobenius(X.data.T, k//2)
            return [F.add(F.matmul(X.data, form.data), F.matmul(form.data, conj)), X.trace()]
        expected = (k//2)*(n*n - 1)
    elif target == 'sp':
        if form is None or n % 2:
            raise BadTarget('sp needs an alternating form in even dimension')

        def conditions(X):
            product = F.matmul(X.data, form.data)
            return [F.add(product, product.T), np.diagonal(product), X.trace()]
        expected = k*(n*(n - 1)//2 - 1)
    else:
        raise BadTarget('unknown target %r' % target)
    basis = _solve_over_prime_field(F, n, conditions)
    if basis.shape[0] != expected:
        raise BadTarget('target %s has dimension %d, expected %d' % (target, basis.shape[0], expected))
    return basis


def span_full(seed, gens, target='sl', form=None):
    """
    Closes the span of `seed.B` and the identity under conjugation by `gens` and reports whether
    it contains the target Lie algebra.

    Parameters
    ----------
        seed : LieElement
            A nonscalar element.
        gens : list(Matrix)
            Generators of the residue group.
        target : str, optional, default='sl'
            'sl', 'su' or 'sp'.
        form : Matrix, optional, default=None
            The invariant form for 'su' and 'sp'.

    """
    B = seed.B
    F = B.ring
    n = B.rows
    if B.is_scalar():
        raise PreconditionError('the seed is scalar')
    basis = target_basis(F, n, target, form)
    space = Echelon(field_make(F.p), n*n*F.k)
    pairs = [(g, g.inverse()) for g in gens]
    queue = []
    for X in (B, Matrix.identity(F, n)):
        if space.insert(_matrix_digits(F, X)):
            queue.append(X)
    while queue:
        X = queue.pop()
        for g, g_inv in pairs:
            Y = g @ X @ g_inv
            if space.insert(_matrix_digits(F, Y)):
                queue.append(Y)
    full = all(space.contains(v) for v in basis)
    logger.info('span of conjugates: dimension %d over GF(%d), contains %s: %s', space.dim, F.p, target, full)
    return full


@dataclass(frozen=True)
class SplitTestResult:
    splits: bool
    witness_commutator: object = None
    order_two_lifts: tuple = ()

    def to_dict(self):
        witness = None if self.witness_commutator is None else self.witness_commutator.tolist()
        return {'splits': self.splits, 'witness_commutator': witness,
                'order_two_lifts': list(self.order_two_lifts)}


def _order_two_lifts(R, x):
    F = R.residue_field()
    base = R.lift(x.data)
    two = R.from_int(2)
    lifts = []
    for t in itertools.product(range(F.size), repeat=4):
        data = R.add(base, R.mul(two, R.lift(np.array(t).reshape(2, 2))))
        if np.array_equal(R.matmul(data, data), np.eye(2, dtype=np.int64)):
            lifts.append(Matrix(R, data))
    return lifts


def sl2_w2_split_test(field=None, generators=None, require_commuting=True):
    """
    Searches for commuting lifts of order two of generators of a Sylow 2-subgroup of
    :math:`\\mathrm{SL}_2(\\mathbb{F}_q)` to :math:`\\mathrm{GL}_2(W_2(\\mathbb{F}_q))`.

    Each entry of a lift ranges over the :math:`2 W_2` ambiguity, so a generator has
    :math:`q^4` candidate lifts. For :math:`\\mathbb{F}_4` and the generators
    :math:`\\begin{pmatrix}1&1\\\\0&1\\end{pmatrix}` and
    :math:`\\begin{pmatrix}1&\\omega\\\\0&1\\end{pmatrix}` no commuting pair exists, and the
    commutator of any two order-two lifts is reported as a witness.

    Parameters
    ----------
        field : FiniteField, optional, default=GF(4)
            A field of characteristic 2.
        generators : list(Matrix), optional
            Generators over `field`; by default the two unipotent matrices above.
        require_commuting : bool, optional, default=True
            Whether the lifts must commute pairwise.

    Returns
    -------
        SplitTestResult

    """
    F = field_make(2, 2) if field is None else field
    if F.p != 2:
        raise InputError('the Witt vector test is written for characteristic 2')
    if generators is None:
        generators = [Matrix(F, [[1, 1], [0, 1]]), Matrix(F, [[1, F.generator if F.k > 1 else F.one], [0, 1]])]
    R = witt_vectors2(F)
    choices = [_order_two_lifts(R, x) for x in generators]
    counts = tuple(len(c) for c in choices)
    if not all(choices):
        return SplitTestResult(False, None, counts)
    witness = None
    for lifts in itertools.product(*choices):
        if not require_commuting:
            return SplitTestResult(True, None, counts)
        commuting = True
        for a, b in itertools.combinations(lifts, 2):
            commutator = a @ b @ a.inverse() @ b.inverse()
            if not commutator.is_identity():
                commuting = False
                witness = witness or commutator
        if commuting:
            return SplitTestResult(True, None, counts)
    return SplitTestResult(False, witness, counts)


def transvection_square_check(t):
    """
    For each generator over :math:`W_2` whose reduction is a transvection, tests
    :math:`g^2 = 1 + 2(g - 1)`. Returns a dictionary keyed by generator index.

    """
    R = t.ring
    F = R.residue_field()
    two = R.from_int(2)
    identity = Matrix.identity(R, t.n)
    result = dict()
    for i, g in enumerate(t.gens, 1):
        residue = g.reduce()
        if residue.det() != F.one or not is_pseudoreflection(residue):
            continue
        result[i] = g @ g == identity + (g - identity).scale(two)
    return result
