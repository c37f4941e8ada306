"""
.. module:: jprep
   :platform: Unix, Windows
   :synopsis: construction and verification of Jordan-Pochhammer tuples.

.. moduleauthor:: jpprym developers

A Jordan-Pochhammer tuple with parameters :math:`(\\lambda_0; \\lambda_1, \\dots, \\lambda_{n+1})`
is a tuple :math:`g_1, \\dots, g_{n+1}` of pseudo-reflections of :math:`K^n` with
:math:`\\det g_i = \\lambda_0\\lambda_i` and :math:`g_1 \\cdots g_{n+1} = \\lambda_0`.

The construction is a convolution of a rank-one tuple. With :math:`r = n+1`,
:math:`a_k = \\lambda_{r+1-k}` and :math:`\\lambda = \\lambda_0`, the matrices

.. math::
    B_k = I + e_k w_k, \\qquad
    w_k = (a_1 - 1, \\dots, a_{k-1} - 1, \\lambda a_k - 1,
           \\lambda(a_{k+1} - 1), \\dots, \\lambda(a_r - 1))

of :math:`K^r` all fix :math:`\\ell = (1, a_1, a_1a_2, \\dots, a_1 \\cdots a_{r-1})`, and their
product :math:`B_r \\cdots B_1` is :math:`\\lambda` modulo :math:`\\ell`. The tuple is the action of
:math:`B_r, \\dots, B_1` on :math:`K^r/K\\ell`. No division is involved, so the construction works
over every ring of :mod:`jpprym.exactalg`.

"""

import itertools
import logging
from dataclasses import dataclass
from dataclasses import field as datafield

import numpy as np

from jpprym.cyclo import JPParams
from jpprym.exactalg import Echelon
from jpprym.exactalg import Matrix
from jpprym.exactalg import eigenspace_dim
from jpprym.exactalg import nullspace
from jpprym.utils import DegenerateParams
from jpprym.utils import DegenerateRestriction
from jpprym.utils import InputError
from jpprym.utils import JPError
from jpprym.utils import NoSolution
from jpprym.utils import NotAField
from jpprym.utils import settingsOrDefault

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JPTuple:
    """
    A tuple of matrices :math:`g_1, \\dots, g_{n+1}` together with the parameters it realizes.

    """
    params: JPParams
    gens: tuple

    @property
    def n(self):
        return self.gens[0].rows

    @property
    def ring(self):
        return self.gens[0].ring

    def product(self, indices=None):
        """Returns the ordered product of the generators listed in `indices` (1-based)."""
        indices = range(1, len(self.gens) + 1) if indices is None else indices
        result = Matrix.identity(self.ring, self.n)
        for i in indices:
            result = result @ self.gens[i - 1]
        return result

    def reduce(self):
        """Reduces a tuple over dual numbers or a Galois ring to the residue field."""
        field = self.ring.residue_field()
        params = JPParams(field, self.ring.reduce(self.params.lambda0),
                          tuple(self.ring.reduce(x) for x in self.params.lambdas), self.params.source)
        return JPTuple(params, tuple(g.reduce() for g in self.gens))

    def to_dict(self):
        return {'n': self.n, 'params': self.params.to_dict(), 'ring': self.ring.describe(),
                'gens': [g.tolist() for g in self.gens]}


def construct(params, pivot='first'):
    """
    Builds the Jordan-Pochhammer tuple of the given parameters.

    Parameters
    ----------
        params : JPParams
            Parameters over a commutative ring of :mod:`jpprym.exactalg`.
        pivot : str, optional, default='first'
            Which coordinate of the fixed line is eliminated when passing to the quotient. The
            choices 'first' and 'last' give two independent construction orders; by rigidity
            their outputs are conjugate.

    Returns
    -------
        JPTuple

    """
    ring = params.ring
    params.validate()
    one = ring.one
    lam = params.lambda0
    if any(_equals(ring, x, one) for x in params.lambdas):
        raise DegenerateParams('some lambda_i equals 1')
    if _equals(ring, lam, one):
        raise NoSolution('lambda_0 = 1 leaves no rigid irreducible tuple')
    r = params.n + 1
    a = list(reversed(params.lambdas))
    minus = [ring.sub(x, one) for x in a]
    ell = [one]
    for k in range(r - 1):
        ell.append(ring.mul(ell[-1], a[k]))
    ell = ring.asarray(ell)
    big = []
    for k in range(r):
        w = [minus[j] if j < k else ring.mul(lam, minus[j]) for j in range(r)]
        w[k] = ring.sub(ring.mul(lam, a[k]), one)
        B = np.array(Matrix.identity(ring, r).data)
        B[k] = ring.add(B[k], ring.asarray(w))
        big.append(B)
    if pivot == 'first':
        projection = np.concatenate([ring.neg(ell[1:])[:, None], Matrix.identity(ring, r - 1).data], axis=1)
        section = np.concatenate([np.zeros((1, r - 1), dtype=ring.dtype), Matrix.identity(ring, r - 1).data])
    elif pivot == 'last':
        scale = ring.inv(ell[-1])
        column = ring.neg(ring.mul(ell[:-1], scale))
        projection = np.concatenate([Matrix.identity(ring, r - 1).data, column[:, None]], axis=1)
        section = np.concatenate([Matrix.identity(ring, r - 1).data, np.zeros((1, r - 1), dtype=ring.dtype)])
    else:
        raise InputError('unknown pivot %r' % pivot)
    gens = tuple(Matrix(ring, ring.matmul(ring.matmul(projection, big[r - i]), section)) for i in range(1, r + 1))
    logger.info('constructed JP tuple of rank %d over %r', r - 1, ring)
    return JPTuple(params, gens)


def _equals(ring, x, y):
    if ring.is_exact:
        return bool(np.all(ring.asarray(x) == ring.asarray(y)))
    return bool(np.allclose(x, y))


def _rank_at_most_one(ring, M):
    if ring.is_field:
        return Matrix(ring, M).rank() <= 1
    if not ring.is_exact:
        return np.linalg.matrix_rank(M, tol=1e-8*max(1.0, np.abs(M).max())) <= 1
    minors = ring.sub(ring.mul(M[:, None, :, None], M[None, :, None, :]),
                      ring.mul(M[:, None, None, :], M[None, :, :, None]))
    return not np.any(minors)


def is_pseudoreflection(g):
    """True iff :math:`\\mathrm{rank}(g - I) = 1`."""
    delta = (g - Matrix.identity(g.ring, g.rows)).data
    nonzero = np.any(delta) if g.ring.is_exact else np.abs(delta).max() > 1e-8
    return bool(nonzero) and _rank_at_most_one(g.ring, delta)


def charpoly(M):
    """
    Returns the coefficients of :math:`\\det(tI - M)`, highest degree first, by the division-free
    Samuelson-Berkowitz recursion.

    """
    ring = M.ring
    A = M.data
    n = M.rows
    poly = ring.asarray([ring.one])
    for k in range(n - 1, -1, -1):
        m = n - k
        R, C, A1 = A[k, k+1:], A[k+1:, k], A[k+1:, k+1:]
        column = [ring.one, ring.neg(A[k, k])]
        v = C
        for _ in range(m - 1):
            column.append(ring.neg(ring.sum(ring.mul(R, v), axis=0)))
            v = ring.sum(ring.mul(A1, v[None, :]), axis=1)
        new = []
        for i in range(m + 1):
            terms = [ring.mul(column[i - j], poly[j]) for j in range(min(i, m - 1) + 1)]
            new.append(ring.sum(ring.asarray(terms), axis=0))
        poly = ring.asarray(new)
    return poly


def roots_in_field(coefficients, ring):
    """Returns all roots in a finite field of a polynomial given highest degree first."""
    xs = ring.elements()
    value = np.zeros_like(xs)
    for c in coefficients:
        value = ring.add(ring.mul(value, xs), c)
    return xs[value == 0]


def spin(ring, vectors, matrices):
    """
    Returns the smallest subspace that contains `vectors` and is invariant under `matrices`
    (acting on columns), as an :class:`~jpprym.exactalg.Echelon`.

    """
    n = matrices[0].shape[0]
    space = Echelon(ring, n)
    queue = [ring.asarray(v) for v in vectors if space.insert(v)]
    while queue and space.dim < n:
        v = queue.pop()
        for g in matrices:
            w = ring.sum(ring.mul(g, v[None, :]), axis=1)
            if space.insert(w):
                queue.append(w)
    return space


@dataclass(frozen=True)
class MeatAxeResult:
    """
    Outcome of an irreducibility test: `irreducible` is True, False or None (inconclusive).
    When a proper submodule is found, `submodule` holds a basis of it as matrix rows.

    """
    irreducible: object
    submodule: object = None
    attempts: int = 0


def meataxe(gens, seed=0, settings=None):
    """
    Tests irreducibility of the module spanned by the columns under `gens` with Norton's
    criterion. Random algebra elements :math:`\\theta` are drawn until one has an eigenvalue `c`
    in the field; a kernel vector of :math:`\\theta - c` and a kernel vector of its transpose are
    spun up, and a one-dimensional kernel with both spins full proves irreducibility.

    Parameters
    ----------
        gens : list(Matrix)
            Square matrices over a finite field.
        seed : int, optional, default=0
            Seed of the random algebra elements.

    Returns
    -------
        MeatAxeResult

    """
    settings = settingsOrDefault(settings)
    ring = gens[0].ring
    if not ring.is_field:
        raise NotAField('irreducibility is tested over fields only, got %r' % ring)
    n = gens[0].rows
    if n == 1:
        return MeatAxeResult(True)
    rng = np.random.RandomState(seed)
    mats = [g.data for g in gens]
    transposes = [m.T for m in mats]
    identity = Matrix.identity(ring, n).data
    for attempt in range(1, settings.meataxe_attempts + 1):
        theta = np.zeros((n, n), dtype=ring.dtype)
        for _ in range(rng.randint(2, 5)):
            word = identity
            for _ in range(rng.randint(1, 4)):
                word = ring.matmul(word, mats[rng.randint(len(mats))])
            coefficient = rng.randint(1, ring.size)
            theta = ring.add(theta, ring.mul(coefficient, word))
        roots = roots_in_field(charpoly(Matrix(ring, theta)), ring)
        if roots.size == 0:
            continue
        c = roots[rng.randint(roots.size)]
        shifted = ring.sub(theta, ring.mul(c, identity))
        kernel = nullspace(ring, shifted)
        space = spin(ring, kernel[:1], mats)
        if space.dim < n:
            logger.debug('meataxe: submodule of dimension %d after %d attempts', space.dim, attempt)
            return MeatAxeResult(False, space.rows, attempt)
        dual = spin(ring, nullspace(ring, shifted.T)[:1], transposes)
        if dual.dim < n:
            submodule = nullspace(ring, dual.rows)
            logger.debug('meataxe: dual submodule found after %d attempts', attempt)
            return MeatAxeResult(False, submodule, attempt)
        if kernel.shape[0] == 1:
            return MeatAxeResult(True, None, attempt)
    logger.debug('meataxe: inconclusive after %d attempts', settings.meataxe_attempts)
    return MeatAxeResult(None, None, settings.meataxe_attempts)


def intertwiners(gens, others):
    """
    Returns a basis (as rows of length :math:`n^2`, row-major) of
    :math:`\\{X : X g_i = h_i X \\text{ for all } i\\}`.

    """
    ring = gens[0].ring
    n = gens[0].rows
    identity = Matrix.identity(ring, n)
    blocks = [(identity.kron(g.T) - h.kron(identity)).data for g, h in zip(gens, others)]
    return Matrix(ring, nullspace(ring, np.concatenate(blocks)))


def conjugacy_cert_dim(t):
    """
    Dimension of the space intertwining the tuple with the one built by the other construction
    order. Rigidity and Schur's lemma make it exactly 1 for irreducible tuples.

    """
    other = construct(t.params, pivot='last')
    return intertwiners(other.gens, t.gens).rows


@dataclass
class VerificationReport:
    """Results of :func:`verify`; failures are recorded, never raised."""
    n: int
    pseudoreflections: list
    determinants: list
    scalar_product: bool
    irreducible: object
    lemma_applies: bool
    conjugacy_cert_dim: object = None
    failures: list = datafield(default_factory=list)
    params: object = None

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        params = None if self.params is None else self.params.to_dict()
        ring = None if self.params is None else self.params.ring.describe()
        return {'params': params, 'n': self.n, 'ring': ring,
                'checks': {'pseudoreflections': all(self.pseudoreflections),
                           'determinants': all(self.determinants),
                           'scalar_product': self.scalar_product,
                           'irreducible': self.irreducible},
                'pseudoreflection_flags': self.pseudoreflections,
                'determinant_flags': self.determinants,
                'lemma_applies': self.lemma_applies,
                'conjugacy_cert_dim': self.conjugacy_cert_dim,
                'failures': self.failures}


def verify(t, seed=0, settings=None):
    """
    Checks every defining property of a tuple: pseudo-reflections, determinants
    :math:`\\det g_i = \\lambda_0\\lambda_i`, the scalar product :math:`\\prod g_i = \\lambda_0`,
    and irreducibility. Over dual numbers and Galois rings irreducibility refers to the reduction.

    When :math:`\\lambda_0 \\ne 1` and :math:`\\lambda_0` is not an eigenvalue of any :math:`g_i`
    (that is, no :math:`\\lambda_i = 1`), the tuple must be irreducible; a different verdict is
    recorded as a failure. Otherwise the verdict is reported without being checked.

    Parameters
    ----------
        t : JPTuple
            The tuple to check.
        seed : int, optional, default=0
            Seed of the irreducibility test.

    Returns
    -------
        VerificationReport

    """
    ring = t.ring
    params = t.params
    pseudo = [is_pseudoreflection(g) for g in t.gens]
    dets = []
    for g, lam in zip(t.gens, params.lambdas):
        expected = ring.mul(params.lambda0, lam)
        dets.append(_equals(ring, g.det(), expected))
    product = t.product()
    scalar = _equals(ring, product.data, Matrix.scalar(ring, t.n, params.lambda0).data)
    lemma = not _equals(ring, params.lambda0, ring.one) and not any(_equals(ring, x, ring.one) for x in params.lambdas)
    irreducible = None
    if ring.is_field:
        irreducible = meataxe(t.gens, seed, settings).irreducible
    elif ring.is_exact and hasattr(ring, 'residue_field'):
        irreducible = meataxe(t.reduce().gens, seed, settings).irreducible
    report = VerificationReport(t.n, pseudo, dets, scalar, irreducible, lemma, params=params)
    for i, flag in enumerate(pseudo, 1):
        if not flag:
            report.failures.append('g_%d is not a pseudo-reflection' % i)
    for i, flag in enumerate(dets, 1):
        if not flag:
            report.failures.append('det g_%d differs from lambda_0 lambda_%d' % (i, i))
    if not scalar:
        report.failures.append('the product of the generators is not lambda_0')
    if irreducible is False and lemma:
        report.failures.append('the tuple is reducible')
        logger.error('a tuple satisfying the irreducibility hypotheses was found reducible')
    if ring.is_field and report.ok and irreducible is not False and t.n > 1:
        try:
            report.conjugacy_cert_dim = conjugacy_cert_dim(t)
        except JPError:
            report.conjugacy_cert_dim = None
    return report


@dataclass(frozen=True)
class SpectrumReport:
    """
    Kernel dimensions of :math:`g_S - 1` and :math:`g_S - \\lambda_0` and the remaining
    eigenvalue. `scalar` flags :math:`S = \\{1, \\dots, n+1\\}`, where :math:`g_S = \\lambda_0`.

    """
    S: tuple
    dim_ker_1: int
    dim_ker_lambda0: int
    extra_eigenvalue: object
    scalar: bool = False

    def to_dict(self):
        extra = None if self.extra_eigenvalue is None else int(self.extra_eigenvalue)
        return {'S': list(self.S), 'dim_ker_1': self.dim_ker_1, 'dim_ker_lambda0': self.dim_ker_lambda0,
                'extra_eigenvalue': extra, 'scalar': self.scalar}


def _check_subset(t, S):
    S = tuple(S)
    if not S or len(set(S)) != len(S) or not all(1 <= i <= len(t.gens) for i in S):
        raise InputError('S must be a nonempty set of generator indices, got %s' % list(S))
    return tuple(sorted(S))


def subset_spectrum(t, S):
    """
    Returns the spectrum data of :math:`g_S = \\prod_{i \\in S} g_i` (increasing order). For
    :math:`|S| \\le n` it must equal :math:`(n - |S|, |S| - 1, \\lambda_0\\lambda_S)`.

    """
    S = _check_subset(t, S)
    ring = t.ring
    if not ring.is_field:
        raise NotAField('spectra are computed over fields, got %r' % ring)
    n = t.n
    gS = t.product(S)
    lam = t.params.lambda0
    if len(S) == len(t.gens):
        return SpectrumReport(S, eigenspace_dim(gS, ring.one), eigenspace_dim(gS, lam), None, True)
    k1 = eigenspace_dim(gS, ring.one)
    k0 = eigenspace_dim(gS, lam)
    partial = ring.add(ring.from_int(n - len(S)), ring.mul(ring.from_int(len(S) - 1), lam))
    extra = ring.sub(gS.trace(), partial)
    return SpectrumReport(S, k1, k0, int(extra))


def lambda_S(params, S):
    ring = params.ring
    result = ring.one
    for i in S:
        result = ring.mul(result, params.lambdas[i - 1])
    return result


def restrict(t, S):
    """
    Restricts :math:`(g_i : i \\in S, \\lambda_0 g_S^{-1})` to :math:`\\mathrm{im}(g_S - 1)`. The
    result realizes the parameters :math:`(\\lambda_0; \\lambda_i : i \\in S,
    1/\\lambda_0\\lambda_S)`.

    Raises
    ------
        DegenerateRestriction
            When :math:`\\lambda_S = 1` or :math:`\\lambda_0\\lambda_S = 1` (the latter makes the
            new parameter equal to 1).

    """
    S = _check_subset(t, S)
    ring = t.ring
    if not ring.is_field:
        raise NotAField('restriction needs a field, got %r' % ring)
    if len(S) == len(t.gens):
        raise InputError('the full index set gives a scalar product')
    params = t.params
    lam = params.lambda0
    lS = lambda_S(params, S)
    total = ring.mul(lam, lS)
    if lS == ring.one or total == ring.one:
        raise DegenerateRestriction('lambda_S or lambda_0 lambda_S equals 1 for S=%s' % list(S))
    gS = t.product(S)
    image, pivots = (gS - Matrix.identity(ring, t.n)).T.rref()
    basis = image[:len(pivots)]
    if len(pivots) != len(S):
        raise DegenerateRestriction('im(g_S - 1) has dimension %d instead of %d' % (len(pivots), len(S)))
    last = gS.inverse().scale(lam)
    restricted = []
    for h in [t.gens[i - 1] for i in S] + [last]:
        images = ring.matmul(h.data, basis.T)
        restricted.append(Matrix(ring, images[pivots, :]))
    new = JPParams(ring, lam, tuple(params.lambdas[i - 1] for i in S) + (int(ring.inv(total)),), params.source)
    return JPTuple(new, tuple(restricted))


def braid_act(params, i):
    """
    Swaps :math:`\\lambda_i` and :math:`\\lambda_{i+1}`, the effect of the braid generator
    :math:`\\sigma_i` on parameters.

    """
    if not 1 <= i <= params.n:
        raise InputError('braid index %d outside 1..%d' % (i, params.n))
    lambdas = list(params.lambdas)
    lambdas[i - 1], lambdas[i] = lambdas[i], lambdas[i - 1]
    return JPParams(params.ring, params.lambda0, tuple(lambdas), params.source)


def braid_tuple(t, i):
    """Replaces :math:`(g_i, g_{i+1})` by :math:`(g_{i+1}, g_{i+1}^{-1} g_i g_{i+1})`."""
    params = braid_act(t.params, i)
    gens = list(t.gens)
    g, h = gens[i - 1], gens[i]
    gens[i - 1], gens[i] = h, h.inverse() @ g @ h
    return JPTuple(params, tuple(gens))


def direct_sum(first, second):
    """Block-diagonal sum of two tuples of the same length, a reducible test object."""
    gens = tuple(Matrix.block_diag(g, h) for g, h in zip(first.gens, second.gens))
    return JPTuple(first.params, gens)


def all_subsets(count, max_size):
    for size in range(1, max_size + 1):
        for S in itertools.combinations(range(1, count + 1), size):
            yield S
