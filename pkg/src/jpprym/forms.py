"""
.. module:: forms
   :platform: Unix, Windows
   :synopsis: invariant bilinear and sesquilinear forms of Jordan-Pochhammer tuples.

.. moduleauthor:: jpprym developers

A form is a matrix :math:`A` with :math:`g A \\bar{g}^T = A` for every generator `g`, where the bar
is an :class:`~jpprym.exactalg.Involution` of the coefficient algebra. Over finite fields the
forms are found by exact nullspace computations. Over the complex numbers, where the parameters
lie on the unit circle, the Hermitian form is available in closed form and a floating-point
oracle recovers its signature.

"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg
from sympy import Rational
from sympy import floor

from jpprym.cyclo import JPParams
from jpprym.exactalg import ComplexNumbers
from jpprym.exactalg import Involution
from jpprym.exactalg import Matrix
from jpprym.exactalg import nullspace
from jpprym.jprep import construct
from jpprym.utils import IllConditioned
from jpprym.utils import InputError
from jpprym.utils import NoForm
from jpprym.utils import NonUnique
from jpprym.utils import NotAField
from jpprym.utils import PreconditionError
from jpprym.utils import settingsOrDefault

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormMatrix:
    """
    An invariant form.

    Parameters
    ----------
        A : Matrix
            The Gram matrix.
        involution : Involution
            The involution used in :math:`g A \\bar{g}^T = A`.
        sign : int
            +1 when :math:`\\bar{A}^T = A` and -1 when :math:`\\bar{A}^T = -A`.

    """
    A: Matrix
    involution: Involution
    sign: int

    @property
    def nondegenerate(self):
        return bool(self.A.ring.is_unit(self.A.det()))

    def is_invariant(self, gens):
        conj = self.involution
        return all(g @ self.A @ g.apply(conj).T == self.A for g in gens)

    def to_dict(self):
        return {'form': self.A.tolist(), 'sign': self.sign, 'involution': self.involution.kind,
                'ring': self.A.ring.describe(), 'unique': True}


def _solve(ring, left, right):
    """Basis of :math:`\\{A : g A h^T = A\\}` for pairs `(g, h)`, as row-major vectors."""
    n = left[0].rows
    identity = Matrix.identity(ring, n*n)
    blocks = [(g.kron(h) - identity).data for g, h in zip(left, right)]
    return nullspace(ring, np.concatenate(blocks))


def _first_nonzero(ring, data):
    flat = np.asarray(data).reshape(-1)
    index = np.nonzero(flat)[0]
    return flat[index[0]] if index.size else None


def _check_dimension(basis, expected=1):
    if basis.shape[0] == 0:
        raise NoForm('no invariant form for this involution')
    if basis.shape[0] > expected:
        raise NonUnique('the invariant forms span a space of dimension %d' % basis.shape[0])


def _bilinear_form(t, involution):
    ring = t.ring
    n = t.n
    basis = _solve(ring, t.gens, t.gens)
    _check_dimension(basis)
    A = basis[0].reshape(n, n)
    A = ring.mul(ring.inv(_first_nonzero(ring, A)), A)
    if np.array_equal(A.T, ring.neg(A)) and not np.any(np.diagonal(A)):
        sign = -1
    else:
        sign = 1
    return FormMatrix(Matrix(ring, A), involution, sign)


def trace_zero_element(involution):
    """
    The nonzero element :math:`\\tau` of least code with :math:`\\bar{\\tau} = -\\tau`. In
    characteristic 2 this is 1.

    """
    ring = involution.ring
    elements = ring.elements()[1:]
    return int(elements[np.nonzero(involution(elements) == ring.neg(elements))[0][0]])


def trace_zero_coordinates(involution, a):
    """
    Coordinates :math:`(\\alpha, \\beta)` over the fixed field with :math:`a = \\alpha\\tau + \\beta\\mu`,
    where :math:`\\tau` is :func:`trace_zero_element` and :math:`\\mu` the element of least code
    outside :math:`\\tau` times the fixed field.

    """
    ring = involution.ring
    tau = trace_zero_element(involution)
    ratios = ring.mul(ring.elements(), ring.inv(tau))
    nu = ratios[np.nonzero(involution(ratios) != ratios)[0][0]]
    u = ring.mul(a, ring.inv(tau))
    beta = ring.mul(ring.sub(u, involution(u)), ring.inv(ring.sub(nu, involution(nu))))
    alpha = ring.sub(u, ring.mul(beta, nu))
    return int(alpha), int(beta)


def _hermitian_form(t, involution):
    ring = t.ring
    n = t.n
    conjugates = [g.apply(involution) for g in t.gens]
    basis = _solve(ring, t.gens, conjugates)
    _check_dimension(basis)
    A = basis[0].reshape(n, n)
    dagger = involution(A.T)
    index = np.unravel_index(np.flatnonzero(A)[0], A.shape)
    c = ring.mul(dagger[index], ring.inv(A[index]))
    for mu in (ring.one, ring.primitive_element):
        factor = ring.sub(mu, ring.mul(involution(mu), c))
        if factor != 0:
            break
    B = ring.mul(factor, A)
    # fixed-field scalars keep B anti-Hermitian; a trace-zero leading entry becomes tau
    alpha, beta = trace_zero_coordinates(involution, _first_nonzero(ring, B))
    scale = ring.inv(alpha if alpha else beta)
    return FormMatrix(Matrix(ring, ring.mul(scale, B)), involution, -1)


def _swap_form(t, involution):
    ring = t.ring
    F = ring.field
    n = t.n
    first = [Matrix(F, ring.factor(g.data, 0)) for g in t.gens]
    second = [Matrix(F, ring.factor(g.data, 1)) for g in t.gens]
    basis = _solve(F, first, second)
    _check_dimension(basis)
    A1 = basis[0].reshape(n, n)
    A1 = F.mul(F.inv(_first_nonzero(F, A1)), A1)
    return FormMatrix(Matrix(ring, ring.make(A1, F.neg(A1.T))), involution, -1)


def invariant_form(t, inv):
    """
    Finds the form fixed by a tuple, unique up to scalars.

    Parameters
    ----------
        t : JPTuple
            A verified tuple over a finite field or a split algebra.
        inv : Involution or str
            'Identity' gives bilinear forms, 'FrobeniusHalf' Hermitian forms over
            :math:`\\mathbb{F}_{q^2}` and 'SwapFactors' the forms of a split prime.

    Returns
    -------
        FormMatrix
            Alternating or symmetric (bilinear case) with first nonzero entry 1. Otherwise
            anti-Hermitian, scaled by the fixed field so that the first nonzero entry has
            coordinates :math:`(1, \\beta)` or :math:`(0, 1)` in :func:`trace_zero_coordinates`.

    Raises
    ------
        NoForm
            If no nonzero invariant form exists.
        NonUnique
            If the forms span more than one line, which happens for reducible tuples.

    """
    ring = t.ring
    involution = inv if isinstance(inv, Involution) else Involution(inv, ring)
    if involution.ring != ring:
        raise InputError('involution of %r applied to a tuple over %r' % (involution.ring, ring))
    if involution.kind == Involution.SWAP_FACTORS:
        form = _swap_form(t, involution)
    elif not ring.is_field:
        raise NotAField('forms are computed over fields or split algebras, got %r' % ring)
    elif involution.kind == Involution.FROBENIUS_HALF:
        form = _hermitian_form(t, involution)
    else:
        form = _bilinear_form(t, involution)
    logger.info('found %s invariant form with sign %+d', involution.kind, form.sign)
    return form


@dataclass(frozen=True)
class SignatureQuery:
    """
    Exponents :math:`a_0, \\dots, a_{n+1}` with :math:`\\lambda_i = e^{2\\pi i a_i}`.

    """
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, 'exponents', tuple(Rational(a) for a in self.exponents))

    @property
    def n(self):
        return len(self.exponents) - 2

    def validate(self):
        if self.n < 1:
            raise PreconditionError('at least three exponents are required')
        for a in self.exponents:
            if not 0 < a < 1:
                raise PreconditionError('exponent %s is outside (0, 1)' % a)
        if not sum(self.exponents).is_integer:
            raise PreconditionError('exponents sum to %s, which is not an integer' % sum(self.exponents))
        return self

    def params(self):
        """The parameters as complex numbers."""
        values = [np.exp(2j*np.pi*float(a)) for a in self.exponents]
        return JPParams(ComplexNumbers(), values[0], tuple(values[1:]))

    @classmethod
    def from_weights(cls, N, m, d=1):
        """The exponents :math:`\\{d m_i/N\\}` of the :math:`\\zeta^d`-eigenspace."""
        return cls(tuple(Rational(d*x, N) - floor(Rational(d*x, N)) for x in m))


def _frac(x):
    return x - floor(x)


def signature_formula(q):
    """
    Returns the signature of the invariant Hermitian form:
    :math:`(-1 + \\sum_i \\{a_i\\}, -1 + \\sum_i \\{-a_i\\})`.

    >>> signature_formula(SignatureQuery(['1/2', '1/2', '1/2', '1/2']))
    (1, 1)

    """
    q.validate()
    pos = -1 + sum(_frac(a) for a in q.exponents)
    neg = -1 + sum(_frac(-a) for a in q.exponents)
    return int(pos), int(neg)


def hermitian_form(q):
    """
    Returns the closed-form Hermitian matrix `H` with :math:`g^H H g = H` for the tuple of
    :func:`~jpprym.jprep.construct` over the complex numbers.

    On :math:`\\mathbb{C}^{n+1}` the entries are
    :math:`H_{jk} = -s\\,(a_k - 1)\\,\\overline{w_k[j]}`, where :math:`s = e^{\\pi i a_0}` is a square
    root of :math:`\\lambda_0`. The fixed line spans the radical, so the quotient form is the
    trailing :math:`n \\times n` block.

    """
    q.validate()
    params = q.params()
    lam = params.lambda0
    s = np.exp(1j*np.pi*float(q.exponents[0]))
    a = np.array(list(reversed(params.lambdas)))
    r = a.size
    minus = a - 1
    H = np.empty((r, r), dtype=complex)
    for k in range(r):
        w = np.where(np.arange(r) < k, minus, lam*minus)
        w[k] = lam*a[k] - 1
        H[:, k] = -s*minus[k]*np.conj(w)
    return H[1:, 1:]


def _hermitian_basis(n):
    basis = []
    for j in range(n):
        for k in range(j, n):
            E = np.zeros((n, n), dtype=complex)
            if j == k:
                E[j, j] = 1
                basis.append(E)
            else:
                E[j, k] = E[k, j] = 1
                basis.append(E)
                F = np.zeros((n, n), dtype=complex)
                F[j, k], F[k, j] = 1j, -1j
                basis.append(F)
    return basis


def signature_numeric(q, tol=None, settings=None):
    """
    Floating-point oracle for :func:`signature_formula`.

    The tuple is built over complex numbers, the real-linear system :math:`g^H X g = X` is solved
    for Hermitian `X` by a singular value decomposition, and the eigenvalue signs of the solution
    are counted. The solution is oriented to agree with :func:`hermitian_form`.

    Parameters
    ----------
        q : SignatureQuery
            The exponents.
        tol : float, optional, default=None
            Relative singular-value threshold. Defaults to `settings.signature_tol`.

    Raises
    ------
        IllConditioned
            If the smallest singular value is not below `tol` or the second smallest is.

    """
    q.validate()
    tol = settingsOrDefault(settings).signature_tol if tol is None else tol
    if tol <= 0:
        raise PreconditionError('tolerance must be positive')
    t = construct(q.params())
    n = t.n
    basis = _hermitian_basis(n)
    columns = []
    for E in basis:
        images = [g.data.conj().T @ E @ g.data - E for g in t.gens]
        stacked = np.concatenate([X.reshape(-1) for X in images])
        columns.append(np.concatenate([stacked.real, stacked.imag]))
    system = np.array(columns).T
    _, sigma, vh = linalg.svd(system)
    scale = max(sigma[0], 1.0)
    if sigma[-1] >= tol*scale or (sigma.size > 1 and sigma[-2] < tol*scale):
        raise IllConditioned('singular values %.3g and %.3g leave no clear gap' % (sigma[-1], sigma[-2]))
    X = sum(c*E for c, E in zip(vh[-1], basis))
    if np.real(np.vdot(hermitian_form(q), X)) < 0:
        X = -X
    eigenvalues = linalg.eigvalsh(X)
    threshold = tol*np.abs(eigenvalues).max()
    pos = int(np.sum(eigenvalues > threshold))
    neg = int(np.sum(eigenvalues < -threshold))
    if pos + neg != n:
        raise IllConditioned('the numeric form is degenerate')
    logger.debug('numeric signature (%d, %d), singular gap %.3g', pos, neg, sigma[-2])
    return pos, neg


def signatures_agree(q, tol=None, settings=None):
    """Compares both signature computations."""
    return signature_numeric(q, tol, settings) == signature_formula(q)