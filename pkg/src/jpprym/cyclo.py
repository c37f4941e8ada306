"""
.. module:: cyclo
   :platform: Unix, Windows
   :synopsis: cyclotomic parameter bookkeeping, prime splitting and reduction maps.

.. moduleauthor:: jpprym developers

A cyclic cover :math:`y^N = \\prod_i (x - x_i)^{m_i}` yields Jordan-Pochhammer parameters
:math:`\\lambda_i = \\zeta_N^{m_i}`. This module keeps them symbolically, as exponents of
:math:`\\zeta_N`, and maps them into the residue algebras attached to the primes of the real
subfield :math:`\\mathbb{Q}(\\zeta_N + \\zeta_N^{-1})` above a rational prime `p`.

"""

import logging
from dataclasses import dataclass
from dataclasses import field as datafield
from math import gcd

from sympy import isprime
from sympy import mod_inverse
from sympy import n_order
from sympy import totient

from jpprym.exactalg import DualNumbers
from jpprym.exactalg import Involution
from jpprym.exactalg import SplitAlgebra
from jpprym.exactalg import field_make
from jpprym.utils import BadWeights
from jpprym.utils import DegenerateParameter
from jpprym.utils import InputError
from jpprym.utils import NonPrime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVector:
    """
    Local data :math:`m_0, \\dots, m_{n+1}` of a cyclic cover of order `N`.

    Parameters
    ----------
        N : int
            The order of the cyclic group.
        m : tuple(int)
            The weights, reduced modulo `N`.

    """
    N: int
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, 'm', tuple(int(x) % self.N for x in self.m))

    def validate(self):
        if self.N < 2:
            raise BadWeights('the cyclic order must be at least 2')
        if sum(self.m) % self.N:
            raise BadWeights('weights %s do not sum to zero modulo %d' % (list(self.m), self.N))
        g = self.N
        for x in self.m:
            g = gcd(g, x)
        if g != 1:
            raise BadWeights('weights and N share the factor %d, so the cover is reducible' % g)
        return self


@dataclass(frozen=True)
class SymbolicParams:
    """
    Parameters :math:`(\\lambda_0; \\lambda_1, \\dots, \\lambda_{n+1})` written as exponents of
    :math:`\\zeta_N`.

    """
    N: int
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, 'exponents', tuple(int(e) % self.N for e in self.exponents))

    @property
    def n(self):
        return len(self.exponents) - 2

    def validate(self):
        if sum(self.exponents) % self.N:
            raise BadWeights('parameters do not multiply to 1')
        if self.n < 2:
            raise BadWeights('rank %d is below 2' % self.n)
        return self

    def to_dict(self):
        return {'N': self.N, 'exponents': list(self.exponents)}


@dataclass(frozen=True)
class JPParams:
    """
    Parameters over a concrete coefficient ring, as element codes.

    Parameters
    ----------
        ring : ring
            One of the rings of :mod:`jpprym.exactalg`.
        lambda0 : int
            The code of :math:`\\lambda_0`.
        lambdas : tuple(int)
            The codes of :math:`\\lambda_1, \\dots, \\lambda_{n+1}`.
        source : SymbolicParams, optional, default=None
            The symbolic parameters these were reduced from.

    """
    ring: object
    lambda0: object
    lambdas: tuple
    source: SymbolicParams = datafield(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'lambdas', tuple(self.lambdas))

    @property
    def n(self):
        return len(self.lambdas) - 1

    @property
    def values(self):
        return (self.lambda0,) + self.lambdas

    def product(self):
        ring = self.ring
        result = ring.one
        for value in self.values:
            result = ring.mul(result, value)
        return result

    def validate(self):
        if self.n < 1:
            raise InputError('at least two generators are required')
        product = self.product()
        if (product != self.ring.one) if self.ring.is_exact else abs(product - 1) > 1e-9:
            raise InputError('parameters do not multiply to 1 in %r' % self.ring)
        return self

    def to_dict(self):
        result = {'ring': self.ring.describe(), 'lambda0': _jsonable(self.lambda0),
                  'lambdas': [_jsonable(x) for x in self.lambdas]}
        if self.source is not None:
            result['symbolic'] = self.source.to_dict()
        return result


def _jsonable(value):
    if isinstance(value, complex) or getattr(value, 'dtype', None) is not None and value.dtype.kind == 'c':
        return [float(value.real), float(value.imag)]
    return int(value)


@dataclass(frozen=True)
class RJPMembership:
    """
    Records which :math:`\\lambda_i - 1` are units, the condition for the parameters to define a
    point of the ring over which the representation is generically defined.

    """
    params: JPParams
    unit_flags: tuple

    @property
    def all_units(self):
        return all(self.unit_flags)


def params_from_weights(w):
    """
    Returns :math:`\\lambda_0 = \\zeta^{m_0}` and :math:`\\lambda_i = \\zeta^{m_i}`, so that
    :math:`\\det g_i = \\zeta^{m_0 + m_i}`.

    Parameters
    ----------
        w : WeightVector
            Weights satisfying the cover conditions.

    >>> params_from_weights(WeightVector(2, (1, 1, 1, 1))).exponents
    (1, 1, 1, 1)

    """
    w.validate()
    if len(w.m) < 4:
        raise BadWeights('%d weights give rank %d, below 2' % (len(w.m), len(w.m) - 2))
    return SymbolicParams(w.N, w.m).validate()


def params_from_lambdas(N, exponents):
    return SymbolicParams(N, tuple(exponents)).validate()


def galois_twist(params, l):
    """Applies :math:`\\zeta_N \\mapsto \\zeta_N^l` for a unit `l` modulo `N`."""
    if gcd(l, params.N) != 1:
        raise InputError('%d is not a unit modulo %d' % (l, params.N))
    return SymbolicParams(params.N, tuple(l*e for e in params.exponents))


def _split_n(N, p):
    power = 1
    while N % p == 0:
        N //= p
        power *= p
    return power, N


@dataclass(frozen=True)
class ResidueData:
    """
    A prime of the real subfield above `p`, with its residue algebra and the reduction of
    :math:`\\zeta_N`.

    Writing :math:`N = p^l N'`, the residue field is :math:`\\mathbb{F}_{p^f}` with
    :math:`f = \\mathrm{ord}_{N'}(p)`. The prime corresponds to a coset of
    :math:`\\langle p, -1 \\rangle` in :math:`(\\mathbb{Z}/N')^\\times` with least element `coset`,
    and each embedding sends :math:`\\zeta_{N'}` to :math:`z^c` for one of the `exponents` `c`, where
    `z` is the canonical primitive :math:`N'`-th root of unity of the residue field.

    """
    N: int
    p: int
    f: int
    coset: int
    exponents: tuple
    involution: str
    ramified: bool

    @property
    def field(self):
        return field_make(self.p, self.f)

    @property
    def prime_to_p(self):
        return _split_n(self.N, self.p)[1]

    @property
    def p_part(self):
        return _split_n(self.N, self.p)[0]

    @property
    def embeddings(self):
        """Images of :math:`\\zeta_N` in the residue field, one per embedding."""
        return [self.zeta_power(1, which) for which in range(len(self.exponents))]

    def _zeta_exponent(self, e, which):
        power, rest = self.p_part, self.prime_to_p
        s = mod_inverse(power, rest) if rest > 1 else 0
        return (self.exponents[which]*s*e) % rest

    def zeta_power(self, e, which=0):
        """Returns the code of the image of :math:`\\zeta_N^e` under the chosen embedding."""
        F = self.field
        if self.prime_to_p == 1:
            return F.one
        z = F.root_of_unity(self.prime_to_p)
        return int(F.pow(z, self._zeta_exponent(e, which)))

    def dual_zeta_power(self, e, which=0):
        """
        Returns the image of :math:`\\zeta_N^e` in :math:`\\mathbb{F}_q[\\epsilon]`, using the
        uniformizer :math:`\\pi = \\zeta_{p^l} - 1 \\mapsto \\epsilon`.

        """
        D = DualNumbers(self.field)
        base = self.zeta_power(e, which)
        power, rest = self.p_part, self.prime_to_p
        t = mod_inverse(rest, power) if power > 1 else 0
        nu = (t*e) % self.p
        return int(D.make(base, self.field.mul(base, nu)))

    def algebra(self):
        """The residue algebra: the field, or the split algebra for a split prime."""
        if self.involution == Involution.SWAP_FACTORS:
            return SplitAlgebra(self.field)
        return self.field

    def algebra_zeta_power(self, e):
        if self.involution == Involution.SWAP_FACTORS:
            return int(self.algebra().make(self.zeta_power(e, 0), self.zeta_power(e, 1)))
        return self.zeta_power(e, 0)

    def involution_map(self):
        return Involution(self.involution, self.algebra())

    def to_dict(self):
        return {'N': self.N, 'p': self.p, 'f': self.f, 'coset': self.coset,
                'exponents': list(self.exponents), 'involution': self.involution,
                'ramified': self.ramified, 'embeddings': [int(z) for z in self.embeddings]}


def split_prime(N, p):
    """
    Lists the primes of :math:`\\mathbb{Q}(\\zeta_N + \\zeta_N^{-1})` above `p`.

    Primes correspond to the cosets of :math:`\\langle p, -1\\rangle` in
    :math:`(\\mathbb{Z}/N')^\\times`. A prime is inert in :math:`\\mathbb{Q}(\\zeta_N)` when
    :math:`-1 \\in \\langle p \\rangle`, giving the involution 'FrobeniusHalf', and splits
    otherwise, giving 'SwapFactors' with two embeddings. When :math:`N' \\le 2` the involution is
    trivial.

    Parameters
    ----------
        N : int
            The cyclotomic order.
        p : int
            A prime number.

    >>> [(rd.f, rd.involution) for rd in split_prime(5, 2)]
    [(4, 'FrobeniusHalf')]

    """
    if not isprime(p):
        raise NonPrime('%s is not a prime number' % p)
    power, rest = _split_n(N, p)
    ramified = power > 1
    if rest <= 2:
        return [ResidueData(N, p, 1, 1, (1,), Involution.IDENTITY, ramified)]
    f = int(n_order(p, rest))
    subgroup = {pow(p, j, rest) for j in range(f)}
    inert = (rest - 1) in subgroup
    seen = set()
    primes = []
    for c in range(1, rest):
        if gcd(c, rest) != 1 or c in seen:
            continue
        coset = {(c*h) % rest for h in subgroup} | {(-c*h) % rest for h in subgroup}
        seen |= coset
        if inert:
            primes.append(ResidueData(N, p, f, c, (c,), Involution.FROBENIUS_HALF, ramified))
        else:
            primes.append(ResidueData(N, p, f, c, (c, rest - c), Involution.SWAP_FACTORS, ramified))
    logger.info('p=%d in Q(zeta_%d)^+: %d prime(s), residue degree %d, %s', p, N, len(primes), f,
                'inert' if inert else 'split')
    return primes


def count_cyclotomic_primes(N, p):
    """
    Returns :math:`\\sum f \\cdot \\#\\{\\text{primes of } \\mathbb{Q}(\\zeta_N)\\}` over the primes
    above `p`; it equals :math:`\\varphi(N')`.

    """
    return sum(rd.f*len(rd.exponents) for rd in split_prime(N, p))


def reduce_params(params, rd, which_embedding=0, target='field', allow_degenerate=False):
    """
    Maps symbolic parameters into a residue algebra.

    Parameters
    ----------
        params : SymbolicParams
            The parameters, as exponents of :math:`\\zeta_N`.
        rd : ResidueData
            The prime.
        which_embedding : int, optional, default=0
            Which embedding to use when the prime splits.
        target : str, optional, default='field'
            'field' for the residue field, 'algebra' for the full residue algebra (the split
            algebra of a split prime) or 'dual' for :math:`\\mathbb{F}_q[\\epsilon]` in the
            ramified case.
        allow_degenerate : bool, optional, default=False
            Whether to return parameters in which some :math:`\\lambda_i` reduces to 1.

    """
    if params.N != rd.N:
        raise InputError('parameters live in Q(zeta_%d), the prime in Q(zeta_%d)' % (params.N, rd.N))
    if not 0 <= which_embedding < len(rd.exponents):
        raise InputError('embedding index %d out of range' % which_embedding)
    if target == 'field':
        ring = rd.field
        values = [rd.zeta_power(e, which_embedding) for e in params.exponents]
    elif target == 'algebra':
        ring = rd.algebra()
        values = [rd.algebra_zeta_power(e) for e in params.exponents]
    elif target == 'dual':
        ring = DualNumbers(rd.field)
        values = [rd.dual_zeta_power(e, which_embedding) for e in params.exponents]
    else:
        raise InputError('unknown reduction target %r' % target)
    result = JPParams(ring, values[0], tuple(values[1:]), source=params)
    if not allow_degenerate:
        degenerate = [i for i, v in enumerate(result.values) if _is_one(ring, v)]
        if degenerate:
            raise DegenerateParameter('parameters %s reduce to 1 modulo the prime above %d' % (degenerate, rd.p))
    return result


def rjp_membership(params):
    ring = params.ring
    flags = tuple(bool(ring.is_unit(ring.sub(v, ring.one))) for v in params.values)
    return RJPMembership(params, flags)


def euler_phi(N):
    return int(totient(N))


def _is_one(ring, value):
    if isinstance(ring, SplitAlgebra):
        return ring.factor(value, 0) == 1 or ring.factor(value, 1) == 1
    return value == ring.one
