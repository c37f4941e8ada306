"""
.. module:: exactalg
   :platform: Unix, Windows
   :synopsis: exact arithmetic over finite fields, dual numbers and Galois rings, plus dense
              matrix linear algebra over them.

.. moduleauthor:: jpprym developers

Every element of a finite ring is an integer *code*. For the Galois ring
:math:`\\mathrm{GR}(p^e, k) = (\\mathbb{Z}/p^e)[x]/(f)` the code of
:math:`c_0 + c_1 x + \\dots + c_{k-1}x^{k-1}` is :math:`\\sum_j c_j (p^e)^j`. Finite fields are
the case :math:`e = 1` and the Witt ring :math:`W_2(\\mathbb{F}_{2^k})` is the case
:math:`p = 2, e = 2`. Dual numbers and split algebras pack a pair of field codes as
:math:`a + q b`.

All ring operations act elementwise on `numpy` arrays of codes, so vectors, matrices and stacks of
matrices are handled by the same calls.

"""

import functools
import logging

import numpy as np
from sympy import factorint
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcd
from sympy.polys.galoistools import gf_pow_mod
from sympy.polys.galoistools import gf_sub

from jpprym.utils import InputError
from jpprym.utils import NonPrime
from jpprym.utils import NotAField
from jpprym.utils import NotInvertible
from jpprym.utils import Singular
from jpprym.utils import TooLarge

logger = logging.getLogger(__name__)

UNBOUNDED = 'Unbounded'

_TABLE_SIZE = 256
# int64 products of two codes, summed along a matrix row, must not overflow
_MAX_CHAR = 2**26
_MAX_SIZE = 2**62


class _Ring(object):
    """
    Common interface of the coefficient rings. Subclasses provide `add`, `neg`, `mul`, `sum`,
    `is_unit`, `inv` and `from_int`.

    """
    dtype = np.int64
    zero = 0
    one = 1
    is_field = False
    is_exact = True

    def asarray(self, values):
        return np.asarray(values, dtype=self.dtype)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, exponent):
        a = self.asarray(a)
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        result = np.full(a.shape, self.one, dtype=self.dtype)
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            exponent >>= 1
            if exponent:
                base = self.mul(base, base)
        return result

    def matmul(self, a, b):
        a, b = self.asarray(a), self.asarray(b)
        return self.sum(self.mul(a[..., :, :, None], b[..., None, :, :]), axis=-2)

    def elements(self):
        return np.arange(self.size, dtype=self.dtype)


class GaloisRing(_Ring):
    """
    The Galois ring :math:`(\\mathbb{Z}/p^e)[x]/(f(x))` for a monic polynomial `f` of degree `k`
    whose reduction modulo `p` is irreducible.

    Parameters
    ----------
        p : int
            A prime number.
        k : int, optional, default=1
            The degree of the modulus.
        e : int, optional, default=1
            The exponent of the characteristic :math:`p^e`.
        modulus : list(int), optional, default=None
            The monic modulus, low-to-high coefficients (length `k+1`). Required when `k > 1`.

    """
    def __init__(self, p, k=1, e=1, modulus=None):
        if not isprime(p):
            raise NonPrime('%s is not a prime number' % p)
        if k < 1 or e < 1:
            raise InputError('degree and exponent must be positive')
        if modulus is None:
            if k > 1:
                raise InputError('a modulus is required for extension rings')
            modulus = (0, 1)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise InputError('modulus must be monic of degree %d' % k)
        self.p, self.k, self.e = p, k, e
        self.char = p**e
        self.size = self.char**k
        if self.char >= _MAX_CHAR or self.size >= _MAX_SIZE:
            raise TooLarge('GR(%d,%d) exceeds 64-bit element arithmetic' % (self.char, k))
        self.modulus = modulus
        self._powers = self.char**np.arange(k, dtype=np.int64)
        self._low = np.array([(-c) % self.char for c in modulus[:k]], dtype=np.int64)
        self._tables = None

    def __repr__(self):
        if self.e == 1:
            return 'GF(%d)' % self.size
        return 'GR(%d,%d)' % (self.char, self.k)

    def __eq__(self, other):
        return type(self) is type(other) and (self.p, self.k, self.e, self.modulus) == \
            (other.p, other.k, other.e, other.modulus)

    def __hash__(self):
        return hash((type(self).__name__, self.p, self.k, self.e, self.modulus))

    def describe(self):
        kind = 'Field' if self.e == 1 else 'WittLen2' if self.e == 2 else 'GaloisRing'
        return {'kind': kind, 'p': self.p, 'k': self.k, 'e': self.e, 'modulus': list(self.modulus)}

    @property
    def generator(self):
        """Code of the class of :math:`x` modulo the modulus."""
        if self.k == 1:
            raise InputError('%r has no polynomial generator' % self)
        return int(self.undigits([0, 1] + [0]*(self.k - 2)))

    def digits(self, a):
        return (self.asarray(a)[..., None] // self._powers) % self.char

    def undigits(self, d):
        return (np.asarray(d, dtype=np.int64)*self._powers).sum(axis=-1)

    def _digit_mul(self, a, b):
        da, db = np.broadcast_arrays(self.digits(a), self.digits(b))
        k = self.k
        c = np.zeros(da.shape[:-1] + (2*k - 1,), dtype=np.int64)
        for i in range(k):
            c[..., i:i+k] += da[..., i:i+1]*db
        c %= self.char
        for degree in range(2*k - 2, k - 1, -1):
            top = c[..., degree:degree+1]
            c[..., degree-k:degree] = (c[..., degree-k:degree] + top*self._low) % self.char
        return self.undigits(c[..., :k])

    def _digit_add(self, a, b):
        return self.undigits((self.digits(a) + self.digits(b)) % self.char)

    def _table(self):
        if self._tables is None:
            x, y = np.meshgrid(np.arange(self.size), np.arange(self.size), indexing='ij')
            self._tables = (self._digit_add(x, y), self._digit_mul(x, y))
        return self._tables

    def add(self, a, b):
        if self.k == 1:
            return (self.asarray(a) + self.asarray(b)) % self.char
        if self.size <= _TABLE_SIZE:
            return self._table()[0][self.asarray(a), self.asarray(b)]
        return self._digit_add(a, b)

    def neg(self, a):
        if self.k == 1:
            return (-self.asarray(a)) % self.char
        return self.undigits((-self.digits(a)) % self.char)

    def mul(self, a, b):
        if self.k == 1:
            return (self.asarray(a)*self.asarray(b)) % self.char
        if self.size <= _TABLE_SIZE:
            return self._table()[1][self.asarray(a), self.asarray(b)]
        return self._digit_mul(a, b)

    def sum(self, a, axis=None):
        a = self.asarray(a)
        if self.k == 1:
            return a.sum(axis=axis) % self.char
        if axis is None:
            a, axis = a.reshape(-1), 0
        axis = axis % a.ndim
        return self.undigits(self.digits(a).sum(axis=axis) % self.char)

    def matmul(self, a, b):
        if self.k == 1:
            return np.matmul(self.asarray(a), self.asarray(b)) % self.char
        return super(GaloisRing, self).matmul(a, b)

    def from_int(self, n):
        return self.asarray(n) % self.char

    def is_unit(self, a):
        if self.e == 1:
            return self.asarray(a) != 0
        return (self.digits(a) % self.p).any(axis=-1)

    def residue_field(self):
        """Returns the field :math:`\\mathbb{F}_{p^k}` obtained by reducing modulo `p`."""
        if self.e == 1:
            return self
        return field_make(self.p, self.k, tuple(c % self.p for c in self.modulus))

    def reduce(self, a):
        if self.e == 1:
            return self.asarray(a)
        return self.residue_field().undigits(self.digits(a) % self.p)

    def lift(self, a):
        """Maps residue-field codes to ring codes with the same digits."""
        if self.e == 1:
            return self.asarray(a)
        return self.undigits(self.residue_field().digits(a))

    def inv(self, a):
        a = self.asarray(a)
        if not np.all(self.is_unit(a)):
            raise NotInvertible('attempted to invert a non-unit of %r' % self)
        if self.e == 1:
            return self.pow(a, self.size - 2)
        field = self.residue_field()
        x = self.lift(field.inv(self.reduce(a)))
        two = self.from_int(2)
        precision = 1
        while precision < self.e:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            precision *= 2
        return x


class FiniteField(GaloisRing):
    """
    The finite field :math:`\\mathbb{F}_{p^k}`. Use :func:`field_make` to obtain instances with
    the deterministic modulus.

    """
    is_field = True

    def __init__(self, p, k=1, modulus=None):
        super(FiniteField, self).__init__(p, k, 1, modulus)
        self.q = self.size
        self._inverses = None

    def inv(self, a):
        a = self.asarray(a)
        if np.any(a == 0):
            raise NotInvertible('division by zero in %r' % self)
        if self.q <= 2**16:
            if self._inverses is None:
                table = self.pow(np.arange(self.q), self.q - 2)
                table[0] = 0
                self._inverses = table
            return self._inverses[a]
        return self.pow(a, self.q - 2)

    def frobenius(self, a, times=1):
        return self.pow(a, self.p**(times % self.k))

    @property
    def primitive_element(self):
        """The least code that generates the multiplicative group."""
        if not hasattr(self, '_primitive'):
            primes = list(factorint(self.q - 1))
            for g in range(1, self.q):
                if all(int(self.pow(g, (self.q - 1)//r)) != 1 for r in primes):
                    self._primitive = g
                    break
        return self._primitive

    def degree(self, a):
        """Returns the degree over the prime field of the subfield generated by `a`."""
        for d in range(1, self.k + 1):
            if self.k % d == 0 and int(self.frobenius(a, d)) == int(a):
                return d

    def multiplicative_order(self, a):
        a = int(a)
        if a == 0:
            raise NotInvertible('zero has no multiplicative order')
        order = self.q - 1
        for r, m in factorint(order).items():
            for _ in range(m):
                if int(self.pow(a, order//r)) == 1:
                    order //= r
                else:
                    break
        return order

    def root_of_unity(self, order):
        """Returns the code of the canonical primitive root of unity of the given order."""
        if (self.q - 1) % order:
            raise InputError('%r has no primitive root of unity of order %d' % (self, order))
        return int(self.pow(self.primitive_element, (self.q - 1)//order))

    def format(self, a):
        """
        Renders a field element as a polynomial in `x`.

        >>> field_make(3, 2).format(5)
        '2+x'

        """
        coefficients = [int(c) for c in self.digits(a)]
        terms = []
        for j, c in enumerate(coefficients):
            if c:
                power = '' if j == 0 else 'x' if j == 1 else 'x^%d' % j
                terms.append(power if c == 1 and j else '%d%s' % (c, '*' + power if power else ''))
        return '+'.join(terms) if terms else '0'


def is_irreducible(p, coefficients):
    """
    Tests irreducibility of a monic polynomial over :math:`\\mathbb{F}_p` by the gcd criterion:
    a polynomial `f` of degree `k` is irreducible iff :math:`\\gcd(x^{p^i} - x, f) = 1` for every
    :math:`1 \\le i \\le k/2`.

    Parameters
    ----------
        p : int
            The characteristic.
        coefficients : list(int)
            Low-to-high coefficients of a monic polynomial.

    >>> is_irreducible(2, [1, 1, 1])
    True
    >>> is_irreducible(3, [2, 0, 1])
    False

    """
    f = [int(c) % p for c in reversed(coefficients)]
    k = len(f) - 1
    if k < 1:
        return False
    x = [1, 0]
    for i in range(1, k//2 + 1):
        h = gf_sub(gf_pow_mod(x, p**i, f, p, ZZ), x, p, ZZ)
        if gf_gcd(h, f, p, ZZ) != [1]:
            return False
    return True


@functools.lru_cache(maxsize=None)
def field_make(p, k=1, modulus=None):
    """
    Returns the field :math:`\\mathbb{F}_{p^k}`. Unless an explicit modulus is given, the modulus
    is the lexicographically least monic irreducible polynomial, where candidates are ordered by
    their coefficient code :math:`\\sum_j c_j p^j`.

    Parameters
    ----------
        p : int
            A prime number.
        k : int, optional, default=1
            The extension degree.

    >>> field_make(2, 2).modulus
    (1, 1, 1)

    """
    if not isprime(p):
        raise NonPrime('%s is not a prime number' % p)
    if k == 1:
        return FiniteField(p, 1, modulus)
    if modulus is None:
        for code in range(p**k):
            low = [(code // p**j) % p for j in range(k)]
            if low[0] and is_irreducible(p, low + [1]):
                modulus = tuple(low + [1])
                break
    elif not is_irreducible(p, modulus):
        raise InputError('modulus %s is reducible over GF(%d)' % (modulus, p))
    logger.debug('GF(%d^%d) with modulus %s', p, k, modulus)
    return FiniteField(p, k, tuple(modulus))


@functools.lru_cache(maxsize=None)
def witt_vectors2(field):
    """
    Returns the length-two Witt vectors :math:`W_2(\\mathbb{F}_{p^k})`, realized as the Galois
    ring of characteristic :math:`p^2` whose modulus lifts the field's modulus digit by digit.

    """
    return GaloisRing(field.p, field.k, 2, field.modulus)


class _PairRing(_Ring):
    """Pairs of codes of a base field packed as :math:`a + q b`."""

    def __init__(self, field):
        if not field.is_field:
            raise NotAField('%r is not a field' % field)
        self.field = field
        self.p = field.p
        self.q = field.q
        self.size = field.q**2

    def __eq__(self, other):
        return type(self) is type(other) and self.field == other.field

    def __hash__(self):
        return hash((type(self).__name__, self.field))

    def split(self, x):
        x = self.asarray(x)
        return x % self.q, x // self.q

    def make(self, a, b):
        return self.field.asarray(a) + self.q*self.field.asarray(b)

    def add(self, x, y):
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.make(self.field.add(a, c), self.field.add(b, d))

    def neg(self, x):
        a, b = self.split(x)
        return self.make(self.field.neg(a), self.field.neg(b))

    def sum(self, x, axis=None):
        a, b = self.split(x)
        return self.make(self.field.sum(a, axis), self.field.sum(b, axis))


class DualNumbers(_PairRing):
    """
    The ring :math:`\\mathbb{F}_q[\\epsilon]/(\\epsilon^2)`; the code of :math:`a + b\\epsilon` is
    :math:`a + q b`.

    """
    def __repr__(self):
        return '%r[eps]' % self.field

    def describe(self):
        return {'kind': 'Dual', 'field': self.field.describe()}

    @property
    def epsilon(self):
        return self.q

    @property
    def char(self):
        return self.p

    def mul(self, x, y):
        (a, b), (c, d) = self.split(x), self.split(y)
        F = self.field
        return self.make(F.mul(a, c), F.add(F.mul(a, d), F.mul(b, c)))

    def from_int(self, n):
        return self.field.from_int(n)

    def is_unit(self, x):
        return self.split(x)[0] != 0

    def inv(self, x):
        a, b = self.split(x)
        if np.any(a == 0):
            raise NotInvertible('attempted to divide by a multiple of epsilon')
        F = self.field
        ai = F.inv(a)
        return self.make(ai, F.neg(F.mul(b, F.mul(ai, ai))))

    def residue_field(self):
        return self.field

    def reduce(self, x):
        return self.split(x)[0]

    def lift(self, a):
        return self.field.asarray(a)


class SplitAlgebra(_PairRing):
    """
    The split quadratic algebra :math:`\\mathbb{F}_q \\times \\mathbb{F}_q` with componentwise
    operations; the code of :math:`(a, b)` is :math:`a + q b`.

    """
    def __repr__(self):
        return '%r x %r' % (self.field, self.field)

    def describe(self):
        return {'kind': 'Split', 'field': self.field.describe()}

    @property
    def one(self):
        return 1 + self.q

    def mul(self, x, y):
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.make(self.field.mul(a, c), self.field.mul(b, d))

    def from_int(self, n):
        a = self.field.from_int(n)
        return self.make(a, a)

    def is_unit(self, x):
        a, b = self.split(x)
        return (a != 0) & (b != 0)

    def inv(self, x):
        a, b = self.split(x)
        return self.make(self.field.inv(a), self.field.inv(b))

    def factor(self, x, index):
        """Projects onto the first (`index=0`) or second (`index=1`) factor."""
        return self.split(x)[index]


class ComplexNumbers(_Ring):
    """Double-precision complex numbers behind the ring interface, for floating-point oracles."""
    dtype = np.complex128
    is_exact = False

    def __repr__(self):
        return 'C'

    def describe(self):
        return {'kind': 'Complex'}

    def add(self, a, b):
        return self.asarray(a) + self.asarray(b)

    def neg(self, a):
        return -self.asarray(a)

    def mul(self, a, b):
        return self.asarray(a)*self.asarray(b)

    def sum(self, a, axis=None):
        return np.sum(self.asarray(a), axis=axis)

    def matmul(self, a, b):
        return np.matmul(self.asarray(a), self.asarray(b))

    def from_int(self, n):
        return self.asarray(n)

    def is_unit(self, a):
        return self.asarray(a) != 0

    def inv(self, a):
        return 1/self.asarray(a)


class Involution(object):
    """
    An involution of a residue algebra.

    Parameters
    ----------
        kind : str
            One of 'Identity', 'FrobeniusHalf' (:math:`x \\mapsto x^{q}` on :math:`\\mathbb{F}_{q^2}`)
            or 'SwapFactors' (on a :class:`SplitAlgebra`).
        ring : ring
            The algebra on which the involution acts.

    """
    IDENTITY = 'Identity'
    FROBENIUS_HALF = 'FrobeniusHalf'
    SWAP_FACTORS = 'SwapFactors'

    def __init__(self, kind, ring):
        if kind == self.FROBENIUS_HALF and not (getattr(ring, 'is_field', False) and ring.k % 2 == 0):
            raise InputError('FrobeniusHalf needs a field of even degree, got %r' % ring)
        if kind == self.SWAP_FACTORS and not isinstance(ring, SplitAlgebra):
            raise InputError('SwapFactors needs a split algebra, got %r' % ring)
        if kind not in (self.IDENTITY, self.FROBENIUS_HALF, self.SWAP_FACTORS):
            raise InputError('unknown involution %r' % kind)
        self.kind = kind
        self.ring = ring

    def __repr__(self):
        return 'Involution(%s, %r)' % (self.kind, self.ring)

    def __call__(self, a):
        if self.kind == self.FROBENIUS_HALF:
            return self.ring.frobenius(a, self.ring.k//2)
        if self.kind == self.SWAP_FACTORS:
            first, second = self.ring.split(a)
            return self.ring.make(second, first)
        return self.ring.asarray(a)

    def fixed_field_size(self):
        if self.kind == self.FROBENIUS_HALF:
            return self.ring.p**(self.ring.k//2)
        if self.kind == self.SWAP_FACTORS:
            return self.ring.q
        return self.ring.size


class Matrix(object):
    """
    An immutable dense matrix over one of the rings of this module.

    Parameters
    ----------
        ring : ring
            The coefficient ring.
        data : array-like
            A two-dimensional array of element codes.

    """
    def __init__(self, ring, data):
        array = np.array(data, dtype=ring.dtype)
        if array.ndim != 2:
            raise InputError('a matrix needs two-dimensional data')
        array.setflags(write=False)
        self.ring = ring
        self.data = array

    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring, n, value):
        data = np.zeros((n, n), dtype=ring.dtype)
        data[np.diag_indices(n)] = value
        return cls(ring, data)

    @classmethod
    def block_diag(cls, *blocks):
        ring = blocks[0].ring
        size = sum(b.rows for b in blocks)
        data = np.zeros((size, size), dtype=ring.dtype)
        start = 0
        for b in blocks:
            data[start:start+b.rows, start:start+b.cols] = b.data
            start += b.rows
        return cls(ring, data)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def T(self):
        return Matrix(self.ring, self.data.T)

    def __repr__(self):
        return 'Matrix(%r, %s)' % (self.ring, self.data.tolist())

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ring == other.ring and np.array_equal(self.data, other.data)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __matmul__(self, other):
        return Matrix(self.ring, self.ring.matmul(self.data, other.data))

    def __add__(self, other):
        return Matrix(self.ring, self.ring.add(self.data, other.data))

    def __sub__(self, other):
        return Matrix(self.ring, self.ring.sub(self.data, other.data))

    def __neg__(self):
        return Matrix(self.ring, self.ring.neg(self.data))

    def scale(self, c):
        return Matrix(self.ring, self.ring.mul(c, self.data))

    def apply(self, function):
        """Applies an entrywise map, for instance an :class:`Involution`."""
        return Matrix(self.ring, function(self.data))

    def tolist(self):
        return self.data.tolist()

    def tobytes(self):
        return self.data.tobytes()

    def trace(self):
        return self.ring.sum(np.diagonal(self.data))

    def is_identity(self):
        return self == Matrix.identity(self.ring, self.rows)

    def is_scalar(self):
        off = self.data[~np.eye(self.rows, dtype=bool)]
        diagonal = np.diagonal(self.data)
        return not np.any(off != self.ring.zero) and np.all(diagonal == diagonal[0])

    def kron(self, other):
        ring = self.ring
        block = ring.mul(self.data[:, None, :, None], other.data[None, :, None, :])
        return Matrix(ring, block.reshape(self.rows*other.rows, self.cols*other.cols))

    def power(self, exponent):
        if exponent < 0:
            return self.inverse().power(-exponent)
        ring = self.ring
        result = Matrix.identity(ring, self.rows).data
        base = self.data
        while exponent:
            if exponent & 1:
                result = ring.matmul(result, base)
            exponent >>= 1
            if exponent:
                base = ring.matmul(base, base)
        return Matrix(ring, result)

    def reduce(self):
        """Returns the reduction to the residue field of a dual-number or Galois ring."""
        field = self.ring.residue_field()
        return Matrix(field, self.ring.reduce(self.data))

    def _require_field(self):
        if not self.ring.is_field:
            raise NotAField('%r is not a field' % self.ring)

    def rref(self):
        """
        Returns the reduced row echelon form and the pivot columns. The pivot of each step is the
        lowest-index row with a nonzero entry in the first column that still has one.

        """
        self._require_field()
        return rref(self.ring, self.data)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Returns a basis of :math:`\\{x : Mx = 0\\}` as the rows of a matrix."""
        self._require_field()
        return Matrix(self.ring, nullspace(self.ring, self.data))

    def det(self):
        if self.rows != self.cols:
            raise InputError('determinant of a non-square matrix')
        if self.ring.is_field:
            return _field_det(self.ring, self.data)
        if not self.ring.is_exact:
            return np.linalg.det(self.data)
        return _division_free_det(self.ring, self.data)

    def inverse(self):
        ring = self.ring
        n = self.rows
        if ring.is_field:
            augmented = np.concatenate([self.data, Matrix.identity(ring, n).data], axis=1)
            reduced, pivots = rref(ring, augmented)
            if pivots[:n] != list(range(n)):
                raise Singular('matrix is singular over %r' % ring)
            return Matrix(ring, reduced[:, n:])
        if not ring.is_exact:
            return Matrix(ring, np.linalg.inv(self.data))
        if isinstance(ring, SplitAlgebra):
            first = Matrix(ring.field, ring.factor(self.data, 0)).inverse()
            second = Matrix(ring.field, ring.factor(self.data, 1)).inverse()
            return Matrix(ring, ring.make(first.data, second.data))
        residue = self.reduce()
        if residue.rank() < n:
            raise Singular('matrix reduction is singular over %r' % residue.ring)
        h = Matrix(ring, ring.lift(residue.inverse().data))
        two = Matrix.scalar(ring, n, ring.from_int(2))
        precision = 1
        while precision < getattr(ring, 'e', 2):
            h = h @ (two - self @ h)
            precision *= 2
        return h


def rref(ring, data):
    r = np.array(data, dtype=ring.dtype)
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nonzero = np.nonzero(r[row:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = row + nonzero[0]
        if pivot != row:
            r[[row, pivot]] = r[[pivot, row]]
        r[row] = ring.mul(r[row], ring.inv(r[row, col]))
        factors = r[:, col].copy()
        factors[row] = 0
        r = ring.sub(r, ring.mul(factors[:, None], r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, pivots


def nullspace(ring, data):
    reduced, pivots = rref(ring, data)
    cols = reduced.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=ring.dtype)
    for i, f in enumerate(free):
        basis[i, f] = ring.one
        for j, c in enumerate(pivots):
            basis[i, c] = ring.neg(reduced[j, f])
    return basis


def _field_det(ring, data):
    r = np.array(data, dtype=ring.dtype)
    n = r.shape[0]
    det = ring.one
    for col in range(n):
        nonzero = np.nonzero(r[col:, col])[0]
        if nonzero.size == 0:
            return ring.zero
        pivot = col + nonzero[0]
        if pivot != col:
            r[[col, pivot]] = r[[pivot, col]]
            det = ring.neg(det)
        det = ring.mul(det, r[col, col])
        factors = ring.mul(r[col+1:, col], ring.inv(r[col, col]))
        r[col+1:] = ring.sub(r[col+1:], ring.mul(factors[:, None], r[col][None, :]))
    return int(det)


def _division_free_det(ring, data):
    # Bird's algorithm: valid over any commutative ring.
    a = np.asarray(data, dtype=ring.dtype)
    n = a.shape[0]
    x = a
    upper = np.triu_indices(n, 1)
    for _ in range(n - 1):
        mu = np.zeros_like(a)
        diagonal = np.diagonal(x)
        for i in range(n):
            mu[i, i] = ring.neg(ring.sum(diagonal[i+1:], axis=0))
        mu[upper] = x[upper]
        x = ring.matmul(mu, a)
    det = x[0, 0]
    return int(ring.neg(det) if (n - 1) % 2 else det)


class Echelon(object):
    """
    An incrementally maintained reduced echelon basis of a subspace of :math:`K^m`.

    >>> F = field_make(5)
    >>> space = Echelon(F, 3)
    >>> space.insert([1, 2, 3]), space.insert([0, 1, 1]), space.insert([1, 3, 4])
    (True, True, False)
    >>> space.dim
    2

    """
    def __init__(self, ring, length):
        if not ring.is_field:
            raise NotAField('%r is not a field' % ring)
        self.ring = ring
        self.rows = np.zeros((0, length), dtype=ring.dtype)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, vectors):
        """Reduces a stack of vectors against the basis."""
        ring = self.ring
        v = ring.asarray(vectors)
        if self.pivots:
            coefficients = v[..., self.pivots]
            v = ring.sub(v, ring.sum(ring.mul(coefficients[..., :, None], self.rows), axis=-2))
        return v

    def insert(self, vector):
        ring = self.ring
        v = self.reduce(vector)
        nonzero = np.nonzero(v)[0]
        if nonzero.size == 0:
            return False
        col = int(nonzero[0])
        v = ring.mul(v, ring.inv(v[col]))
        if self.pivots:
            factors = self.rows[:, col].copy()
            self.rows = ring.sub(self.rows, ring.mul(factors[:, None], v[None, :]))
        self.rows = np.concatenate([self.rows, v[None, :]])
        self.pivots.append(col)
        return True

    def contains(self, vector):
        return not np.any(self.reduce(vector))


def eigenspace_dim(M, value):
    """
    Returns :math:`\\dim\\ker(M - \\lambda I)` by exact row reduction.

    Parameters
    ----------
        M : Matrix
            A square matrix over a field.
        value : int
            The code of the field element :math:`\\lambda`.

    """
    if not M.ring.is_field:
        raise NotAField('eigenspaces need a field, got %r' % M.ring)
    shifted = M - Matrix.scalar(M.ring, M.rows, value)
    return M.rows - shifted.rank()


@functools.lru_cache(maxsize=None)
def _gl_order_factors(n, q):
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order, factorint(order)


def element_order(M, bound=None):
    """
    Returns the multiplicative order of an invertible matrix, or :data:`UNBOUNDED` when it
    exceeds `bound`.

    Over a field the order is obtained by stripping prime factors from the order of
    :math:`\\mathrm{GL}_n(q)`. Over dual numbers and Galois rings it is the order of the
    reduction, multiplied by powers of `p` as needed.

    Parameters
    ----------
        M : Matrix
            A square invertible matrix.
        bound : int, optional, default=None
            The largest order of interest.

    """
    ring = M.ring
    if ring.is_field:
        if M.det() == 0:
            raise Singular('a singular matrix has no multiplicative order')
        order, factors = _gl_order_factors(M.rows, ring.q)
        for r, m in factors.items():
            for _ in range(m):
                if M.power(order//r).is_identity():
                    order //= r
                else:
                    break
    else:
        residue = M.reduce()
        if residue.det() == 0:
            raise Singular('a matrix with singular reduction has no multiplicative order')
        order = element_order(residue)
        power = M.power(order)
        while not power.is_identity():
            power = power.power(ring.p)
            order *= ring.p
    if bound is not None and order > bound:
        return UNBOUNDED
    return order
