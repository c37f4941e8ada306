"""
.. module:: prymstats
   :platform: Unix, Windows
   :synopsis: closed-form counts for Prym varieties of cyclic covers, with brute-force oracles.

.. moduleauthor:: jpprym developers

The closed forms cover the dimension of eigenspaces of differentials, the rank of the Prym as a
:math:`\\mathbb{Z}[\\zeta_N]`-module, the torus rank of a seminormal degeneration, wild
multiplicities and expected Selmer sizes. Each has an independent oracle here: Riemann-Hurwitz
for genera, the homology of an equivariant dual graph for torus ranks, and explicit group
enumeration for orbit counts.

"""

import itertools
import logging
from dataclasses import dataclass
from dataclasses import field as datafield
from math import gcd

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph
from sympy import Matrix as RationalMatrix
from sympy import Poly
from sympy import Rational
from sympy import cyclotomic_poly
from sympy import factorint
from sympy import floor
from sympy import isprime
from sympy import legendre_symbol
from sympy import symbols

from jpprym.cyclo import euler_phi
from jpprym.exactalg import Involution
from jpprym.exactalg import Matrix
from jpprym.exactalg import field_make
from jpprym.utils import BadWeight
from jpprym.utils import InputError
from jpprym.utils import NegativeRank
from jpprym.utils import NonIntegral
from jpprym.utils import NotNormal
from jpprym.utils import PreconditionError
from jpprym.utils import RankTooSmall
from jpprym.utils import TooLarge
from jpprym.utils import UsageError
from jpprym.utils import settingsOrDefault

logger = logging.getLogger(__name__)

J0_COMPONENT_GROUPS = ('1', 'C3', 'C2^2', 'C3', '1')
"""Component groups of the reductions of the sextic twists of the :math:`j = 0` curve."""


def _frac(x):
    return x - floor(x)


def weight_dim(N, d, weights):
    """
    Dimension of the space of differentials of weight `d` on the cover
    :math:`y^N = \\prod_i (x - x_i)^{m_i}` of the projective line:
    :math:`-1 + \\sum_i \\{-d m_i/N\\}`.

    >>> weight_dim(2, 1, [1]*6)
    2

    """
    if d % N == 0:
        raise BadWeight('weight %d is divisible by %d' % (d, N))
    if sum(weights) % N:
        raise BadWeight('weights do not sum to zero modulo %d' % N)
    return int(-1 + sum(_frac(Rational(-d*m, N)) for m in weights))


def cover_genus(N, weights):
    """
    Genus of the cover by Riemann-Hurwitz, for a connected cover of the projective line:
    :math:`1 - N + \\frac{1}{2}\\sum_i (N - \\gcd(N, m_i))`.

    """
    total = sum(N - gcd(N, m % N) for m in weights)
    return int(1 - N + Rational(total, 2))


def prym_rank(N, num_ram_points, g):
    """Rank of the Prym as a :math:`\\mathbb{Z}[\\zeta_N]`-module over a base of genus `g`."""
    if num_ram_points < 0 or g < 0:
        raise InputError('counts must be nonnegative')
    rank = num_ram_points - 2 + 2*g
    if rank < 0:
        raise NegativeRank('%d points over genus %d give rank %d' % (num_ram_points, g, rank))
    return rank


@dataclass(frozen=True)
class CoverCombinatorics:
    """
    Orbit data of a :math:`\\mathbb{Z}/N` action on a nodal cover.

    Parameters
    ----------
        N : int
            The order of the group.
        b : int
            Free orbits on preimages of nodes in the normalization.
        nn : int
            Free orbits on nodes.
        c : int
            Free orbits on irreducible components.
        ii : int
            Free orbits on connected components.
        weights : tuple(int), optional
            Local weights of the smooth ramification points.
        genus : int, optional, default=0
            Genus of the quotient.

    """
    N: int
    b: int
    nn: int
    c: int
    ii: int
    weights: tuple = ()
    genus: int = 0

    def validate(self):
        if min(self.b, self.nn, self.c, self.ii) < 0:
            raise InputError('orbit counts must be nonnegative')
        return self


def torus_rank(cc):
    """
    Dimension of the torus part of the Prym: :math:`\\varphi(N)(b - nn - c + ii)`.

    >>> torus_rank(CoverCombinatorics(N=5, b=2, nn=1, c=1, ii=1))
    4

    """
    cc.validate()
    return euler_phi(cc.N)*(cc.b - cc.nn - cc.c + cc.ii)


def wild_multiplicity(g_cover, g_sub, p, l):
    """
    Multiplicity of a wildly ramified point: :math:`(g(C) - g(C/(\\mathbb{Z}/p)))/(p^l - p^{l-1})`.

    """
    if l < 1:
        raise InputError('the ramification exponent must be positive')
    unit = p**l - p**(l - 1)
    if (g_cover - g_sub) % unit:
        raise NonIntegral('%d is not divisible by %d' % (g_cover - g_sub, unit))
    return (g_cover - g_sub)//unit


@dataclass
class EquivariantGraph:
    """
    Dual graph of a nodal curve with a :math:`\\mathbb{Z}/N` action, given by orbits.

    A component orbit `u` of size `s` consists of :math:`u_0, \\dots, u_{s-1}` with
    :math:`\\sigma u_k = u_{k+1}`. An edge orbit of size `t` between `u` and `v` with shift `h`
    consists of nodes :math:`e_0, \\dots, e_{t-1}`, where :math:`e_j` joins
    :math:`u_{j \\bmod s_u}` and :math:`v_{(j+h) \\bmod s_v}`.

    """
    N: int
    components: dict = datafield(default_factory=dict)
    edges: list = datafield(default_factory=list)

    def validate(self):
        for name, size in self.components.items():
            if size < 1 or self.N % size:
                raise InputError('orbit size %d of component %s does not divide %d' % (size, name, self.N))
        for u, v, size, shift in self.edges:
            for name in (u, v):
                if name not in self.components:
                    raise InputError('edge refers to unknown component %s' % name)
            if size < 1 or self.N % size:
                raise InputError('edge orbit size %d does not divide %d' % (size, self.N))
            if size % self.components[u] or size % self.components[v]:
                raise InputError('edge orbit %s-%s is smaller than its end orbits' % (u, v))
        return self

    def expand(self):
        """
        Returns the vertices (components, then nodes) of the bipartite incidence graph, its
        half-edges as (node, component) pairs and the permutation :math:`\\sigma` of each set.

        """
        self.validate()
        vertices = []
        position = dict()
        for name, size in self.components.items():
            for k in range(size):
                position[('C', name, k)] = len(vertices)
                vertices.append(('C', name, k))
        half_edges = []
        for index, (u, v, size, shift) in enumerate(self.edges):
            for j in range(size):
                position[('E', index, j)] = len(vertices)
                vertices.append(('E', index, j))
            for side, (name, offset) in enumerate([(u, 0), (v, shift)]):
                for j in range(size):
                    target = ('C', name, (j + offset) % self.components[name])
                    half_edges.append((('E', index, j), target, side))

        def rotate(vertex):
            kind, name, k = vertex
            size = self.components[name] if kind == 'C' else self.edges[name][2]
            return (kind, name, (k + 1) % size)

        vertex_perm = [position[rotate(x)] for x in vertices]
        half_index = {(node, side): i for i, (node, _, side) in enumerate(half_edges)}
        half_perm = [half_index[(rotate(node), side)] for node, _, side in half_edges]
        incidences = [(position[node], position[target]) for node, target, _ in half_edges]
        return vertices, incidences, vertex_perm, half_perm

    def combinatorics(self):
        """Orbit counts of the graph, for :func:`torus_rank`."""
        vertices, incidences, vertex_perm, _ = self.expand()
        b = sum(2 for _, _, size, _ in self.edges if size == self.N)
        nn = sum(1 for _, _, size, _ in self.edges if size == self.N)
        c = sum(1 for size in self.components.values() if size == self.N)
        labels = _connected_labels(len(vertices), incidences)
        moved = {labels[i]: labels[vertex_perm[i]] for i in range(len(vertices))}
        ii = sum(1 for orbit in _cycles(moved) if len(orbit) == self.N)
        return CoverCombinatorics(self.N, b, nn, c, ii)


def _connected_labels(count, incidences):
    if not incidences:
        return list(range(count))
    rows, cols = zip(*incidences)
    adjacency = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(count, count))
    _, labels = csgraph.connected_components(adjacency, directed=False)
    return [int(x) for x in labels]


def _cycles(permutation):
    seen = set()
    for start in permutation:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = permutation[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = permutation[x]
        yield cycle


def graph_torus_rank(graph):
    """
    Rank of the :math:`\\zeta_N`-isotypic part of :math:`H_1` of the incidence graph, computed as
    the nullity of :math:`\\partial` stacked on :math:`\\Phi_N(\\sigma)` over the rationals.

    """
    vertices, incidences, _, half_perm = graph.expand()
    size = len(incidences)
    if size == 0:
        return 0
    boundary = np.zeros((len(vertices), size), dtype=np.int64)
    for i, (node, component) in enumerate(incidences):
        boundary[component, i] += 1
        boundary[node, i] -= 1
    sigma = np.zeros((size, size), dtype=np.int64)
    for i, j in enumerate(half_perm):
        sigma[j, i] = 1
    x = symbols('x')
    coefficients = Poly(cyclotomic_poly(graph.N, x), x).all_coeffs()
    phi = np.zeros((size, size), dtype=np.int64)
    for c in coefficients:
        phi = phi @ sigma + int(c)*np.eye(size, dtype=np.int64)
    stacked = RationalMatrix(np.concatenate([boundary, phi]).tolist())
    return size - stacked.rank()


def parse_graph(text):
    """
    Reads an equivariant graph. Lines are ``N <order>``, ``component <name> <orbit_size>`` and
    ``edge <u> <v> <orbit_size> [<shift>]``; ``#`` starts a comment.

    >>> g = parse_graph('N 2\\ncomponent a 1\\nedge a a 2')
    >>> g.N, g.components, g.edges
    (2, {'a': 1}, [('a', 'a', 2, 0)])

    """
    N = None
    components = dict()
    edges = []
    for number, line in enumerate(text.splitlines(), 1):
        fields = line.split('#', 1)[0].split()
        if not fields:
            continue
        try:
            if fields[0] == 'N' and len(fields) == 2:
                N = int(fields[1])
            elif fields[0] == 'component' and len(fields) == 3:
                components[fields[1]] = int(fields[2])
            elif fields[0] == 'edge' and len(fields) in (4, 5):
                shift = int(fields[4]) if len(fields) == 5 else 0
                edges.append((fields[1], fields[2], int(fields[3]), shift))
            else:
                raise ValueError(line)
        except ValueError:
            raise UsageError('cannot parse graph line %d: %r' % (number, line))
    if N is None:
        raise UsageError('the graph file has no N line')
    return EquivariantGraph(N, components, edges).validate()


def _element_key(g):
    return g.data.tobytes()


def enumerate_group(gens, settings=None):
    """Lists all elements of the group generated by `gens`, by closure under multiplication."""
    cap = settingsOrDefault(settings).brute_force_cap
    identity = Matrix.identity(gens[0].ring, gens[0].rows)
    elements = {_element_key(identity): identity}
    frontier = [identity]
    while frontier:
        found = []
        for x in frontier:
            for g in gens:
                y = x @ g
                key = _element_key(y)
                if key not in elements:
                    elements[key] = y
                    found.append(y)
        if len(elements) > cap:
            raise TooLarge('group exceeds %d elements' % cap)
        frontier = found
    return list(elements.values())


def burnside_coset_average(G, Nsub, coset_rep, points, act):
    """
    Evaluates both sides of the coset form of Burnside's lemma: the average number of fixed
    points of the elements of :math:`C = cN` equals the number of `N`-orbits preserved by `c`.

    Parameters
    ----------
        G : list(Matrix)
            Generators of the ambient group.
        Nsub : list(Matrix)
            All elements of the normal subgroup.
        coset_rep : Matrix
            The element `c`.
        points : list
            The finite set acted on, as hashable items.
        act : callable
            `act(g, x)` returns the image of `x` under `g`.

    Returns
    -------
        (Rational, int)

    Raises
    ------
        NotNormal
            If some generator of `G` does not normalize `Nsub`.

    """
    keys = {_element_key(n) for n in Nsub}
    for g in list(G) + [coset_rep]:
        g_inv = g.inverse()
        for n in Nsub:
            if _element_key(g @ n @ g_inv) not in keys:
                raise NotNormal('the subgroup is not normalized by the given elements')
    total = 0
    for n in Nsub:
        element = coset_rep @ n
        total += sum(1 for x in points if act(element, x) == x)
    orbits = _orbit_labels(Nsub, points, act)
    preserved = {orbits[x] for x in points if orbits[act(coset_rep, x)] == orbits[x]}
    return Rational(total, len(Nsub)), len(preserved)


def _orbit_labels(elements, points, act):
    labels = dict()
    for x in points:
        if x in labels:
            continue
        for n in elements:
            labels.setdefault(act(n, x), x)
    return labels


def lang_orbit_check(G, Nsub, c, points, act):
    """
    Lists the `N`-orbits preserved by `c` next to the average number of fixed points of the
    twisted elements :math:`c n`, the finite counterpart of a Lang-type bijection.

    """
    average, count = burnside_coset_average(G, Nsub, c, points, act)
    labels = _orbit_labels(Nsub, points, act)
    preserved = sorted({labels[x] for x in points if labels[act(c, x)] == labels[x]}, key=repr)
    return {'preserved_orbits': preserved, 'twisted_fixed_points': average, 'agree': average == count}


def vector_pair_action(g, point):
    """Action of `g` on :math:`V \\oplus V^*`: :math:`(v, \\lambda) \\mapsto (v g, \\lambda g^{-T})`."""
    ring = g.ring
    v, covector = point
    image = ring.matmul(np.array(v)[None, :], g.data)[0]
    dual = ring.matmul(np.array(covector)[None, :], g.inverse().T.data)[0]
    return tuple(int(x) for x in image), tuple(int(x) for x in dual)


def vector_pairs(ring, n):
    vectors = list(itertools.product(range(ring.size), repeat=n))
    return [(v, w) for v in vectors for w in vectors]


def elementary_transvections(F, n):
    """The matrices :math:`I + E_{ij}`, :math:`i \\ne j`, which generate :math:`\\mathrm{SL}_n` over a prime field."""
    gens = []
    for i, j in itertools.permutations(range(n), 2):
        t = np.eye(n, dtype=np.int64)
        t[i, j] = 1
        gens.append(Matrix(F, t))
    return gens


def coset_burnside(n, l, settings=None):
    """
    Burnside check for :math:`\\mathrm{SL}_n(\\mathbb{F}_l) \\subset \\mathrm{GL}_n(\\mathbb{F}_l)`
    acting on :math:`V \\oplus V^*`, with the coset of :math:`\\mathrm{diag}(g, 1, \\dots, 1)` for a
    primitive root `g`. For :math:`l = 2` the coset is the subgroup itself.

    """
    if not isprime(l):
        raise PreconditionError('l must be a prime')
    F = field_make(l)
    subgroup = enumerate_group(elementary_transvections(F, n), settings)
    data = np.eye(n, dtype=np.int64)
    data[0, 0] = F.primitive_element
    c = Matrix(F, data)
    return lang_orbit_check([c], subgroup, c, vector_pairs(F, n), vector_pair_action)


def sl_orbit_inventory(l):
    return {'nonzero_pairing': l - 1, 'zero_zero': 1, 'vector_only': 1, 'covector_only': 1,
            'isotropic_pair': 1}


def sl_orbit_count(n, l):
    """
    Number of orbits of :math:`\\mathrm{SL}_n(\\mathbb{F}_l)` on :math:`V \\oplus V^*` for
    :math:`n \\ge 3`, with the inventory by the value of the pairing.

    >>> sl_orbit_count(3, 5)[0]
    8

    """
    if n < 3:
        raise RankTooSmall('orbit counts are uniform only for n >= 3, got %d' % n)
    return l + 3, sl_orbit_inventory(l)


def sl_orbit_count_bruteforce(n, l, settings=None):
    """
    Counts orbits of :math:`\\mathrm{SL}_n(\\mathbb{F}_l)` on :math:`V \\oplus V^*` as connected
    components of the action graph of the elementary transvections.

    """
    size = l**(2*n)
    if size > settingsOrDefault(settings).brute_force_cap:
        raise TooLarge('%d points exceed the brute-force cap' % size)
    F = field_make(l)
    codes = np.arange(size)
    digits = (codes[:, None] // l**np.arange(2*n)) % l
    weights = l**np.arange(2*n)
    rows, cols = [], []
    for g in elementary_transvections(F, n):
        action = np.zeros((2*n, 2*n), dtype=np.int64)
        action[:n, :n] = g.data
        action[n:, n:] = g.inverse().T.data
        images = (digits @ action) % l
        rows.append(codes)
        cols.append(images @ weights)
    adjacency = sparse.csr_matrix((np.ones(len(rows)*size), (np.concatenate(rows), np.concatenate(cols))),
                                  shape=(size, size))
    count, _ = csgraph.connected_components(adjacency, directed=True, connection='weak')
    return int(count)


@dataclass(frozen=True)
class SelmerQuery:
    """
    Parameters of the expected Selmer size for the family of sextic twists.

    Parameters
    ----------
        l : int
            The Selmer prime.
        n : int, optional, default=3
            Rank of the monodromy module.
        q_mod_3 : int, optional, default=1
            The residue of the base field size modulo 3. With 2 the Frobenius acts on the cube
            roots of unity and the arithmetic monodromy lies in the semilinear coset, where no
            limit is known.
        allow_l3 : bool, optional, default=False
            Enables :math:`l = 3`, where the formula keeps holding.

    The limit assumes fibers without reducible components.

    """
    l: int
    n: int = 3
    q_mod_3: int = 1
    allow_l3: bool = False

    def validate(self):
        if not isprime(self.l):
            raise PreconditionError('l must be a prime')
        if self.n < 3:
            raise RankTooSmall('rank %d is below 3' % self.n)
        if self.q_mod_3 not in (1, 2):
            raise PreconditionError('q must be congruent to 1 or 2 modulo 3')
        if self.l == 3 and not self.allow_l3:
            raise PreconditionError('l = 3 needs allow_l3')
        return self


def expected_selmer(sq):
    """
    Limit of the average Selmer size, :math:`l + 2 + (l/3)`, over base fields of size
    :math:`q \\equiv 1 \\pmod 3` only.

    >>> expected_selmer(SelmerQuery(7))
    10

    """
    sq.validate()
    if sq.q_mod_3 != 1:
        raise PreconditionError('the limit is known only for q congruent to 1 modulo 3')
    return sq.l + 2 + int(legendre_symbol(sq.l % 3, 3))


def unitary_group(n, q, settings=None):
    """
    Enumerates :math:`\\mathrm{GU}_n(q) \\subset \\mathrm{GL}_n(q^2)` with respect to the identity
    Hermitian form by testing every matrix.

    """
    p, k = _prime_power(q)
    F = field_make(p, 2*k)
    count = F.q**(n*n)
    if count > settingsOrDefault(settings).brute_force_cap:
        raise TooLarge('%d candidate matrices exceed the brute-force cap' % count)
    conj = Involution(Involution.FROBENIUS_HALF, F)
    identity = np.eye(n, dtype=np.int64)
    members = []
    for start in range(0, count, 16384):
        codes = np.arange(start, min(count, start + 16384))
        stack = ((codes[:, None] // F.q**np.arange(n*n)) % F.q).reshape(-1, n, n)
        product = F.matmul(stack, np.swapaxes(conj(stack), 1, 2))
        good = np.all(product == identity, axis=(1, 2))
        members.extend(Matrix(F, m) for m in stack[good])
    return members


def _prime_power(q):
    factors = factorint(q)
    if len(factors) != 1:
        raise InputError('%d is not a prime power' % q)
    return next(iter(factors.items()))


def fixed_space_average(elements):
    """Average of :math:`|\\ker(g - 1)|` over a list of matrices over a finite field."""
    ring = elements[0].ring
    total = 0
    for g in elements:
        nullity = g.rows - (g - Matrix.identity(ring, g.rows)).rank()
        total += ring.size**nullity
    return Rational(total, len(elements))
