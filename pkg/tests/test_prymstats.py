import itertools

import numpy as np
import pytest

import jpprym
from jpprym import prymstats
from jpprym.utils import BadWeight
from jpprym.utils import InputError
from jpprym.utils import NegativeRank
from jpprym.utils import NonIntegral
from jpprym.utils import NotNormal
from jpprym.utils import PreconditionError
from jpprym.utils import RankTooSmall
from jpprym.utils import Settings
from jpprym.utils import TooLarge
from jpprym.utils import UsageError


@pytest.mark.parametrize('N, weights', [(2, [1]*6), (3, [1]*6), (5, [1, 1, 1, 2]), (4, [1, 1, 3, 3]), (6, [1, 2, 3, 4, 2])])
def test_weight_dims_add_up_to_the_genus(N, weights):
    total = sum(jpprym.weight_dim(N, d, weights) for d in range(1, N))
    assert total == prymstats.cover_genus(N, weights)


def test_weight_dim_values():
    assert jpprym.weight_dim(3, 1, [1]*6) == 3
    assert jpprym.weight_dim(3, 2, [1]*6) == 1
    assert jpprym.weight_dim(5, 4, [1, 1, 1, 2]) == 0
    with pytest.raises(BadWeight):
        jpprym.weight_dim(3, 3, [1]*6)
    with pytest.raises(BadWeight):
        jpprym.weight_dim(3, 1, [1]*5)


def test_prym_rank():
    assert jpprym.prym_rank(5, 6, 0) == 4
    assert jpprym.prym_rank(5, 0, 2) == 2
    with pytest.raises(NegativeRank):
        jpprym.prym_rank(5, 1, 0)
    with pytest.raises(InputError):
        jpprym.prym_rank(5, -1, 0)


def test_wild_multiplicity():
    assert jpprym.wild_multiplicity(10, 2, 2, 2) == 4
    with pytest.raises(NonIntegral):
        jpprym.wild_multiplicity(5, 2, 3, 1)
    with pytest.raises(InputError):
        jpprym.wild_multiplicity(5, 2, 3, 0)


def test_torus_rank_formula():
    assert jpprym.torus_rank(jpprym.CoverCombinatorics(N=5, b=2, nn=1, c=1, ii=1)) == 4
    with pytest.raises(InputError):
        jpprym.torus_rank(jpprym.CoverCombinatorics(N=5, b=-1, nn=1, c=1, ii=1))


@pytest.mark.parametrize('text, rank', [
    ('N 2\ncomponent a 1\nedge a a 2', 1),
    ('N 2\ncomponent a 2\nedge a a 2 1', 0),
    ('N 2\ncomponent a 2\nedge a a 2', 1),
    ('N 3\ncomponent a 1\ncomponent b 1\nedge a b 3  # three nodes', 2),
    ])
def test_torus_rank_agrees_with_graph_homology(text, rank):
    graph = prymstats.parse_graph(text)
    assert prymstats.graph_torus_rank(graph) == rank
    assert jpprym.torus_rank(graph.combinatorics()) == rank


def test_parse_graph_errors():
    with pytest.raises(UsageError):
        prymstats.parse_graph('N 2\nvertex a 1')
    with pytest.raises(UsageError):
        prymstats.parse_graph('component a 1')
    with pytest.raises(InputError):
        prymstats.parse_graph('N 4\ncomponent a 3')


@pytest.mark.parametrize('n, l, count', [(3, 2, 5), (3, 3, 6), (3, 5, 8), (4, 2, 5)])
def test_orbit_count_matches_enumeration(n, l, count):
    assert jpprym.sl_orbit_count(n, l)[0] == count
    assert sum(jpprym.sl_orbit_count(n, l)[1].values()) == count
    assert prymstats.sl_orbit_count_bruteforce(n, l) == count


def test_orbit_count_limits():
    with pytest.raises(RankTooSmall):
        jpprym.sl_orbit_count(2, 5)
    with pytest.raises(TooLarge):
        prymstats.sl_orbit_count_bruteforce(3, 5, Settings(brute_force_cap=10))


def test_coset_burnside():
    result = prymstats.coset_burnside(3, 2)
    assert result['agree']
    assert result['twisted_fixed_points'] == 5
    assert len(result['preserved_orbits']) == 5
    with pytest.raises(PreconditionError):
        prymstats.coset_burnside(3, 4)


def test_burnside_requires_a_normal_subgroup():
    F = jpprym.field_make(3)
    diagonal = prymstats.enumerate_group([jpprym.Matrix(F, [[2, 0], [0, 1]])])
    assert len(diagonal) == 2
    upper = jpprym.Matrix(F, [[1, 1], [0, 1]])
    points = prymstats.vector_pairs(F, 2)
    with pytest.raises(NotNormal):
        jpprym.burnside_coset_average([upper], diagonal, upper, points, prymstats.vector_pair_action)


def test_expected_selmer():
    assert [jpprym.expected_selmer(jpprym.SelmerQuery(l)) for l in (2, 5, 7)] == [3, 6, 10]
    assert jpprym.expected_selmer(jpprym.SelmerQuery(3, allow_l3=True)) == 5
    with pytest.raises(PreconditionError):
        jpprym.expected_selmer(jpprym.SelmerQuery(3))
    with pytest.raises(PreconditionError):
        jpprym.expected_selmer(jpprym.SelmerQuery(4))
    with pytest.raises(PreconditionError):
        jpprym.expected_selmer(jpprym.SelmerQuery(7, q_mod_3=0))
    with pytest.raises(PreconditionError):
        jpprym.expected_selmer(jpprym.SelmerQuery(7, q_mod_3=2))
    with pytest.raises(RankTooSmall):
        jpprym.expected_selmer(jpprym.SelmerQuery(7, n=2))


def test_unitary_fixed_space_average():
    group = prymstats.unitary_group(3, 2)
    assert len(group) == 648
    assert prymstats.fixed_space_average(group) == 3
    with pytest.raises(InputError):
        prymstats.unitary_group(3, 6)


def test_component_groups():
    assert len(prymstats.J0_COMPONENT_GROUPS) == 5


@pytest.mark.parametrize('N', range(2, 13))
def test_weight_dims_of_opposite_weights(N):
    for head in itertools.combinations_with_replacement(range(1, N), 3):
        weights = list(head) + [-sum(head) % N]
        for d in range(1, N):
            moving = sum(1 for m in weights if d*m % N)
            assert jpprym.weight_dim(N, d, weights) + jpprym.weight_dim(N, N - d, weights) == moving - 2


def test_weight_dims_add_up_to_the_genus_of_sampled_covers():
    rng = np.random.RandomState(12)
    for _ in range(100):
        N = rng.randint(2, 13)
        head = [int(x) for x in rng.randint(1, N, size=rng.randint(2, 8))]
        weights = head + [-sum(head) % N]
        total = sum(jpprym.weight_dim(N, d, weights) for d in range(1, N))
        assert total == prymstats.cover_genus(N, weights)
