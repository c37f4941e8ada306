import pytest

import jpprym
from jpprym.cyclo import count_cyclotomic_primes
from jpprym.utils import BadWeights
from jpprym.utils import DegenerateParameter
from jpprym.utils import InputError
from jpprym.utils import NonPrime


def test_weight_validation():
    params = jpprym.params_from_weights(jpprym.WeightVector(4, (1, 1, 1, 1)))
    assert params.exponents == (1, 1, 1, 1)
    assert params.n == 2
    with pytest.raises(BadWeights):
        jpprym.params_from_weights(jpprym.WeightVector(4, (1, 1, 1)))
    with pytest.raises(BadWeights):
        jpprym.params_from_weights(jpprym.WeightVector(4, (2, 2, 2, 2)))
    with pytest.raises(BadWeights):
        jpprym.params_from_weights(jpprym.WeightVector(5, (1, 1, 1, 1)))


def test_galois_twist():
    params = jpprym.SymbolicParams(5, (1, 2, 3, 4))
    assert jpprym.galois_twist(params, 2).exponents == (2, 4, 1, 3)
    with pytest.raises(InputError):
        jpprym.galois_twist(params, 5)


def test_split_prime_inert_and_split():
    inert = jpprym.split_prime(5, 2)
    assert [(rd.f, rd.involution) for rd in inert] == [(4, 'FrobeniusHalf')]
    single = jpprym.split_prime(7, 2)
    assert len(single) == 1
    assert single[0].exponents == (1, 6)
    assert single[0].involution == 'SwapFactors'
    pair = jpprym.split_prime(13, 3)
    assert [rd.exponents for rd in pair] == [(1, 12), (2, 11)]
    assert all(rd.f == 3 for rd in pair)
    with pytest.raises(NonPrime):
        jpprym.split_prime(7, 9)


def test_prime_count_matches_totient():
    assert count_cyclotomic_primes(13, 3) == 12
    assert count_cyclotomic_primes(7, 2) == 6
    assert count_cyclotomic_primes(15, 2) == 8


def test_ramified_prime():
    rd, = jpprym.split_prime(6, 3)
    assert rd.ramified
    assert rd.involution == 'Identity'
    assert rd.prime_to_p == 2
    assert rd.p_part == 3


def test_embeddings_of_a_split_prime():
    rd, = jpprym.split_prime(4, 5)
    assert rd.f == 1
    assert rd.embeddings == [2, 3]
    assert rd.to_dict()['embeddings'] == [2, 3]


def test_reduce_to_field_and_algebra():
    params = jpprym.params_from_weights(jpprym.WeightVector(2, (1, 1, 1, 1)))
    rd, = jpprym.split_prime(2, 5)
    reduced = jpprym.reduce_params(params, rd)
    assert reduced.values == (4, 4, 4, 4)
    assert reduced.validate() is reduced
    quartic = jpprym.params_from_weights(jpprym.WeightVector(4, (1, 1, 1, 1)))
    rd, = jpprym.split_prime(4, 5)
    algebra = jpprym.reduce_params(quartic, rd, target='algebra')
    assert algebra.lambda0 == 17
    assert jpprym.reduce_params(quartic, rd, which_embedding=1).lambda0 == 3


def test_degenerate_reduction():
    params = jpprym.params_from_weights(jpprym.WeightVector(3, (1, 1, 1, 0)))
    rd = jpprym.split_prime(3, 7)[0]
    with pytest.raises(DegenerateParameter):
        jpprym.reduce_params(params, rd)
    reduced = jpprym.reduce_params(params, rd, allow_degenerate=True)
    assert reduced.lambdas[-1] == 1


def test_dual_reduction_at_a_ramified_prime():
    params = jpprym.params_from_weights(jpprym.WeightVector(3, (1, 1, 2, 2)))
    rd, = jpprym.split_prime(3, 3)
    with pytest.raises(DegenerateParameter):
        jpprym.reduce_params(params, rd)
    dual = jpprym.reduce_params(params, rd, target='dual')
    assert dual.values == (4, 4, 7, 7)
    assert dual.validate() is dual
    membership = jpprym.rjp_membership(dual)
    assert not membership.all_units


def test_membership_and_validation():
    F = jpprym.field_make(5)
    params = jpprym.JPParams(F, 4, (4, 4, 4))
    assert jpprym.rjp_membership(params).all_units
    with pytest.raises(InputError):
        jpprym.JPParams(F, 2, (4, 4, 4)).validate()
    assert params.to_dict()['lambdas'] == [4, 4, 4]
