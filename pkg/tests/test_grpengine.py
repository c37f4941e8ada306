import functools
from math import gcd

import numpy as np
import pytest

import jpprym
from jpprym import grpengine
from jpprym.grpengine import ExceptionRegistry
from jpprym.grpengine import canonical_key
from jpprym.grpengine import pairwise_verdict
from jpprym.utils import DegenerateParameter
from jpprym.utils import DegenerateParams
from jpprym.utils import InputError
from jpprym.utils import NoSolution
from jpprym.utils import NotAField


def minus_one_tuple(n, p):
    F = jpprym.field_make(p)
    return jpprym.construct(jpprym.JPParams(F, p - 1, (p - 1,)*(n + 1)))


def test_classical_orders():
    assert grpengine.classical_order('Sp', 2, 3) == 24
    assert grpengine.classical_order('Sp', 2, 5) == 120
    assert grpengine.classical_order('Sp', 4, 3) == 51840
    assert grpengine.classical_order('GU', 3, 2) == 648
    assert grpengine.classical_order('GL', 2, 5) == 480
    with pytest.raises(InputError):
        grpengine.classical_order('Sp', 3, 5)
    with pytest.raises(InputError):
        grpengine.classical_order('O', 3, 5)


def test_bsgs_of_sl2():
    F = jpprym.field_make(5)
    upper = jpprym.Matrix(F, [[1, 1], [0, 1]])
    lower = jpprym.Matrix(F, [[1, 0], [1, 1]])
    group = jpprym.bsgs_build([upper, lower], seed=3)
    assert group.order == 120
    assert group.contains(jpprym.Matrix.scalar(F, 2, 4))
    assert not group.contains(jpprym.Matrix(F, [[2, 0], [0, 1]]))
    assert grpengine.scalar_subgroup_order(group) == 2
    with pytest.raises(NotAField):
        jpprym.BSGS([jpprym.Matrix(jpprym.witt_vectors2(F), [[1, 1], [0, 1]])])


@pytest.mark.parametrize('n, p, order', [(2, 3, 24), (2, 5, 120), (4, 3, 51840)])
def test_symplectic_images(n, p, order):
    result = jpprym.classify(minus_one_tuple(n, p))
    assert result.verdict == grpengine.SYMPLECTIC
    assert result.evidence['group_order'] == order
    assert result.evidence['form_kind'] == 'alternating'
    assert result.evidence['form_sign'] == -1
    assert result.evidence['form_involution'] == 'Identity'


def test_linear_image():
    F = jpprym.field_make(5)
    t = jpprym.construct(jpprym.JPParams(F, 2, (4, 4, 4, 2)))
    result = jpprym.classify(t)
    assert result.verdict == grpengine.LINEAR_RANGE
    order = result.evidence['group_order']
    assert order % grpengine.classical_order('SL', 3, 5) == 0
    assert grpengine.classical_order('GL', 3, 5) % order == 0


def test_rank_two_image_with_a_transvection():
    F = jpprym.field_make(5)
    t = jpprym.construct(jpprym.JPParams(F, 2, (3, 4, 4)))
    result = jpprym.classify(t)
    assert result.verdict == grpengine.EXTENDED_SL2
    assert result.evidence['kprime']['degree'] == 1


def test_exception_registry():
    params = jpprym.params_from_weights(jpprym.WeightVector(6, (1, 1, 1, 1, 1, 1)))
    rd = jpprym.split_prime(6, 7)[0]
    t = jpprym.construct(jpprym.reduce_params(params, rd))
    result = jpprym.classify(t, rd)
    assert result.verdict == grpengine.COMPLEX_REFLECTION_FINITE
    assert result.name == 'ST32'
    assert result.evidence['group_order'] is not None
    assert result.to_dict()['evidence']['prime']['p'] == 7
    registry = ExceptionRegistry()
    assert registry.lookup(jpprym.SymbolicParams(6, (1, 1, 2, 1, 1))) == 'ST26'
    assert registry.lookup(jpprym.SymbolicParams(6, (4, 5, 5, 5, 5))) == '3^{1+2}.2'
    assert registry.lookup(None) is None


def test_canonical_key_ignores_order_and_conjugation():
    key = canonical_key(jpprym.SymbolicParams(6, (1, 2, 1, 1, 1)))
    assert canonical_key(jpprym.SymbolicParams(6, (1, 1, 1, 2, 1))) == key
    assert canonical_key(jpprym.SymbolicParams(6, (5, 4, 5, 5, 5))) == key
    assert canonical_key(jpprym.SymbolicParams(6, (2, 1, 1, 1, 1))) != key


def test_pairwise_verdict_on_synthetic_orders():
    assert pairwise_verdict(120, 120, 120, 1, 1, 1) == grpengine.GRAPH
    assert pairwise_verdict(14400, 120, 120, 1, 1, 1) == grpengine.SURJECTIVE
    assert pairwise_verdict(120*480, 480, 480, 4, 4, 4) == grpengine.SURJECTIVE
    assert pairwise_verdict(7200, 120, 120, 1, 1, 1) == grpengine.UNKNOWN


def test_pairwise_same_embedding_and_dual_embedding():
    params = jpprym.params_from_weights(jpprym.WeightVector(7, (1, 1, 1, 4)))
    rd, = jpprym.split_prime(7, 2)
    same = jpprym.pairwise_test(params, rd, rd, 0, 0)
    assert same['verdict'] == grpengine.GRAPH
    dual = jpprym.pairwise_test(params, rd, rd, 0, 1)
    assert dual['verdict'] == grpengine.GRAPH
    assert dual['orders']['joint'] == dual['orders']['first'] == dual['orders']['second']


def test_pairwise_degenerate_and_mismatched_primes():
    params = jpprym.params_from_weights(jpprym.WeightVector(7, (1, 1, 5, 0)))
    rd, = jpprym.split_prime(7, 2)
    assert jpprym.pairwise_test(params, rd, rd, 0, 1) == {'verdict': grpengine.DEGENERATE}
    other = jpprym.split_prime(7, 3)[0]
    with pytest.raises(InputError):
        jpprym.pairwise_test(params, rd, other)


@pytest.mark.slow
def test_pairwise_surjective_at_two_primes():
    params = jpprym.params_from_weights(jpprym.WeightVector(13, (1, 1, 1, 10)))
    first, second = jpprym.split_prime(13, 3)
    result = jpprym.pairwise_test(params, first, second)
    assert result['verdict'] == grpengine.SURJECTIVE
    assert result['orders']['first'] % grpengine.classical_order('SL', 2, 27) == 0


@pytest.mark.slow
def test_unitary_image_in_dimension_five():
    params = jpprym.params_from_weights(jpprym.WeightVector(4, (1, 1, 1, 1, 1, 1, 2)))
    rd, = jpprym.split_prime(4, 3)
    t = jpprym.construct(jpprym.reduce_params(params, rd))
    assert t.n == 5
    result = jpprym.classify(t, rd)
    assert result.verdict == grpengine.UNITARY_RANGE
    assert result.evidence['form_kind'] == 'hermitian'
    order = result.evidence['group_order']
    assert order % grpengine.classical_order('SU', 5, 3) == 0
    assert grpengine.classical_order('GU', 5, 3) % order == 0


@pytest.mark.parametrize('exponents, name', [
    ((2, 1, 1, 1, 1), '3^{1+2}.2'),
    ((1, 2, 1, 1, 1), 'ST26'),
    pytest.param((1, 1, 1, 1, 1, 1), 'ST32', marks=pytest.mark.slow),
    ])
def test_exception_orders_agree_at_two_primes(exponents, name):
    params = jpprym.params_from_lambdas(6, exponents)
    orders = []
    for p in (7, 13):
        rd = jpprym.split_prime(6, p)[0]
        result = jpprym.classify(jpprym.construct(jpprym.reduce_params(params, rd)), rd)
        assert result.verdict == grpengine.COMPLEX_REFLECTION_FINITE
        assert result.name == name
        orders.append(result.evidence['group_order'])
    assert orders[0] is not None
    assert orders[0] == orders[1]


def test_form_evidence():
    alternating = grpengine.form_evidence(minus_one_tuple(2, 5))
    assert alternating == {'form_kind': 'alternating', 'form_sign': -1, 'form_involution': 'Identity'}
    t = jpprym.construct(jpprym.JPParams(jpprym.field_make(7), 3, (2, 2, 5, 2)))
    assert grpengine.form_evidence(t) == {'form_kind': None, 'form_sign': None, 'form_involution': None}


def random_weights(N, count, rng):
    while True:
        head = [int(x) for x in rng.randint(1, N, size=count - 1)]
        last = -sum(head) % N
        if last and functools.reduce(gcd, head + [last, N]) == 1:
            return tuple(head + [last])


@pytest.mark.parametrize('N, p', [(3, 7), (4, 5), (5, 11), (6, 7)])
def test_excluded_verdicts_never_occur(N, p):
    rng = np.random.RandomState(N)
    rd = jpprym.split_prime(N, p)[0]
    for _ in range(3):
        params = jpprym.params_from_weights(jpprym.WeightVector(N, random_weights(N, 4 + rng.randint(2), rng)))
        try:
            t = jpprym.construct(jpprym.reduce_params(params, rd))
        except (DegenerateParameter, DegenerateParams, NoSolution):
            continue
        verdict = jpprym.classify(t, rd).verdict
        assert verdict not in (grpengine.ORTHOGONAL_RANGE, grpengine.SYMMETRIC_SPN, grpengine.SPORADIC)
