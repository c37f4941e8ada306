import numpy as np
import pytest

import jpprym
from jpprym import lifting
from jpprym.prymstats import elementary_transvections
from jpprym.utils import BadTarget
from jpprym.utils import InputError
from jpprym.utils import PreconditionError

GENERIC = {
    (5, 3): (2, (4, 4, 4, 2)),
    (5, 4): (2, (4, 4, 4, 4, 3)),
    (5, 5): (2, (4, 4, 4, 4, 4, 2)),
    (7, 3): (3, (4, 4, 4, 5)),
    (7, 4): (3, (4, 4, 4, 4, 3)),
    (7, 5): (3, (4, 4, 4, 4, 4, 6)),
    }


def lift_params(p, lambda0, lambdas, nus, k=1):
    F = jpprym.field_make(p, k)
    return jpprym.LiftParams(jpprym.JPParams(F, lambda0, lambdas), nus)


def epsilon_matrix(B):
    D = jpprym.DualNumbers(B.ring)
    return jpprym.Matrix(D, D.make(np.eye(B.rows, dtype=np.int64), B.data))


def test_lift_params_validation():
    lp = lift_params(5, 2, (3, 4, 4), (1, 1, 4, 4))
    assert lp.validate() is lp
    assert not lp.totally_ramified
    with pytest.raises(InputError):
        lift_params(5, 2, (3, 4, 4), (1, 1, 4)).validate()
    with pytest.raises(InputError):
        lift_params(5, 2, (3, 4, 4), (1, 1, 1, 1)).validate()
    D = jpprym.DualNumbers(jpprym.field_make(5))
    with pytest.raises(InputError):
        jpprym.LiftParams(jpprym.JPParams(D, 2, (3, 4, 4)), (0, 0, 0, 0)).validate()


def test_dual_params():
    dual = lift_params(5, 2, (3, 4, 4), (1, 1, 4, 4)).dual_params()
    D = dual.ring
    assert dual.lambda0 == D.make(2, 2)
    assert dual.validate() is dual


def test_jordan_parts():
    D = jpprym.DualNumbers(jpprym.field_make(5))
    g = jpprym.Matrix(D, [[D.make(2, 2), 0], [0, 1]])
    g_s, g_u = jpprym.jordan_parts(g)
    assert g_s.tolist() == [[2, 0], [0, 1]]
    assert g_u.tolist() == [[6, 0], [0, 1]]
    assert g_s @ g_u == g
    assert g_s @ g_u == g_u @ g_s


@pytest.mark.parametrize('p, n', sorted(GENERIC))
def test_generic_parameters_lift(p, n):
    lambda0, lambdas = GENERIC[(p, n)]
    nus = (1,) + (0,)*n + (p - 1,)
    lp = lift_params(p, lambda0, lambdas, nus)
    element = jpprym.lie_detect(lp, seed=1)
    assert element is not None
    assert element.strategy == 'power'
    assert element.nonscalar
    t = jpprym.construct(lp.dual_params())
    assert lifting.evaluate_word(t, element.origin) == epsilon_matrix(element.B)
    residue = jpprym.construct(lp.base)
    assert jpprym.span_full(element, residue.gens, 'sl')


def test_equal_nus_at_three_do_not_lift():
    lp = lift_params(3, 2, (2, 2, 2, 2, 2), (1,)*6)
    assert lp.totally_ramified
    assert jpprym.lie_detect(lp) is None


def test_ramified_reduction_of_the_sextic_family():
    params = jpprym.params_from_weights(jpprym.WeightVector(6, (1, 1, 1, 1, 1, 1)))
    rd, = jpprym.split_prime(6, 3)
    lp = lifting.lift_params_from_weights(params, rd)
    assert lp.base.values == (2, 2, 2, 2, 2, 2)
    assert lp.nus == (2, 2, 2, 2, 2, 2)
    assert jpprym.lie_detect(lp) is None


def test_characteristic_two_squares():
    lp = lift_params(2, 2, (3, 3, 3, 3), (1, 0, 0, 0, 1), k=2)
    element = jpprym.lie_detect(lp)
    assert element.strategy == 'char2'
    assert element.origin == ((1, 2),)
    assert element.nus_equal is False
    assert element.to_dict()['nus_equal'] is False
    t = jpprym.construct(lp.dual_params())
    assert lifting.evaluate_word(t, element.origin) == epsilon_matrix(element.B)
    assert jpprym.lie_detect(lift_params(2, 2, (3, 3, 3, 3), (0,)*5, k=2)) is None


def test_conjugate_search():
    lp = lift_params(5, 2, (3, 4, 4), (1, 1, 4, 4))
    element = jpprym.lie_detect(lp, seed=0)
    assert element.strategy == 'conjugate'
    assert element.nonscalar
    t = jpprym.construct(lp.dual_params())
    assert lifting.evaluate_word(t, element.origin) == epsilon_matrix(element.B)
    assert element.to_dict()['strategy'] == 'conjugate'
    assert 'nus_equal' not in element.to_dict()


def test_span_of_an_elementary_matrix():
    F = jpprym.field_make(5)
    seed = jpprym.LieElement(jpprym.Matrix(F, [[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    assert jpprym.span_full(seed, elementary_transvections(F, 3), 'sl')
    assert not jpprym.span_full(seed, [jpprym.Matrix.identity(F, 3)], 'sl')
    with pytest.raises(PreconditionError):
        jpprym.span_full(jpprym.LieElement(jpprym.Matrix.identity(F, 3)), [], 'sl')


def test_symplectic_span():
    F = jpprym.field_make(5)
    t = jpprym.construct(jpprym.JPParams(F, 4, (4, 4, 4, 4, 4)))
    J = jpprym.invariant_form(t, 'Identity').A
    E = np.zeros((4, 4), dtype=np.int64)
    E[0, 1], E[1, 0] = 1, 4
    seed = jpprym.LieElement(jpprym.Matrix(F, E) @ J.inverse())
    assert jpprym.span_full(seed, t.gens, 'sp', J)


def test_target_dimensions():
    F = jpprym.field_make(3)
    assert lifting.target_basis(F, 3, 'sl').shape[0] == 8
    J = jpprym.Matrix(F, [[0, 1], [2, 0]])
    assert lifting.target_basis(F, 2, 'sp', J).shape[0] == 0
    assert lifting.target_basis(jpprym.field_make(3, 2), 2, 'sl').shape[0] == 6
    with pytest.raises(BadTarget):
        lifting.target_basis(F, 3, 'so')
    with pytest.raises(BadTarget):
        lifting.target_basis(F, 3, 'sp', jpprym.Matrix.identity(F, 3))
    with pytest.raises(BadTarget):
        lifting.target_basis(F, 3, 'su')


def test_sl2_over_witt_vectors_does_not_split():
    result = jpprym.sl2_w2_split_test()
    assert not result.splits
    assert result.order_two_lifts == (16, 16)
    R = jpprym.witt_vectors2(jpprym.field_make(2, 2))
    corner = int(R.mul(R.from_int(2), R.add(R.generator, 1)))
    assert result.witness_commutator.tolist() == [[1, corner], [0, 1]]
    assert result.to_dict()['splits'] is False


def test_sl2_split_test_variants():
    assert jpprym.sl2_w2_split_test(require_commuting=False).splits
    assert jpprym.sl2_w2_split_test(field=jpprym.field_make(2)).splits
    with pytest.raises(InputError):
        jpprym.sl2_w2_split_test(field=jpprym.field_make(3))


def test_transvection_squares_over_witt_vectors():
    R = jpprym.witt_vectors2(jpprym.field_make(2, 2))
    x = 4
    xx = int(R.pow(x, 2))
    exact = jpprym.construct(jpprym.JPParams(R, x, (xx,)*4))
    assert lifting.transvection_square_check(exact) == {1: True, 2: True, 3: True, 4: True}
    twisted = int(R.mul(3, xx))
    shifted = jpprym.construct(jpprym.JPParams(R, x, (twisted,)*4))
    assert lifting.transvection_square_check(shifted) == {1: False, 2: False, 3: False, 4: False}
