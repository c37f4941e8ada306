import itertools
from fractions import Fraction

import numpy as np
import pytest

import jpprym
from jpprym.forms import hermitian_form
from jpprym.forms import signatures_agree
from jpprym.forms import trace_zero_coordinates
from jpprym.forms import trace_zero_element
from jpprym.utils import IllConditioned
from jpprym.utils import InputError
from jpprym.utils import NoForm
from jpprym.utils import PreconditionError


def test_alternating_form_of_transvections():
    t = jpprym.construct(jpprym.JPParams(jpprym.field_make(5), 4, (4, 4, 4)))
    form = jpprym.invariant_form(t, 'Identity')
    assert form.sign == -1
    assert form.nondegenerate
    assert form.is_invariant(t.gens)
    assert form.A == -form.A.T


def test_no_bilinear_form_without_self_duality():
    t = jpprym.construct(jpprym.JPParams(jpprym.field_make(7), 3, (2, 2, 5, 2)))
    with pytest.raises(NoForm):
        jpprym.invariant_form(t, 'Identity')


def test_hermitian_form_over_four_elements():
    F = jpprym.field_make(2, 2)
    t = jpprym.construct(jpprym.JPParams(F, 2, (3, 3, 3, 3)))
    form = jpprym.invariant_form(t, 'FrobeniusHalf')
    assert form.sign == -1
    assert form.nondegenerate
    assert form.is_invariant(t.gens)
    assert form.to_dict()['involution'] == 'FrobeniusHalf'


def test_split_prime_form():
    S = jpprym.SplitAlgebra(jpprym.field_make(5))
    a, b = int(S.make(2, 3)), int(S.make(3, 2))
    t = jpprym.construct(jpprym.JPParams(S, a, (a, b, b)))
    form = jpprym.invariant_form(t, 'SwapFactors')
    assert form.is_invariant(t.gens)
    with pytest.raises(InputError):
        jpprym.invariant_form(t, jpprym.Involution('Identity', jpprym.field_make(5)))


def test_signature_formula():
    assert jpprym.signature_formula(jpprym.SignatureQuery(['1/2']*4)) == (1, 1)
    assert jpprym.signature_formula(jpprym.SignatureQuery(['1/3', '1/3', '2/3', '2/3'])) == (1, 1)
    cubic = jpprym.SignatureQuery.from_weights(3, (1, 1, 1, 1, 1, 1))
    assert jpprym.signature_formula(cubic) == (1, 3)
    assert jpprym.signature_formula(jpprym.SignatureQuery.from_weights(3, (1, 1, 1, 1, 1, 1), d=2)) == (3, 1)


def test_signature_preconditions():
    with pytest.raises(PreconditionError):
        jpprym.signature_formula(jpprym.SignatureQuery(['1/2']*3))
    with pytest.raises(PreconditionError):
        jpprym.signature_formula(jpprym.SignatureQuery(['0', '1/2', '1/2', '0']))


@pytest.mark.parametrize('exponents', [
    ['1/2']*4,
    ['1/3']*6,
    ['1/4', '1/4', '3/4', '3/4', '1/2', '1/2'],
    ['2/5', '2/5', '2/5', '2/5', '2/5'],
    ])
def test_numeric_signature_matches_formula(exponents):
    assert signatures_agree(jpprym.SignatureQuery(exponents))


def test_numeric_signature_tolerance():
    query = jpprym.SignatureQuery(['1/2']*4)
    with pytest.raises(IllConditioned):
        jpprym.signature_numeric(query, tol=1e-300)
    with pytest.raises(PreconditionError):
        jpprym.signature_numeric(query, tol=0)


def test_explicit_hermitian_form_is_hermitian():
    H = hermitian_form(jpprym.SignatureQuery(['1/3', '1/3', '2/3', '2/3']))
    assert H.shape == (2, 2)
    assert np.allclose(H, H.conj().T)
    assert abs(np.linalg.det(H)) > 1e-9


def test_hermitian_form_leading_entry():
    F = jpprym.field_make(2, 2)
    t = jpprym.construct(jpprym.JPParams(F, 2, (3, 3, 3, 3)))
    form = jpprym.invariant_form(t, 'FrobeniusHalf')
    involution = form.involution
    assert trace_zero_element(involution) == 1
    lead = int(form.A.data.reshape(-1)[np.flatnonzero(form.A.data)[0]])
    alpha, beta = trace_zero_coordinates(involution, lead)
    assert alpha == 1 or (alpha, beta) == (0, 1)
    assert jpprym.invariant_form(t, 'FrobeniusHalf').A == form.A


def test_trace_zero_element_in_odd_characteristic():
    F = jpprym.field_make(3, 2)
    involution = jpprym.Involution('FrobeniusHalf', F)
    tau = trace_zero_element(involution)
    assert tau != 0
    assert int(involution(tau)) == int(F.neg(tau))
    assert trace_zero_coordinates(involution, tau) == (1, 0)
    assert trace_zero_coordinates(involution, int(F.mul(2, tau))) == (2, 0)


def random_signature_query(rng):
    while True:
        n = rng.randint(2, 7)
        D = rng.randint(2, 13)
        numerators = [int(x) for x in rng.randint(1, D, size=n + 1)]
        last = -sum(numerators) % D
        if last == 0:
            continue
        a = [Fraction(x, D) for x in numerators + [last]]
        # skip reducible tuples, where a partial product of the parameters is 1
        partial = [a[0] + sum(S) for size in range(1, n + 1) for S in itertools.combinations(a[1:], size)]
        partial += [sum(S) for size in range(1, n + 1) for S in itertools.combinations(a[1:], size)]
        if all(x.denominator != 1 for x in partial):
            return jpprym.SignatureQuery(tuple(str(x) for x in a))


def test_numeric_signature_on_random_queries():
    rng = np.random.RandomState(2024)
    for _ in range(50):
        query = random_signature_query(rng)
        pos, neg = jpprym.signature_numeric(query)
        assert pos + neg == query.n
        assert (pos, neg) == jpprym.signature_formula(query)
        assert signatures_agree(query)
