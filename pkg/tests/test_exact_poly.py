import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qinv.exact_poly import (
    MultiPoly, poly_diff, poly_eval, poly_eval_exact, poly_mul, poly_subst_linear, variables,
)
from qinv.invariants import E, F, delta, gamma

z0, z1, z2, z3 = variables()

exps = st.tuples(*[st.integers(0, 3)] * 4)
coefs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
polys = st.dictionaries(exps, coefs, max_size=6).map(MultiPoly)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
matrices = st.lists(st.lists(small_rationals, min_size=4, max_size=4), min_size=4, max_size=4)


def test_difference_of_squares():
    assert poly_mul(z0 + z1, z0 - z1) == z0**2 - z1**2


@given(polys)
def test_multiplicative_identity(p):
    assert p * 1 == p
    assert p * MultiPoly.const(1) == p


def test_delta_squared_is_gamma():
    assert poly_mul(delta(), delta()) == gamma()
    assert gamma().degree() == 24


def test_canonical_form_and_zero_coefficients():
    p = MultiPoly({(1, 0, 0, 0): Fraction(1, 2), (0, 1, 0, 0): 0})
    assert len(p) == 1
    assert (p - p).is_zero()
    assert (p - p) == MultiPoly.zero()
    assert MultiPoly({(1, 0, 0, 0): Fraction(2, 4)}) == p
    assert hash(MultiPoly({(1, 0, 0, 0): Fraction(2, 4)})) == hash(p)


def test_terms_graded_lex_order():
    p = z0 * z1 + z3**3 + z0**2 + 5
    degs = [sum(e) for e, _ in p.terms()]
    assert degs == sorted(degs, reverse=True)
    assert p.terms()[0][0] == (0, 0, 0, 3)
    assert p.terms()[-1] == ((0, 0, 0, 0), Fraction(5))


def test_eval_examples():
    assert poly_eval(E(3), [1, 0, 0, 0]) == 1
    w = np.exp(1j * np.pi / 3)
    zl = np.array([1, w, np.conj(w), 0]) / np.sqrt(3)
    assert abs(poly_eval(E(3), zl) - 1 / 9) < 1e-12
    assert poly_eval_exact(gamma(), [1, 2, 3, 4]) == 22_861_440_000


def test_gamma_at_1234_oracle():
    # direct product of (z_i^2 - z_j^2)^2
    z = [1, 2, 3, 4]
    expected = math.prod((z[i] ** 2 - z[j] ** 2) ** 2 for i in range(4) for j in range(i + 1, 4))
    assert expected == 151200**2 == 22_861_440_000
    assert poly_eval_exact(gamma(), z) == expected
    assert abs(poly_eval(gamma(), z) - expected) <= 1e-12 * expected


def test_diff_examples():
    assert poly_diff(E(1), 0) == 2 * z0
    assert poly_diff(E(0), 3) == z0 * z1 * z2
    assert poly_diff(F(1), 2) == 2 * z2


def test_subst_examples():
    sigma1 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    assert poly_subst_linear(E(0), sigma1) == -E(0)
    h = Fraction(1, 2)
    tau = [[h, h, h, h], [h, h, -h, -h], [h, -h, h, -h], [h, -h, -h, h]]
    assert poly_subst_linear(E(1), tau) == E(1)
    assert poly_subst_linear(E(2), tau) == Fraction(3, 4) * E(1) ** 2 - E(2) / 2 + 6 * E(0)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a + (-a) == MultiPoly.zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.integers(0, 3))
def test_leibniz_rule(a, b, i):
    assert poly_diff(a * b, i) == poly_diff(a, i) * b + a * poly_diff(b, i)


@settings(max_examples=40, deadline=None)
@given(polys, polys, matrices)
def test_substitution_is_ring_homomorphism(p, q, m):
    assert poly_subst_linear(p * q, m) == poly_subst_linear(p, m) * poly_subst_linear(q, m)
    assert poly_subst_linear(p + q, m) == poly_subst_linear(p, m) + poly_subst_linear(q, m)


@settings(max_examples=40, deadline=None)
@given(polys, matrices, st.lists(small_rationals, min_size=4, max_size=4))
def test_substitution_matches_evaluation(p, m, x):
    # (p o M)(x) == p(M x), exactly
    mx = [sum(m[i][j] * x[j] for j in range(4)) for i in range(4)]
    assert poly_subst_linear(p, m).eval_exact(x) == p.eval_exact(mx)


@settings(max_examples=60, deadline=None)
@given(polys, st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=16), min_size=4, max_size=4))
def test_exact_and_float_evaluation_agree(p, x):
    exact = p.eval_exact(x)
    approx = poly_eval(p, [float(v) for v in x])
    scale = max(abs(exact), 1)
    assert abs(approx - float(exact)) <= 1e-12 * scale


def test_float_eval_error_bounded_by_term_magnitudes(rng):
    # cancellation-prone invariants: error stays at rounding level of sum |terms|
    for _ in range(50):
        x = [Fraction(int(v), 64) for v in rng.integers(-640, 641, size=4)]
        xf = [float(v) for v in x]
        for p in (E(3), F(4), F(6), delta(), gamma()):
            err = abs(poly_eval(p, xf) - float(p.eval_exact(x)))
            assert err <= 1e-14 * p.compile().abs_sum(xf)


def test_batch_evaluation(rng):
    Z = rng.normal(size=(7, 4)) + 1j * rng.normal(size=(7, 4))
    batch = F(3).compile()(Z)
    assert batch.shape == (7,)
    np.testing.assert_allclose(batch, [poly_eval(F(3), z) for z in Z], rtol=1e-14)


def test_json_round_trip():
    p = F(3) - Fraction(7, 3) * E(0)
    data = json.loads(json.dumps(p.to_json()))
    assert MultiPoly.from_json(data) == p
    assert all(isinstance(t["num"], str) and isinstance(t["den"], str) for t in data["terms"])


def test_large_coefficients_are_exact():
    p = (z0 * 10**30 + Fraction(1, 3)) ** 3
    assert p.coeff((3, 0, 0, 0)) == 10**90
    assert p.coeff((0, 0, 0, 0)) == Fraction(1, 27)


@pytest.mark.parametrize("bad", [-1, 4])
def test_bad_variable_index(bad):
    with pytest.raises(ValueError):
        MultiPoly.var(bad)
    with pytest.raises(ValueError):
        poly_diff(E(1), bad)


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MultiPoly({(1, 0, 0, 0): 0.1})


def test_from_json_rejects_garbage():
    with pytest.raises(ValueError):
        MultiPoly.from_json({"terms": [{"exp": [1, 0], "num": "1", "den": "1"}]})
    with pytest.raises(ValueError):
        MultiPoly.from_json({"nope": []})
