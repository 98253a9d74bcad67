import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from qinv.exact_poly import MultiPoly, poly_eval, poly_eval_exact, poly_subst_linear, variables
from qinv.invariants import (
    E, F, GAMMA_AT_L, InvariantReport, PAIRS, Z_F, Z_L, delta, delta_product, eval_invariants, gamma,
    gamma_via_newton, jacobian_F, newton_elementary, power_sums,
)
from qinv.reflection_group import reflection, tau
from qinv.verify import JACOBIAN_AT_1234, JACOBIAN_AT_1235, witness_rhs

sympy = pytest.importorskip("sympy")


def F_oracle(k, z):
    """Direct rational evaluation of the defining pair sum."""
    return Fraction(1, 6) * sum(
        Fraction(z[i] - z[j]) ** (2 * k) + Fraction(z[i] + z[j]) ** (2 * k) for i, j in PAIRS
    )


def test_E_examples():
    assert poly_eval_exact(E(0), [1, 1, 1, 1]) == 1
    assert abs(poly_eval(E(1), Z_L)) < 1e-12
    assert poly_eval_exact(E(2), [1, 0, 0, 0]) == 1
    z0, z1, z2, z3 = variables()
    assert E(4) == z0**8 + z1**8 + z2**8 + z3**8


@pytest.mark.parametrize("j", [-1, 5, 1.5])
def test_E_out_of_range(j):
    with pytest.raises(ValueError):
        E(j)


@pytest.mark.parametrize("k", [0, 13, -2])
def test_F_out_of_range(k):
    with pytest.raises(ValueError):
        F(k)


def test_F1_F2_identities():
    assert F(1) == E(1)
    assert F(2) == E(1) ** 2
    assert F(3) != E(1) ** 3 * Fraction(F(3).coeff((6, 0, 0, 0)))


@pytest.mark.parametrize("k", range(1, 13))
def test_F_matches_oracle_and_degree(k):
    assert F(k).degree() == 2 * k and F(k).is_homogeneous()
    assert F_oracle(k, (1, 0, 0, 0)) == 1
    assert poly_eval_exact(F(k), [1, 0, 0, 0]) == 1
    pt = (2, -1, 3, Fraction(1, 2))
    assert poly_eval_exact(F(k), pt) == F_oracle(k, pt)


def test_delta_examples():
    assert poly_eval_exact(delta(), [5, 5, 2, 7]) == 0
    assert math.prod(i * i - j * j for i, j in itertools.combinations([1, 2, 3, 4], 2)) == 151200
    assert poly_eval_exact(delta(), [1, 2, 3, 4]) == 151200
    swap = reflection((1, -1, 0, 0))
    assert poly_subst_linear(delta(), swap.matrix) == -delta()


def test_gamma_examples():
    assert poly_eval_exact(gamma(), [1, 0, 0, 0]) == 0
    assert poly_eval_exact(gamma(), [1, 2, 3, 4]) == 22_861_440_000
    assert gamma() == delta() * delta()


def test_gamma_at_L_exact_oracle():
    # exact algebraic evaluation with omega = (1 + i sqrt 3)/2
    w = (1 + sympy.sqrt(3) * sympy.I) / 2
    zl = [1 / sympy.sqrt(3), w / sympy.sqrt(3), sympy.conjugate(w) / sympy.sqrt(3), 0]
    val = sympy.Integer(1)
    for i, j in itertools.combinations(range(4), 2):
        val *= (zl[i] ** 2 - zl[j] ** 2) ** 2
    assert sympy.nsimplify(sympy.expand(val)) == sympy.Rational(-1, 3**9)
    assert GAMMA_AT_L == Fraction(-1, 19683)
    assert abs(poly_eval(gamma(), Z_L) - float(GAMMA_AT_L)) <= 1e-12 * abs(float(GAMMA_AT_L))


def test_newton_base_cases():
    p = power_sums(2)
    e = newton_elementary(p)
    assert e[1] == p[0] == 6 * F(1)
    z = variables()
    quads = [(z[i] - z[j]) ** 2 for i, j in PAIRS] + [(z[i] + z[j]) ** 2 for i, j in PAIRS]
    assert sum((q * q for q in quads), MultiPoly.zero()) == 6 * F(2)


def test_newton_on_numbers():
    # e_n of explicit numbers via Newton equals their product
    xs = [Fraction(v) for v in (2, -3, 5, Fraction(1, 2))]
    p = [MultiPoly.const(sum(x**m for x in xs)) for m in range(1, 5)]
    assert newton_elementary(p)[4] == MultiPoly.const(math.prod(xs))


def test_gamma_via_newton():
    g = gamma_via_newton()
    assert g == gamma()
    assert poly_eval_exact(g, [1, 2, 3, 4]) == 22_861_440_000


def _sympy_jacobian():
    z = sympy.symbols("z0:4")

    def Fk(k):
        return sympy.Rational(1, 6) * sum((z[i] - z[j]) ** (2 * k) + (z[i] + z[j]) ** (2 * k) for i, j in PAIRS)

    return z, sympy.Matrix([[sympy.diff(Fk(k), v) for v in z] for k in (1, 3, 4, 6)])


def test_jacobian_nonzero_and_regression_values():
    J = jacobian_F()
    assert not J.is_zero()
    assert J.degree() == 24
    z, Jsym = _sympy_jacobian()
    for pt, frozen in (([1, 2, 3, 4], JACOBIAN_AT_1234), ([1, 2, 3, 5], JACOBIAN_AT_1235)):
        oracle = Jsym.subs(dict(zip(z, pt))).det()
        assert Fraction(int(oracle)) == frozen
        assert J.eval_exact(pt) == frozen
    assert JACOBIAN_AT_1235 != 0
    assert J.eval_exact([1, 1, 1, 1]) == 0


def test_jacobian_is_product_of_reflecting_hyperplanes():
    # 24 hyperplanes: z_i, z_i +- z_j, (z0 +- z1 +- z2 +- z3)
    z = variables()
    forms = list(z)
    forms += [z[i] - z[j] for i, j in PAIRS] + [z[i] + z[j] for i, j in PAIRS]
    forms += [z[0] + s1 * z[1] + s2 * z[2] + s3 * z[3] for s1, s2, s3 in itertools.product((1, -1), repeat=3)]
    prod = MultiPoly.const(1)
    for f in forms:
        prod = prod * f
    c = JACOBIAN_AT_1235 / prod.eval_exact([1, 2, 3, 5])
    assert jacobian_F() == prod * c
    # 1 - 2 - 3 + 4 = 0 explains the vanishing at (1,2,3,4)
    assert prod.eval_exact([1, 2, 3, 4]) == 0


def test_tau_identities():
    t = tau().matrix
    E0, E1, E2 = E(0), E(1), E(2)
    assert poly_subst_linear(E1, t) == E1
    assert poly_subst_linear(E1 * E1, t) == E1 * E1
    assert poly_subst_linear(E2, t) == Fraction(3, 4) * E1**2 - Fraction(1, 2) * E2 + 6 * E0
    assert poly_subst_linear(E0, t) == -Fraction(1, 16) * E1**2 + Fraction(1, 8) * E2 + Fraction(1, 2) * E0


def test_witness_identity():
    assert 24 * E(0) ** 2 == witness_rhs()


@pytest.mark.parametrize("name,poly,deg", [
    ("E0", lambda: E(0), 4), ("E3", lambda: E(3), 6), ("F3", lambda: F(3), 6),
    ("F4", lambda: F(4), 8), ("F6", lambda: F(6), 12), ("gamma", gamma, 24),
])
def test_homogeneity(name, poly, deg, rng):
    p = poly()
    assert p.is_homogeneous() and p.degree() == deg
    for _ in range(5):
        t = complex(*rng.normal(size=2))
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        lhs, rhs = poly_eval(p, t * z), t**deg * poly_eval(p, z)
        assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), p.compile().abs_sum(t * z) * 1e-4)


def test_eval_invariants_L():
    rep = eval_invariants(Z_L)
    assert max(abs(rep.E0), abs(rep.E1), abs(rep.E2)) <= 1e-12
    assert abs(rep.E3 - 1 / 9) <= 1e-12


def test_eval_invariants_F():
    rep = eval_invariants(Z_F)
    n = np.linalg.norm(Z_F)
    assert abs(rep.F1) <= 1e-9 * n**2
    assert abs(rep.F3) <= 1e-9 * n**6
    assert abs(rep.F4) <= 1e-9 * n**8
    assert abs(rep.F6) > 0


def test_eval_invariants_basis_point():
    rep = eval_invariants([1, 0, 0, 0])
    assert rep.F1 == rep.F3 == rep.F4 == rep.F6 == 1
    assert rep.gamma == 0


def test_report_invariants(rng):
    for _ in range(20):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        rep = eval_invariants(z)
        assert abs(rep.gamma - rep.delta**2) <= 1e-10 * abs(rep.gamma)
        assert abs(rep.F1 - rep.E1) <= 1e-12 * max(abs(rep.E1), 1)
        assert abs(rep.gamma - poly_eval(gamma(), z)) <= 1e-10 * gamma().compile().abs_sum(z)
        assert abs(rep.delta - delta_product(z)) == 0


def test_report_round_trip():
    rep = eval_invariants(Z_L)
    assert InvariantReport.from_dict(rep.to_dict()) == rep


@pytest.mark.parametrize("bad", [[1, 2, 3], [1, np.nan, 0, 0], [[1, 2, 3, 4]]])
def test_eval_invariants_rejects(bad):
    with pytest.raises(ValueError):
        eval_invariants(bad)
