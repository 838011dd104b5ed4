from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from koornasep import asep
from koornasep import linalg as la
from koornasep.errors import ConvergenceError, DomainError
from koornasep.jet import Jet, derivative
from koornasep.params import ALTERNATE, DEFAULT, PHYSICAL, ParameterPoint
from strategies import nonzero_fractions


def test_M_one_site_closed_form():
    pp, xi = PHYSICAL, F(3, 2)
    al, be, ga, de = pp.alpha, pp.beta, pp.gamma, pp.delta
    assert asep.build_M(pp, 1, xi) == [[-al - de, ga / xi + be], [xi * al + de, -ga - be]]


@pytest.mark.parametrize("pp", [DEFAULT, PHYSICAL])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_columns_of_M1_sum_to_zero(pp, n):
    M = asep.build_M(pp, n, F(1))
    assert all(sum(col) == 0 for col in zip(*M))


@pytest.mark.parametrize("n", [2, 3])
def test_gc_transpose_of_M(n):
    xi = F(3, 2)
    pp = DEFAULT
    assert asep.gc_conjugate(pp, n, asep.build_M(pp, n, xi)) == asep.build_M(pp, n, pp.xi_prime(n, xi))


def test_R_at_one_and_unitarity_examples():
    pp = DEFAULT
    assert asep.build_R(pp, F(1)) == la.identity(4, F(1))
    x = F(3, 2)
    assert la.matmul(asep.build_K(pp, x, F(1)), asep.build_K(pp, 1 / x, F(1))) == la.identity(2, F(1))
    x = F(4, 3)
    xi = F(5, 2)
    assert la.matmul(asep.build_Ktilde(pp, pp.s * x, xi), asep.build_Ktilde(pp, 1 / x, xi)) \
        == la.identity(2, F(1))


def test_R_derivative_gives_bulk_generator():
    pp = PHYSICAL
    dR = [[derivative(e) for e in row] for row in asep.build_R(pp, Jet.variable(F(1)))]
    w = asep.w_matrix(pp)
    assert la.mat_scale(dR, pp.q - pp.p) == la.mat_scale(w, (pp.p * pp.q) ** 0 * pp.kappa_bulk)
    assert pp.kappa_bulk ** 2 == pp.p * pp.q


def test_yang_baxter_at_the_listed_point():
    # x1/x3 = 4/9 = t is a pole of r at the default point
    with pytest.raises(DomainError):
        asep.build_R(DEFAULT, F(4, 9))
    pp = ALTERNATE
    x1, x2, x3 = F(2, 3), F(5, 7), F(3, 2)
    R = lambda x, site: asep.embed(asep.build_R(pp, x), site, 3)
    lhs = la.matmul(la.matmul(R(x2 / x3, 1), R(x1 / x3, 2)), R(x1 / x2, 1))
    rhs = la.matmul(la.matmul(R(x1 / x2, 2), R(x1 / x3, 1)), R(x2 / x3, 2))
    assert lhs == rhs


@pytest.mark.parametrize("pp", [DEFAULT, ALTERNATE])
def test_integrability_report_is_zero(pp):
    report = asep.check_integrability(pp, trials=5, seed=1)
    assert len(report) >= 13
    assert all(v == 0 for v in report.values()), report
    assert all(v == 0 for v in asep.check_local_derivatives(pp, F(7, 5)).values())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_scattering_properties(n):
    report = asep.check_scattering(DEFAULT, n, trials=3, seed=2, xi=F(5, 3))
    assert all(v == 0 for v in report.values()), report


def test_pole_is_a_domain_error():
    pp = DEFAULT
    with pytest.raises(DomainError, match="pole"):
        asep.build_R(pp, pp.t)


def test_lambda0_basics():
    with mpmath.workprec(256):
        ev, _, _ = asep.lambda0(PHYSICAL, 2, F(1))
        assert abs(ev) < mpmath.mpf(10) ** -60
        for xi in (F(1, 3), F(3, 2), F(5, 2)):
            a = asep.lambda0(PHYSICAL, 1, xi)[0]
            b = asep.lambda0_n1_closed_form(PHYSICAL.to_mpf(), mpmath.mpf(xi.numerator) / xi.denominator)
            assert abs(a - b) < mpmath.mpf(10) ** -60


def test_lambda0_gc_symmetry_n3():
    with mpmath.workprec(256):
        xi = F(3, 2)
        for pp in (PHYSICAL, DEFAULT):
            a = asep.lambda0(pp, 3, xi)[0]
            b = asep.lambda0(pp, 3, pp.xi_prime(3, xi))[0]
            assert abs(a - b) < mpmath.mpf(10) ** -64


def test_stationary_branch():
    with mpmath.workprec(256):
        # physical rates: the branch through 0 is the top eigenvalue
        for xi in (F(1, 2), F(3, 2)):
            a = asep.lambda0(PHYSICAL, 2, xi)[0]
            assert abs(a - asep.lambda0_stationary(PHYSICAL, 2, xi)) < mpmath.mpf(10) ** -60
        # the default point has top eigenvalue ~13.5 at xi = 1
        assert asep.lambda0(DEFAULT, 2, F(1))[0] > 13
        assert abs(asep.lambda0_stationary(DEFAULT, 2, F(1))) < mpmath.mpf(10) ** -60
        with pytest.raises(ConvergenceError):
            asep.lambda0_stationary(DEFAULT, 2, mpmath.exp(mpmath.mpf(-1) / 2))


def test_charpoly_gc_equality():
    for pp in (DEFAULT, PHYSICAL):
        for n in (2, 3):
            xi = F(3, 2)
            assert asep.charpoly_M(pp, n, xi) == asep.charpoly_M(pp, n, pp.xi_prime(n, xi))


def test_equilibrium_shortcut():
    # t0 tN t = 1 at N = 2
    pp = ParameterPoint(F(1, 2), F(2, 3), F(3, 4), F(5, 4), F(2, 1), F(4, 3))
    assert pp.t0 * pp.tN * pp.t == 1
    assert asep.check_equilibrium(pp, 2) == 0
    with pytest.raises(ValueError):
        asep.check_equilibrium(DEFAULT, 2)


def test_qkz_rejects_nothing_for_exact_zero_state():
    zero = lambda x: [F(0)] * 4
    pts = asep.sample_points(2, 2)
    assert all(v == 0 for v in asep.verify_qkz(DEFAULT, 2, zero, pts).values())


@given(nonzero_fractions.filter(lambda v: v * v != DEFAULT.t and v * v != 1 and v != DEFAULT.t))
def test_R_unitarity_property(x):
    pp = DEFAULT
    try:
        lhs = la.matmul(asep.build_R(pp, x), asep.build_R(pp, 1 / x))
    except DomainError:
        return
    assert lhs == la.identity(4, F(1))


@given(st.sampled_from([1, 2, 3]), nonzero_fractions.filter(lambda v: v > 0))
def test_gc_conjugation_of_M_property(n, xi):
    pp = ALTERNATE
    assert asep.gc_conjugate(pp, n, asep.build_M(pp, n, xi)) == asep.build_M(pp, n, pp.xi_prime(n, xi))
