from fractions import Fraction as F

import mpmath
import pytest

from koornasep import asep, limits
from koornasep.errors import DomainError, RangeError
from koornasep.params import PHYSICAL

X = [F(6, 5), F(9, 10)]


def test_richardson_is_exact_on_cubics_in_one_over_m():
    ms = [8, 16, 32, 64]
    f = lambda m: mpmath.mpf(3) + mpmath.mpf(2) / m - mpmath.mpf(5) / m ** 2 + mpmath.mpf(7) / m ** 3
    est = limits.extrapolate_in_m(ms, [f(m) for m in ms])
    assert abs(est.extrapolated - 3) < mpmath.mpf(10) ** -60
    assert len(est.corrections) == 3


def test_richardson_flags_non_shrinking_corrections():
    ms = [8, 16, 32, 64]
    est = limits.extrapolate_in_m(ms, [mpmath.mpf(v) for v in (1, -1, 1, -1)])
    assert not est.corrections_shrink
    assert est.notes


def test_E_at_mu_zero():
    est = limits.E_mu_estimate(PHYSICAL, 2, 0)
    assert est.extrapolated == 0 and est.error_estimate == 0


def test_E_matches_lambda0_small_mu():
    mu = mpmath.mpf(1) / 10
    est = limits.E_mu_estimate(PHYSICAL, 2, mu)
    lam = asep.lambda0(PHYSICAL, 2, mpmath.exp(mu))[0]
    assert abs(est.extrapolated - lam) <= est.error_estimate
    assert est.error_estimate <= abs(lam) / 100
    assert est.corrections_shrink


def test_gradient_vanishes_at_one():
    g = limits.gradient_estimate(PHYSICAL, 2, F(3, 2), [1, 1], 0)
    assert abs(g.extrapolated) <= g.error_estimate + mpmath.mpf(10) ** -20


def test_F0_is_W0_invariant():
    a = limits.F0_estimate(PHYSICAL, 2, F(3, 2), X)
    for y in ([X[1], X[0]], [1 / X[0], X[1]]):
        b = limits.F0_estimate(PHYSICAL, 2, F(3, 2), y)
        assert abs(a.extrapolated - b.extrapolated) <= a.error_estimate + b.error_estimate


def test_gradient_is_gc_invariant():
    xi = F(3)
    xip = PHYSICAL.xi_prime(2, xi)
    a = limits.gradient_estimate(PHYSICAL, 2, xi, X, 0)
    b = limits.gradient_estimate(PHYSICAL, 2, xip, X, 0, allow_wide_xi=True)
    assert abs(a.extrapolated - b.extrapolated) <= a.error_estimate + b.error_estimate


def test_xi_band_is_enforced():
    with pytest.raises(RangeError):
        limits.F0_estimate(PHYSICAL, 2, F(5), X)
    with pytest.raises(DomainError):
        limits.F0_estimate(PHYSICAL, 2, F(1), X)


def test_characterisation_refuses_the_fixed_point():
    with pytest.raises(DomainError):
        limits.check_F0_characterization(PHYSICAL, 2, F(3, 2), [1, 1])


def test_characterisation_at_generic_point():
    r = limits.check_F0_characterization(PHYSICAL, 2, F(3, 2), X)
    assert r["within_error"], (r["discrepancy"], r["lhs"].error_estimate)


def test_finite_m_difference_equation():
    assert limits.finite_m_D_residual(PHYSICAL, 2, F(3, 2), X, 4) < mpmath.mpf(10) ** -60


def test_psi0_is_an_eigenvector():
    r = limits.check_psi0_eigenvector(PHYSICAL, 2, F(3, 2))
    assert r["within_error"]
    assert all(v > 0 for v in r["vector"])


def test_scattering_eigenvector():
    for i in (1, 2):
        assert limits.check_scattering_eigenvector(PHYSICAL, 2, F(3, 2), X, i)["within_error"]


def test_legendre_of_zero():
    grid = [mpmath.mpf(k) / 10 for k in range(-20, 21)]
    zero = [mpmath.mpf(0)] * len(grid)
    assert limits.legendre_G(grid, zero, [0]) == [0]
    with pytest.raises(RangeError):
        limits.legendre_G(grid, zero, [mpmath.mpf(1) / 10])


def test_legendre_symmetry_and_convexity():
    pp = PHYSICAL
    C = pp.to_mpf().gc_factor(1)
    centre = mpmath.log(C) / 2
    grid = [centre + mpmath.mpf(k) / 40 for k in range(-240, 241)]
    E = [asep.lambda0_n1_closed_form(pp.to_mpf(), mpmath.exp(m)) for m in grid]
    js = [mpmath.mpf(k) / 20 for k in range(-4, 5)]
    G = limits.legendre_G(grid, E, js)
    for j, g, gm in zip(js, G, reversed(G)):
        assert abs(g - gm - j * mpmath.log(C)) < mpmath.mpf(10) ** -6
    for a, b, c in zip(G, G[1:], G[2:]):
        assert a + c - 2 * b >= -mpmath.mpf(10) ** -8
