import random
from fractions import Fraction as F

import mpmath
import pytest

from koornasep.compositions import box_partitions, prec
from koornasep.errors import DegenerateParametersError
from koornasep.hecke import HeckeContext, apply_Y
from koornasep.koornwinder import (apply_D, apply_D_pointwise, d0, d_eigenvalue,
                                   nonsymmetric_E, symmetric_P, y_eigenvalues)
from koornasep.laurent import LaurentPolynomial as LP, orbit_sum
from koornasep.params import ALTERNATE, DEFAULT


def random_points(n, count, seed, s=DEFAULT.s):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = tuple(F(rng.randint(11, 60), rng.randint(7, 40)) for _ in range(n))
        if all(v != 1 and s * v * v != 1 and v * v != s for v in x) and len(set(x)) == n and all(a * b != 1 for a in x for b in x):
            out.append(x)
    return out


def test_E_of_zero_is_one():
    ctx = HeckeContext(DEFAULT, 2)
    E = nonsymmetric_E(ctx, (0, 0))
    assert E.poly == LP.constant(F(1), 2)
    assert E.eigenvalues == y_eigenvalues(ctx, (0, 0))


def test_E_minus_one_n1_shape():
    E = nonsymmetric_E(HeckeContext(DEFAULT, 1), (-1,)).poly
    assert set(E.terms) <= {(-1,), (0,), (1,)}
    assert E.coeff((-1,)) == 1


def test_E_minus_one_n2_eigenvalues():
    pp = DEFAULT
    E = nonsymmetric_E(HeckeContext(pp, 2), (-1, -1))
    base = 1 / (pp.t0_half * pp.tN_half * pp.s)
    assert E.eigenvalues == [base, base / pp.t]


@pytest.mark.parametrize("pp", [DEFAULT, ALTERNATE])
@pytest.mark.parametrize("n,m", [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1)])
def test_E_triangular_and_monic(pp, n, m):
    ctx = HeckeContext(pp, n)
    for lam in ((-m,) * n, (m,) * n):
        E = nonsymmetric_E(ctx, lam)
        assert E.poly.coeff(lam) == 1
        assert all(e == lam or prec(e, lam) for e in E.poly.terms)
        assert E.eigenvalues == y_eigenvalues(ctx, lam)
        for i in range(1, n + 1):
            assert apply_Y(ctx, i, E.poly) == E.poly * E.eigenvalues[i - 1]


def test_E_rejects_other_shapes():
    with pytest.raises(ValueError):
        nonsymmetric_E(HeckeContext(DEFAULT, 2), (1, 0))


def test_degenerate_point_is_reported():
    # s = 1 and t0 tN = 1 give x^-1 and x^1 the same Y-eigenvalue
    pp = DEFAULT.with_(s_half=F(1), tN_half=1 / DEFAULT.t0_half)
    with pytest.raises(DegenerateParametersError):
        nonsymmetric_E(HeckeContext(pp, 1), (-1,))


def test_D_kills_constants():
    ctx = HeckeContext(DEFAULT, 2)
    assert apply_D(ctx, LP.constant(F(1), 2)) == LP.zero(2)


def test_D_on_orbit_sum_matches_pointwise():
    ctx = HeckeContext(DEFAULT, 2)
    f = orbit_sum((1, 0))
    Df = apply_D(ctx, f)
    assert set(Df.terms) <= set(orbit_sum((1, 0)).terms) | set(orbit_sum((1, 1)).terms) | {(0, 0)}
    for x in random_points(2, 30, 1):
        assert Df.evaluate(x) == apply_D_pointwise(f.evaluate, x, DEFAULT, DEFAULT.s)


def test_P_of_zero():
    P = symmetric_P(HeckeContext(DEFAULT, 2), 0)
    assert P.poly == LP.constant(F(1), 2) and P.d_eigenvalue == 0


def test_P1_askey_wilson_case():
    ctx = HeckeContext(DEFAULT, 1)
    P = symmetric_P(ctx, 1)
    assert set(P.poly.terms) <= {(-1,), (0,), (1,)}
    assert P.poly.coeff((1,)) == P.poly.coeff((-1,)) == 1
    assert apply_D(ctx, P.poly) == P.poly * d_eigenvalue(ctx, (1,))


@pytest.mark.parametrize("pp", [DEFAULT, ALTERNATE])
@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 1), (2, 2), (3, 1)])
def test_P_eigen_equation_and_invariance(pp, n, m):
    ctx = HeckeContext(pp, n)
    P = symmetric_P(ctx, m)
    assert P.basis == box_partitions(m, n)
    assert apply_D(ctx, P.poly) == P.poly * P.d_eigenvalue
    assert P.poly.coeff((m,) * n) == 1
    for i in range(n):
        assert P.poly.invert(i) == P.poly
        if i + 1 < n:
            assert P.poly.swap(i, i + 1) == P.poly
    for x in random_points(n, 30, m, pp.s):
        assert apply_D(ctx, P.poly).evaluate(x) == apply_D_pointwise(P.poly.evaluate, x, pp, pp.s)


def test_d_eigenvalue_special_values():
    ctx = HeckeContext(DEFAULT, 2)
    assert d_eigenvalue(ctx, (0, 0)) == 0
    xi = F(3, 2)
    assert d0(DEFAULT, 2, xi) == d0(DEFAULT, 2, DEFAULT.xi_prime(2, xi))


def test_d_eigenvalue_at_irrational_shift_equals_d0():
    with mpmath.workprec(256):
        pp = DEFAULT.to_mpf()
        ctx = HeckeContext(pp, 2)
        xi = mpmath.mpf(3) / 2
        for m in (1, 2, 5):
            s = xi ** (mpmath.mpf(1) / m)
            assert abs(d_eigenvalue(ctx, (m, m), s) - d0(pp, 2, xi)) < mpmath.mpf(10) ** -70


def test_numeric_shift_mode():
    with mpmath.workprec(256):
        ctx = HeckeContext(DEFAULT, 2)
        s = mpmath.mpf(3) / 2
        s = s ** (mpmath.mpf(1) / 3)
        P = symmetric_P(ctx, 1, s)
        assert abs(P.coefficients[-1] - 1) == 0
