"""Exact verification runs shared by the CLI and the test-suite.

Every function returns a flat {check name: residual} dict; exact checks
pass iff every residual is 0.
"""

from fractions import Fraction

from . import asep, mpa
from .hecke import HeckeContext, check_hecke_relations
from .koornwinder import apply_D, nonsymmetric_E, symmetric_P
from .compositions import preceq


def _merge(out, prefix, report):
    for k, v in report.items():
        out[f"{prefix}: {k}"] = v


def algebraic_identities(pp, seed=0, trials=5, max_n=3):
    """Hecke relations, Y commutativity, Yang-Baxter, reflection, unitarity,
    local derivatives, Gallavotti-Cohen conjugations and scattering."""
    out = {}
    for n in range(1, max_n + 1):
        _merge(out, f"hecke N={n}", check_hecke_relations(HeckeContext(pp, n), trials, seed))
    _merge(out, "integrability", asep.check_integrability(pp, trials, seed))
    _merge(out, "local derivatives", asep.check_local_derivatives(pp))
    for n in range(1, max_n + 1):
        _merge(out, f"scattering N={n}", asep.check_scattering(pp, n, trials, seed))
    return out


def oracle_checks(pp, max_n=2, max_m=2):
    """Eigen-equations, monic normalisation and support of E and P."""
    out = {}
    for n in range(1, max_n + 1):
        ctx = HeckeContext(pp, n)
        for m in range(1, max_m + 1):
            lam = (-m,) * n
            E = nonsymmetric_E(ctx, lam)
            out[f"E{lam} leading coefficient - 1"] = abs(E.poly.coeff(lam) - 1)
            out[f"E{lam} support outside preceq"] = Fraction(
                sum(1 for e in E.poly.terms if not preceq(e, lam)))
            P = symmetric_P(ctx, m)
            out[f"P{(m,) * n} D-residual"] = max(
                (abs(c) for c in (apply_D(ctx, P.poly) - P.poly * P.d_eigenvalue).terms.values()),
                default=Fraction(0))
            out[f"P{(m,) * n} leading coefficient - 1"] = abs(P.poly.coeff((m,) * n) - 1)
            worst = Fraction(0)
            for i in range(n):
                worst = max(worst, _size(P.poly.invert(i) - P.poly))
                if i + 1 < n:
                    worst = max(worst, _size(P.poly.swap(i, i + 1) - P.poly))
            out[f"P{(m,) * n} W0-invariance"] = worst
    return out


def _size(poly):
    return max((abs(c) for c in poly.terms.values()), default=Fraction(0))


def qkz_checks(pp, max_n=2, max_m=2, seed=0, points=3):
    """Exact qKZ residuals for the oracle states (both sides), the
    exchange relations, the U_GC left-to-right correspondence and the
    sum-of-components identity Z = P."""
    out = {}
    for n in range(1, max_n + 1):
        pts = asep.sample_points(n, points, seed)
        for m in range(1, max_m + 1):
            xi = pp.s ** m
            ctx = HeckeContext(pp.with_(xi=xi), n)
            right = mpa.oracle_state(ctx, m, "right")
            left = mpa.oracle_state(ctx, m, "left")
            tag = f"N={n} m={m}"
            _merge(out, f"exchange right {tag}", mpa.check_exchange_relations(ctx, right, xi, "right"))
            _merge(out, f"exchange left {tag}", mpa.check_exchange_relations(ctx, left, xi, "left"))
            _merge(out, f"qKZ right {tag}",
                   asep.verify_qkz(pp, n, mpa.evaluator(right), pts, "right", xi))
            _merge(out, f"qKZ left {tag}",
                   asep.verify_qkz(pp, n, mpa.evaluator(left), pts, "left", xi))
            ev = mpa.evaluator(left)
            _merge(out, f"U_GC left -> right {tag}",
                   asep.verify_qkz(pp, n, lambda x: mpa.gc_image(pp, n, ev(x)), pts,
                                   "right", pp.xi_prime(n, xi)))
            total = sum(right[1:], right[0])
            P = symmetric_P(HeckeContext(pp, n), m).poly
            out[f"sum of components - P {tag}"] = _size(total - P)
    return out


def spectral_checks(pp, n=2, xi=Fraction(3, 2)):
    """Exact characteristic-polynomial equality under xi -> xi'."""
    a = asep.charpoly_M(pp, n, xi)
    b = asep.charpoly_M(pp, n, pp.xi_prime(n, xi))
    return {f"charpoly M(xi) - M(xi') N={n}": max(abs(u - v) for u, v in zip(a, b))}


def verify_all(pp, seed=0):
    out = {}
    _merge(out, "identities", algebraic_identities(pp, seed))
    _merge(out, "oracles", oracle_checks(pp))
    _merge(out, "qkz", qkz_checks(pp, seed=seed))
    _merge(out, "spectrum", spectral_checks(pp))
    return out
