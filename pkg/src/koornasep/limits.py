"""Large-m limits of P_(m^N)(x; s = xi^(1/m)) and the current statistics.

F0_m(x) = (ln xi / m) ln Z_m(x; s = xi^(1/m)) is evaluated through the
matrix-product normalisation and extrapolated to m -> infinity by
Richardson's method in 1/m.  Nothing guarantees a pure 1/m expansion, so
each estimate reports whether its successive corrections actually shrink.
"""

from dataclasses import dataclass, field

import mpmath

from . import asep
from .errors import DomainError, RangeError
from .koornwinder import _g, d0
from .mpa import psi_m

XI_BAND = (mpmath.mpf(1) / 4, mpmath.mpf(4))
DEFAULT_M_LIST = (8, 16, 32, 64)


@dataclass
class LimitEstimate:
    m_values: list
    raw_values: list
    extrapolated: object
    error_estimate: object
    corrections: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def corrections_shrink(self):
        mags = [abs(c) for c in self.corrections]
        return all(b < a for a, b in zip(mags, mags[1:]))

    def to_json_obj(self):
        return {
            "raw": [{"m": m, "value": mpmath.nstr(v, 30)} for m, v in zip(self.m_values, self.raw_values)],
            "extrapolated": mpmath.nstr(self.extrapolated, 30),
            "error": mpmath.nstr(self.error_estimate, 6),
            "corrections": [mpmath.nstr(c, 6) for c in self.corrections],
            "corrections_shrink": self.corrections_shrink,
            "ansatz": "Richardson in 1/m",
            "notes": list(self.notes),
        }


def richardson(steps, values):
    """Polynomial extrapolation of values(h) to h = 0 (Neville's scheme).

    Returns (estimate, corrections) where corrections[k] is the change in
    the best estimate when level k+1 is added."""
    if len(steps) != len(values) or not values:
        raise ValueError("need equally many steps and values")
    table = [list(values)]
    best = [values[-1]]
    for k in range(1, len(values)):
        prev = table[-1]
        row = []
        for i in range(len(prev) - 1):
            h_lo, h_hi = steps[i], steps[i + k]
            row.append((h_lo * prev[i + 1] - h_hi * prev[i]) / (h_lo - h_hi))
        table.append(row)
        best.append(row[-1])
    corrections = [b - a for a, b in zip(best, best[1:])]
    return best[-1], corrections


def extrapolate_in_m(m_values, raw, notes=()):
    m_values = list(m_values)
    if any(b <= a for a, b in zip(m_values, m_values[1:])):
        raise ValueError("m values must be strictly increasing")
    steps = [mpmath.mpf(1) / m for m in m_values]
    est, corr = richardson(steps, raw)
    # twice the larger of the last two corrections: a single small final
    # correction can be accidental when the expansion is not purely in 1/m
    err = 2 * max(abs(c) for c in corr[-2:]) if corr else mpmath.inf
    out = LimitEstimate(m_values, list(raw), est, err, corr, list(notes))
    if not out.corrections_shrink:
        out.notes.append("Richardson corrections do not shrink monotonically")
    return out


def _check_xi(xi, allow_wide):
    if xi <= 0:
        raise DomainError("xi must be positive")
    if not allow_wide and not XI_BAND[0] <= xi <= XI_BAND[1]:
        raise RangeError(f"xi = {mpmath.nstr(xi, 8)} is outside [1/4, 4]; pass allow_wide_xi=True")


def _mp(v):
    from fractions import Fraction
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def F0_m(pp, n, xi, x, m, K=64, backend="moments", precision=256, tol=None):
    """(ln xi / m) ln |Z_m(x; s = xi^(1/m))| at one m."""
    with mpmath.workprec(precision):
        xi = _mp(xi)
        p = pp.to_mpf().with_(s_half=xi ** (mpmath.mpf(1) / (2 * m)), xi=xi)
        res = psi_m(p, m, n, [_mp(v) for v in x], "numeric", K, backend, precision, tol)
        Z = res.total()
        if Z == 0:
            raise DomainError(f"Z_m vanishes at m = {m}, x = {x}")
        # P may be negative away from physical rates; every derivative of
        # ln|P| is still that of the analytic branch of ln P
        return mpmath.log(xi) / m * mpmath.log(abs(Z))


def F0_estimate(pp, n, xi, x, m_list=DEFAULT_M_LIST, K=64, precision=256,
                backend="moments", allow_wide_xi=False):
    xi = _mp(xi)
    _check_xi(xi, allow_wide_xi)
    if xi == 1:
        raise DomainError("xi = 1 gives F0 = 0 identically; choose xi != 1")
    if any(_mp(v) <= 0 for v in x):
        raise DomainError("x must have positive coordinates")
    with mpmath.workprec(precision):
        raw = [F0_m(pp, n, xi, x, m, K, backend, precision) for m in m_list]
        return extrapolate_in_m(m_list, raw)


def _fd_gradient(f, x, i, h):
    """Central first difference of f in coordinate i, h^2-extrapolated."""
    def d(step):
        up = list(x)
        dn = list(x)
        up[i] += step
        dn[i] -= step
        return (f(up) - f(dn)) / (2 * step)
    d1, d2 = d(h), d(h / 2)
    return (4 * d2 - d1) / 3, abs(d2 - d1) / 3


def _fd_second(f, x, i, h):
    def d(step):
        up = list(x)
        dn = list(x)
        up[i] += step
        dn[i] -= step
        return (f(up) - 2 * f(x) + f(dn)) / step ** 2
    d1, d2 = d(h), d(h / 2)
    return (4 * d2 - d1) / 3, abs(d2 - d1) / 3


def gradient_estimate(pp, n, xi, x, i, m_list=DEFAULT_M_LIST, K=64, precision=256,
                      h=None, backend="moments", allow_wide_xi=False):
    """d F0 / d x_i at x (i is 0-based)."""
    xi = _mp(xi)
    _check_xi(xi, allow_wide_xi)
    with mpmath.workprec(precision):
        h = mpmath.mpf(2) ** -10 if h is None else _mp(h)
        x = [_mp(v) for v in x]
        raw, fd = [], mpmath.mpf(0)
        for m in m_list:
            g, e = _fd_gradient(lambda y: F0_m(pp, n, xi, y, m, K, backend, precision), x, i, h)
            raw.append(g)
            fd = max(fd, e)
        est = extrapolate_in_m(m_list, raw)
        est.error_estimate += fd
        return est


def E_mu_estimate(pp, n, mu, m_list=DEFAULT_M_LIST, K=64, precision=256, h=None,
                  backend="moments", allow_wide_xi=False):
    """(p - q)/2 d^2 F0 / d x_1^2 at x = 1, extrapolated in h^2 and 1/m."""
    with mpmath.workprec(precision):
        mu = _mp(mu)
        xi = mpmath.exp(mu)
        _check_xi(xi, allow_wide_xi)
        p = pp.to_mpf()
        scale = (p.p - p.q) / 2
        if mu == 0:
            zero = mpmath.mpf(0)
            return LimitEstimate(list(m_list), [zero] * len(m_list), zero, zero,
                                 notes=["mu = 0: F0 vanishes identically"])
        h = mpmath.mpf(2) ** -10 if h is None else _mp(h)
        one = [mpmath.mpf(1)] * n
        raw, fd = [], mpmath.mpf(0)
        for m in m_list:
            d2, e = _fd_second(lambda y: F0_m(pp, n, xi, y, m, K, backend, precision), one, 0, h)
            raw.append(scale * d2)
            fd = max(fd, abs(scale) * e)
        est = extrapolate_in_m(m_list, raw)
        est.error_estimate += fd
        return est


def g_at_s1(pp, x, i):
    """g_i(x; 1)."""
    from fractions import Fraction
    return _g(tuple(x), i, pp, Fraction(1))


def check_F0_characterization(pp, n, xi, x, m_list=DEFAULT_M_LIST, K=64, precision=256,
                              h=None, backend="moments", allow_wide_xi=False):
    """LHS = sum_i g_i(x;1)[exp(x_i dF0/dx_i) - 1] + g_i(1/x;1)[exp(-x_i dF0/dx_i) - 1],
    evaluated per m and extrapolated, against d0(xi)."""
    xi = _mp(xi)
    _check_xi(xi, allow_wide_xi)
    if all(_mp(v) == 1 for v in x):
        raise DomainError("x = 1 is the W0-fixed point where the identity degenerates")
    with mpmath.workprec(precision):
        h = mpmath.mpf(2) ** -10 if h is None else _mp(h)
        p = pp.to_mpf()
        x = [_mp(v) for v in x]
        xinv = [1 / v for v in x]
        try:
            gs = [(_g(x, i, p, mpmath.mpf(1)), _g(xinv, i, p, mpmath.mpf(1))) for i in range(n)]
        except (DomainError, ZeroDivisionError) as exc:
            raise DomainError(f"g_i(x; 1) has a pole at x = {x}") from exc
        raw, fd = [], mpmath.mpf(0)
        for m in m_list:
            f = lambda y: F0_m(pp, n, xi, y, m, K, backend, precision)
            lhs = mpmath.mpf(0)
            for i in range(n):
                grad, e = _fd_gradient(f, x, i, h)
                up, dn = mpmath.exp(x[i] * grad), mpmath.exp(-x[i] * grad)
                lhs += gs[i][0] * (up - 1) + gs[i][1] * (dn - 1)
                fd = max(fd, (abs(gs[i][0] * up) + abs(gs[i][1] * dn)) * x[i] * e)
            raw.append(lhs)
        est = extrapolate_in_m(m_list, raw)
        est.error_estimate += fd
        target = d0(p, n, xi)
        diff = abs(est.extrapolated - target)
        return {
            "lhs": est,
            "d0": target,
            "discrepancy": diff,
            "within_error": diff <= est.error_estimate,
        }


def finite_m_D_residual(pp, n, xi, x, m, precision=256, backend="moments", K=64):
    """|D P - d P| / |d P| at s = xi^(1/m), with P evaluated through Z_m.
    D P = d_(m^N) P holds exactly at every m and d_(m^N) = d0(xi)."""
    from .koornwinder import apply_D_pointwise
    with mpmath.workprec(precision):
        xi = _mp(xi)
        s_half = xi ** (mpmath.mpf(1) / (2 * m))
        p = pp.to_mpf().with_(s_half=s_half, xi=xi)
        s = s_half ** 2

        def Z(y):
            return psi_m(p, m, n, list(y), "numeric", K, backend, precision).total()

        x = [_mp(v) for v in x]
        lhs = apply_D_pointwise(Z, x, p, s)
        rhs = d0(p, n, xi) * Z(x)
        return abs(lhs - rhs) / abs(rhs)


def psi0_estimate(pp, n, xi, x=None, m_list=DEFAULT_M_LIST, K=64, precision=256,
                  backend="moments", allow_wide_xi=False):
    """Componentwise limit of Psi^(m)/Z_m; returns one LimitEstimate per
    configuration."""
    with mpmath.workprec(precision):
        xi = _mp(xi)
        _check_xi(xi, allow_wide_xi)
        x = [mpmath.mpf(1)] * n if x is None else [_mp(v) for v in x]
        rows = []
        for m in m_list:
            p = pp.to_mpf().with_(s_half=xi ** (mpmath.mpf(1) / (2 * m)), xi=xi)
            res = psi_m(p, m, n, x, "numeric", K, backend, precision)
            Z = res.total()
            rows.append([c / Z for c in res.components])
        return [extrapolate_in_m(m_list, [r[k] for r in rows]) for k in range(2 ** n)]


def check_psi0_eigenvector(pp, n, xi, m_list=DEFAULT_M_LIST, precision=256, **kw):
    """|M(xi) v - Lambda0 v| for the extrapolated Psi0(1), with the error bar
    propagated from the componentwise estimates."""
    with mpmath.workprec(precision):
        ests = psi0_estimate(pp, n, xi, None, m_list, precision=precision, **kw)
        v = [e.extrapolated for e in ests]
        lam = asep.lambda0(pp, n, _mp(xi), precision)[0]
        M = asep.build_M(pp.to_mpf(), n, _mp(xi))
        res = max(abs(mpmath.fsum(M[i][j] * v[j] for j in range(len(v))) - lam * v[i])
                  for i in range(len(v)))
        rowsum = max(mpmath.fsum(abs(a) for a in row) + abs(lam) for row in M)
        bound = rowsum * max(e.error_estimate for e in ests)
        return {"residual": res, "error_bound": bound, "within_error": res <= bound,
                "lambda0": lam, "vector": v}


def check_scattering_eigenvector(pp, n, xi, x, i, m_list=DEFAULT_M_LIST, precision=256, **kw):
    """S_i(x; s=1, xi) Psi0(x) against exp(x_i dF0/dx_i) Psi0(x); i is 1-based."""
    with mpmath.workprec(precision):
        ests = psi0_estimate(pp, n, xi, x, m_list, precision=precision, **kw)
        v = [e.extrapolated for e in ests]
        grad = gradient_estimate(pp, n, xi, x, i - 1, m_list, precision=precision, **kw)
        p1 = pp.to_mpf().with_(s_half=mpmath.mpf(1))
        S = asep.scattering_matrix(p1, i, [_mp(c) for c in x], _mp(xi))
        Sv = [mpmath.fsum(S[r][c] * v[c] for c in range(len(v))) for r in range(len(v))]
        ev = mpmath.exp(_mp(x[i - 1]) * grad.extrapolated)
        res = max(abs(a - ev * b) for a, b in zip(Sv, v))
        rowsum = max(mpmath.fsum(abs(a) for a in row) for row in S) + abs(ev)
        bound = rowsum * max(e.error_estimate for e in ests) \
            + abs(ev) * abs(_mp(x[i - 1])) * grad.error_estimate * max(abs(c) for c in v)
        return {"residual": res, "error_bound": bound, "within_error": res <= bound}


# Legendre transform

def gc_constant(pp, n):
    """gamma delta / (alpha beta) (q/p)^(N-1), i.e. xi xi'."""
    return pp.gc_factor(n)


def legendre_G(mu_grid, E_values, j_values):
    """G(j) = sup_mu (mu j - E(mu)) on a tabulated grid, refined by a
    parabola through the grid maximiser and its neighbours.  A maximiser on
    the grid edge raises RangeError."""
    mu_grid = [_mp(m) for m in mu_grid]
    E_values = [_mp(e) for e in E_values]
    if len(mu_grid) != len(E_values) or len(mu_grid) < 3:
        raise ValueError("need at least three matching samples")
    out = []
    for j in j_values:
        j = _mp(j)
        vals = [m * j - e for m, e in zip(mu_grid, E_values)]
        top = max(vals)
        interior = [i for i in range(1, len(vals) - 1) if vals[i] == top]
        k = interior[len(interior) // 2] if interior else vals.index(top)
        if k == 0 or k == len(vals) - 1:
            raise RangeError(f"maximiser for j = {mpmath.nstr(j, 6)} lies on the grid edge")
        (x0, x1, x2), (y0, y1, y2) = mu_grid[k - 1:k + 2], vals[k - 1:k + 2]
        den = (x0 - x1) * (x0 - x2) * (x1 - x2)
        A = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / den
        B = (x2 ** 2 * (y0 - y1) + x1 ** 2 * (y2 - y0) + x0 ** 2 * (y1 - y2)) / den
        C = y1 - A * x1 ** 2 - B * x1
        if A < 0:
            xv = -B / (2 * A)
            out.append(max(y1, A * xv * xv + B * xv + C))
        else:
            out.append(y1)
    return out
