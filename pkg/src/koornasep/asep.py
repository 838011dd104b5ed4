"""Deformed Markov matrix of the open ASEP and its integrable structure.

Matrices are dense lists of rows over whatever scalar type the inputs carry
(Fraction, mpmath.mpf or Jet).  Basis vectors of the N-site space are
indexed by occupation sequences with site 1 most significant.
"""

from fractions import Fraction
import random

import mpmath

from . import linalg as la
from .errors import ConvergenceError, DomainError
from .jet import Jet, derivative, value


def config_index(tau):
    k = 0
    for b in tau:
        k = 2 * k + b
    return k


def configurations(n):
    """All occupation sequences of n sites in basis order."""
    return [tuple((k >> (n - 1 - i)) & 1 for i in range(n)) for k in range(2 ** n)]


def embed(op, site, n):
    """Identity-pad a 2x2 (site) or 4x4 (sites site, site+1) operator.
    ``site`` is 1-based."""
    arity = {2: 1, 4: 2}[len(op)]
    if not 1 <= site <= n - arity + 1:
        raise IndexError(f"operator on site {site} does not fit in {n} sites")
    left = la.identity(2 ** (site - 1), Fraction(1))
    right = la.identity(2 ** (n - site - arity + 1), Fraction(1))
    return la.kron(la.kron(left, op), right)


# local matrices

def w_matrix(pp):
    th = pp.t_half
    z = 0 * th
    return [[z, z, z, z],
            [z, -1 / th, th, z],
            [z, 1 / th, -th, z],
            [z, z, z, z]]


def B_matrix(pp, xi):
    h = pp.t0_half
    return [[-h, 1 / (xi * h)], [xi * h, -1 / h]]


def Bbar_matrix(pp):
    h = pp.tN_half
    return [[-1 / h, h], [1 / h, -h]]


def r_function(pp, x):
    den = x / pp.t_half - pp.t_half
    if value(den) == 0:
        raise DomainError(f"r(x) has a pole at x = {value(x)}: t^-1/2 x - t^1/2 vanishes")
    return (x - 1) / den


def k_function(x, th, uh):
    den = x * x / th - (uh - 1 / uh) * x - th
    if value(den) == 0:
        raise DomainError(
            f"k(x) has a pole at x = {value(x)}: t_i^-1/2 x^2 - (u_i^1/2 - u_i^-1/2) x - t_i^1/2 vanishes")
    return (x * x - 1) / den


def _one_plus(c, B):
    n = len(B)
    return [[(1 if i == j else 0) + c * B[i][j] for j in range(n)] for i in range(n)]


def build_R(pp, x):
    return _one_plus(r_function(pp, x), w_matrix(pp))


def build_K(pp, x, xi):
    return _one_plus(k_function(x, pp.t0_half, pp.u0_half), B_matrix(pp, xi))


def build_Kbar(pp, x):
    return _one_plus(k_function(1 / x, pp.tN_half, pp.uN_half), Bbar_matrix(pp))


def build_Ktilde(pp, x, xi):
    return build_K(pp, x / pp.s_half, xi)


def build_M(pp, n, xi=None):
    """M(xi) on n sites; the rates are taken from ``pp``."""
    if n < 1:
        raise ValueError("need N >= 1")
    xi = pp.xi if xi is None else xi
    M = la.mat_scale(embed(B_matrix(pp, xi), 1, n), pp.kappa0)
    for i in range(1, n):
        M = la.mat_add(M, la.mat_scale(embed(w_matrix(pp), i, n), pp.kappa_bulk))
    return la.mat_add(M, la.mat_scale(embed(Bbar_matrix(pp), n, n), pp.kappaN))


def gc_diagonal(pp, n):
    """Diagonal of U_GC = prod_i diag(1, tN^-1 t^-(N-i))."""
    out = []
    for tau in configurations(n):
        d = pp.t ** 0
        for i, b in enumerate(tau, start=1):
            if b:
                d = d / (pp.tN * pp.t ** (n - i))
        out.append(d)
    return out


def build_UGC(pp, n):
    d = gc_diagonal(pp, n)
    return [[d[i] if i == j else 0 * d[i] for j in range(len(d))] for i in range(len(d))]


def gc_conjugate(pp, n, A):
    """U_GC A^T U_GC^-1."""
    d = gc_diagonal(pp, n)
    size = len(d)
    return [[d[i] * A[j][i] / d[j] for j in range(size)] for i in range(size)]


# checks

def _rand_point(rng, k=1):
    """Nonzero rationals away from +-1 (spectral parameters)."""
    out = []
    while len(out) < k:
        v = Fraction(rng.randint(2, 19), rng.randint(2, 19)) * rng.choice((1, 1, -1))
        if v not in (1, -1):
            out.append(v)
    return out


def _res(A, B):
    return la.max_abs(la.mat_sub(A, B))


def check_integrability(pp, trials=5, seed=0):
    """Exact residuals of the Yang-Baxter, reflection, unitarity and
    Gallavotti-Cohen identities at random rational spectral points.
    Returns {identity: max residual}; every entry must be 0."""
    rng = random.Random(seed)
    report = {}
    xi = pp.xi

    def record(name, res):
        report[name] = max(report.get(name, Fraction(0)), res)

    done = 0
    while done < trials:
        x1, x2, x3 = _rand_point(rng, 3)
        try:
            R = lambda x, site, n: embed(build_R(pp, x), site, n)
            lhs = la.matmul(la.matmul(R(x2 / x3, 1, 3), R(x1 / x3, 2, 3)), R(x1 / x2, 1, 3))
            rhs = la.matmul(la.matmul(R(x1 / x2, 2, 3), R(x1 / x3, 1, 3)), R(x2 / x3, 2, 3))
            record("Yang-Baxter", _res(lhs, rhs))

            K1 = lambda x: embed(build_K(pp, x, xi), 1, 2)
            lhs = la.matmul(la.matmul(R(x2 / x1, 1, 2), K1(x2)),
                            la.matmul(R(x1 * x2, 1, 2), K1(x1)))
            rhs = la.matmul(la.matmul(K1(x1), R(x1 * x2, 1, 2)),
                            la.matmul(K1(x2), R(x2 / x1, 1, 2)))
            record("left reflection", _res(lhs, rhs))

            Kb2 = lambda x: embed(build_Kbar(pp, x), 2, 2)
            lhs = la.matmul(la.matmul(R(x1 / x2, 1, 2), Kb2(1 / x1)),
                            la.matmul(R(x1 * x2, 1, 2), Kb2(1 / x2)))
            rhs = la.matmul(la.matmul(Kb2(1 / x2), R(x1 * x2, 1, 2)),
                            la.matmul(Kb2(1 / x1), R(x1 / x2, 1, 2)))
            record("right reflection", _res(lhs, rhs))

            I2, I4 = la.identity(2, Fraction(1)), la.identity(4, Fraction(1))
            record("unitarity R", _res(la.matmul(build_R(pp, x1), build_R(pp, 1 / x1)), I4))
            record("unitarity K", _res(la.matmul(build_K(pp, x1, xi), build_K(pp, 1 / x1, xi)), I2))
            record("unitarity Kbar", _res(la.matmul(build_Kbar(pp, x1), build_Kbar(pp, 1 / x1)), I2))
            record("unitarity Ktilde",
                   _res(la.matmul(build_Ktilde(pp, pp.s * x1, xi), build_Ktilde(pp, 1 / x1, xi)), I2))

            Kt1 = lambda x: embed(build_Ktilde(pp, x, xi), 1, 2)
            lhs = la.matmul(la.matmul(R(x2 / x1, 1, 2), Kt1(x2)),
                            la.matmul(R(x1 * x2 / pp.s, 1, 2), Kt1(x1)))
            rhs = la.matmul(la.matmul(Kt1(x1), R(x1 * x2 / pp.s, 1, 2)),
                            la.matmul(Kt1(x2), R(x2 / x1, 1, 2)))
            record("Ktilde reflection", _res(lhs, rhs))

            for n in (1, 2, 3):
                xip = pp.xi_prime(n, xi)
                if n >= 2:
                    for i in range(1, n):
                        Ri = R(x1, i, n)
                        record("GC R", _res(Ri, gc_conjugate(pp, n, Ri)))
                K = embed(build_K(pp, x1, xi), 1, n)
                record("GC K", _res(embed(build_K(pp, x1, xip), 1, n), gc_conjugate(pp, n, K)))
                Kt = embed(build_Ktilde(pp, x1, xi), 1, n)
                record("GC Ktilde",
                       _res(embed(build_Ktilde(pp, x1, xip), 1, n), gc_conjugate(pp, n, Kt)))
                Kb = embed(build_Kbar(pp, x1), n, n)
                record("GC Kbar", _res(Kb, gc_conjugate(pp, n, Kb)))
                record("GC M", _res(build_M(pp, n, xip), gc_conjugate(pp, n, build_M(pp, n, xi))))
        except DomainError:
            continue
        done += 1
    return report


def check_local_derivatives(pp, xi=None):
    """(q-p) R'(1) = sqrt(pq) w, (q-p)/2 K'(1) = sqrt(alpha gamma) B(xi) and
    -(q-p)/2 Kbar'(1) = sqrt(beta delta) Bbar, by jet arithmetic."""
    xi = pp.xi if xi is None else xi
    x = Jet.variable(Fraction(1))
    dR = [[derivative(e) for e in row] for row in build_R(pp, x)]
    dK = [[derivative(e) for e in row] for row in build_K(pp, x, xi)]
    dKb = [[derivative(e) for e in row] for row in build_Kbar(pp, x)]
    qp = pp.q - pp.p
    return {
        "R'(1)": _res(la.mat_scale(dR, qp), la.mat_scale(w_matrix(pp), pp.kappa_bulk)),
        "K'(1)": _res(la.mat_scale(dK, qp / 2), la.mat_scale(B_matrix(pp, xi), pp.kappa0)),
        "Kbar'(1)": _res(la.mat_scale(dKb, -qp / 2), la.mat_scale(Bbar_matrix(pp), pp.kappaN)),
    }


# scattering matrices

def scattering_matrix(pp, i, x, xi=None):
    """S_i(x) on N = len(x) sites, multiplied factor by factor in the
    defining order.  Entries of ``x`` may be jets."""
    n = len(x)
    if not 1 <= i <= n:
        raise IndexError(f"S_{i} undefined for N={n}")
    xi = pp.xi if xi is None else xi
    s = pp.s
    xi_ = x[i - 1]
    X = lambda k: x[k - 1]

    factors = []
    for j in range(i - 1, 0, -1):
        factors.append(embed(build_R(pp, X(j) / (s * xi_)), j, n))
    factors.append(embed(build_Ktilde(pp, 1 / xi_, xi), 1, n))
    for j in range(1, i):
        factors.append(embed(build_R(pp, 1 / (xi_ * X(j))), j, n))
    for j in range(i, n):
        factors.append(embed(build_R(pp, 1 / (xi_ * X(j + 1))), j, n))
    factors.append(embed(build_Kbar(pp, xi_), n, n))
    for j in range(n - 1, i - 1, -1):
        factors.append(embed(build_R(pp, X(j + 1) / xi_), j, n))
    out = factors[0]
    for f in factors[1:]:
        out = la.matmul(out, f)
    return out


def check_scattering(pp, n, trials=5, seed=0, xi=None):
    """S_i = Id and dS_i/dx_i = 2/(p-q) M(xi) at s = x = 1 (exact, by jets),
    plus the deformed exchange relation at random rational points."""
    xi = pp.xi if xi is None else xi
    p1 = pp.with_(s_half=Fraction(1))
    report = {}
    M = build_M(p1, n, xi)
    for i in range(1, n + 1):
        x = [Fraction(1)] * n
        x[i - 1] = Jet.variable(Fraction(1))
        S = scattering_matrix(p1, i, x, xi)
        val = [[value(e) for e in r] for r in S]
        der = [[derivative(e) for e in r] for r in S]
        report[f"S_{i}(1) - Id"] = _res(val, la.identity(2 ** n, Fraction(1)))
        report[f"dS_{i} - 2M/(p-q)"] = _res(der, la.mat_scale(M, 2 / (pp.p - pp.q)))
    rng = random.Random(seed)
    done = 0
    worst = Fraction(0)
    while done < trials and n >= 2:
        x = _rand_point(rng, n)
        try:
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    xj = list(x)
                    xj[j - 1] = pp.s * x[j - 1]
                    xi_ = list(x)
                    xi_[i - 1] = pp.s * x[i - 1]
                    lhs = la.matmul(scattering_matrix(pp, i, xj, xi), scattering_matrix(pp, j, x, xi))
                    rhs = la.matmul(scattering_matrix(pp, j, xi_, xi), scattering_matrix(pp, i, x, xi))
                    worst = max(worst, _res(lhs, rhs))
        except (DomainError, ZeroDivisionError):
            continue
        done += 1
    if n >= 2:
        report["exchange S_i S_j"] = worst
    return report


# qKZ

def _swap(x, i):
    x = list(x)
    x[i - 1], x[i] = x[i], x[i - 1]
    return x


def qkz_residuals(pp, n, state, x, side="right", xi=None):
    """Residuals of the N+1 qKZ equations at one point.  ``state(x)``
    returns the 2^N components (exact or numeric)."""
    xi = pp.xi if xi is None else xi
    x = list(x)
    out = {}

    def apply(A, vec):
        return la.matvec(A, vec) if side == "right" else la.vecmat(vec, A)

    def res(u, v):
        return max(abs(a - b) for a, b in zip(u, v))

    base = state(x)
    for i in range(1, n):
        A = embed(build_R(pp, x[i] / x[i - 1]), i, n)
        out[f"R_{i}"] = res(apply(A, base), state(_swap(x, i)))
    y = [1 / x[0]] + x[1:]
    A = embed(build_Ktilde(pp, 1 / x[0], xi), 1, n)
    out["Ktilde_1"] = res(apply(A, state(y)), state([pp.s * x[0]] + x[1:]))
    A = embed(build_Kbar(pp, x[-1]), n, n)
    out[f"Kbar_{n}"] = res(apply(A, base), state(x[:-1] + [1 / x[-1]]))
    return out


def verify_qkz(pp, n, state, points, side="right", xi=None):
    """Worst residual of each qKZ equation over ``points``."""
    report = {}
    for x in points:
        for k, v in qkz_residuals(pp, n, state, x, side, xi).items():
            report[k] = max(report.get(k, 0), v)
    return report


def sample_points(n, count, seed=0):
    """Deterministic rational spectral points avoiding +-1 and coincidences."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        x = _rand_point(rng, n)
        x = [abs(v) for v in x]
        if len(set(x)) == n and all(a * b != 1 for a in x for b in x):
            pts.append(x)
    return pts


# spectrum

def charpoly_M(pp, n, xi):
    return la.charpoly(build_M(pp, n, xi))


def lambda0(pp, n, xi, precision=256, max_iter=200000):
    """Largest eigenvalue of M(xi) by shifted power iteration.

    Returns (value, iterations, residual).  The shift makes the matrix
    nonnegative for positive rates; at non-physical points the iteration
    still converges when the top eigenvalue is real and simple."""
    with mpmath.workprec(precision):
        xi = mpmath.mpf(xi.numerator) / xi.denominator if isinstance(xi, Fraction) else mpmath.mpf(xi)
        A = [[mpmath.mpf(e.numerator) / e.denominator if isinstance(e, Fraction) else mpmath.mpf(e)
              for e in row] for row in build_M(pp, n, xi)]
        size = len(A)
        c = max(abs(A[i][i]) for i in range(size)) + 1
        sparse = [[(j, A[i][j] + (c if i == j else 0)) for j in range(size)
                   if A[i][j] != 0 or i == j] for i in range(size)]
        v = [mpmath.mpf(1)] * size
        tol = mpmath.mpf(2) ** (-(precision // 2))
        lam_prev = None
        for it in range(1, max_iter + 1):
            u = [mpmath.fsum(a * v[j] for j, a in row) for row in sparse]
            norm = max(abs(e) for e in u)
            lam = mpmath.fsum(u[k] * v[k] for k in range(size)) / mpmath.fsum(e * e for e in v)
            v = [e / norm for e in u]
            if lam_prev is not None and abs(lam - lam_prev) <= tol * max(1, abs(lam)):
                break
            lam_prev = lam
        else:
            raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")
        # polish to full working precision by shifted inverse iteration
        ev = lam - c
        Am = mpmath.matrix(A)
        vec = mpmath.matrix(v)
        for _ in range(4):
            shifted = Am - (ev + tol ** 2) * mpmath.eye(size)
            try:
                y = mpmath.lu_solve(shifted, vec)
            except ZeroDivisionError:
                break
            vec = y / mpmath.norm(y, mpmath.inf)
            Av = Am * vec
            ev = mpmath.fsum(Av[k] * vec[k] for k in range(size)) / mpmath.fsum(e * e for e in vec)
        Av = Am * vec
        resid = max(abs(Av[k] - ev * vec[k]) for k in range(size))
        if resid > tol:
            raise ConvergenceError(f"eigen-residual {mpmath.nstr(resid, 5)} above tolerance")
        return ev, it, resid


def lambda0_n1_closed_form(pp, xi):
    """Larger root of the characteristic quadratic of the 1-site M(xi)."""
    M = build_M(pp, 1, xi)
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return (tr + mpmath.sqrt(tr * tr - 4 * det)) / 2


def check_equilibrium(pp, n):
    """M(1) U_GC |1> when t0 tN t^(N-1) = 1 (must vanish exactly)."""
    if pp.t0 * pp.tN * pp.t ** (n - 1) != 1:
        raise ValueError("equilibrium shortcut needs t0 tN t^(N-1) = 1")
    vec = gc_diagonal(pp, n)
    return la.max_abs(la.matvec(build_M(pp, n, Fraction(1)), vec))


def lambda0_stationary(pp, n, xi, precision=256, steps=64):
    """Eigenvalue of M(xi) on the branch through 0 at xi = 1, tracked by
    continuation in ln xi.  At physical rates this is the top eigenvalue;
    at non-physical points the top eigenvalue may sit on another branch."""
    with mpmath.workprec(precision):
        xi = mpmath.mpf(xi.numerator) / xi.denominator if isinstance(xi, Fraction) else mpmath.mpf(xi)
        if xi <= 0:
            raise DomainError("xi must be positive")
        p = pp.to_mpf()
        L = mpmath.log(xi)
        prev = mpmath.mpf(0)
        for k in range(1, steps + 1):
            M = mpmath.matrix(build_M(p, n, mpmath.exp(L * k / steps)))
            ev = mpmath.eig(M, left=False, right=False)
            order = sorted(ev, key=lambda z: abs(z - prev))
            if len(order) > 1 and abs(order[1] - prev) < 4 * abs(order[0] - prev):
                if steps < 1024:
                    return lambda0_stationary(pp, n, xi, precision, steps * 4)
                raise ConvergenceError(
                    "the branch through 0 meets another eigenvalue between xi = 1 and "
                    f"xi = {mpmath.nstr(xi, 8)}; no real continuation")
            prev = order[0]
        if abs(mpmath.im(prev)) > mpmath.mpf(2) ** (-(precision // 2)):
            raise ConvergenceError("stationary branch turned complex")
        return mpmath.re(prev)
