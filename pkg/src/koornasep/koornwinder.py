"""Exact oracles for non-symmetric Koornwinder polynomials (Y-eigenproblem)
and symmetric ones (Koornwinder's s-difference operator D)."""

from dataclasses import dataclass
from fractions import Fraction

from . import compositions as comp
from .errors import DegenerateParametersError, DomainError, InternalConsistencyError
from .hecke import apply_Y
from .laurent import LaurentPolynomial, orbit_sum
from .linalg import solve_exact


@dataclass
class NonsymmetricE:
    lam: tuple
    poly: LaurentPolynomial
    eigenvalues: list


@dataclass
class SymmetricP:
    lam: tuple
    poly: LaurentPolynomial
    d_eigenvalue: object
    basis: list
    coefficients: list


def y_eigenvalues(ctx, lam):
    """Closed-form Y-eigenvalues for lam = ((-m)^N) or (m^N)."""
    n, pp = ctx.nvars, ctx.params
    lam = tuple(lam)
    m = abs(lam[0])
    if lam == (m,) * n:
        return [pp.t0_half * pp.tN_half * pp.s ** m * pp.t ** (n - i) for i in range(1, n + 1)]
    if lam == (-m,) * n:
        return [1 / (pp.t0_half * pp.tN_half * pp.s ** m * pp.t ** (i - 1))
                for i in range(1, n + 1)]
    raise ValueError("closed-form eigenvalues only for (m^N) and ((-m)^N)")


_WEIGHTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def nonsymmetric_E(ctx, lam):
    """E_lam with lam+ = (m^N), by a triangular solve of the eigenproblem of
    Y = sum_i Y_i / p_i (p_i the i-th prime) on span{x^mu : mu preceq lam}.
    A single Y_i does not separate the basis once N > 1; the weighted sum
    does at generic parameters.  Each Y_i eigen-equation is checked exactly."""
    lam = tuple(lam)
    n = ctx.nvars
    if len(lam) != n:
        raise ValueError("composition length differs from N")
    if n > len(_WEIGHTS):
        raise ValueError(f"N > {len(_WEIGHTS)} is not supported")
    m = max(abs(v) for v in lam)
    if comp.plus(lam) != (m,) * n:
        raise ValueError("only compositions with lam+ = (m^N) are supported")
    basis = comp.preceq_basis(lam)
    pos = {mu: k for k, mu in enumerate(basis)}
    cols = []
    for k, mu in enumerate(basis):
        mono = LaurentPolynomial.monomial(mu, Fraction(1))
        img = LaurentPolynomial(n)
        for i in range(1, n + 1):
            yi = apply_Y(ctx, i, mono)
            for e in yi.terms:
                j = pos.get(e)
                if j is None or j > k:
                    raise InternalConsistencyError(
                        f"Y_{i} x^{mu} has term x^{e} outside the triangular span")
            img = img + yi * Fraction(1, _WEIGHTS[i - 1])
        cols.append(img)
    diag = [cols[k].coeff(mu) for k, mu in enumerate(basis)]
    top = len(basis) - 1
    if basis[top] != lam:
        raise InternalConsistencyError("lam is not maximal in its basis")
    y = diag[top]
    coeffs = [Fraction(0)] * len(basis)
    coeffs[top] = Fraction(1)
    # (y - d_j) c_j = sum_{k > j} [Y]_{j k} c_k
    for j in range(top - 1, -1, -1):
        mu = basis[j]
        rhs = sum((cols[k].coeff(mu) * coeffs[k] for k in range(j + 1, top + 1)
                   if coeffs[k] != 0), Fraction(0))
        gap = y - diag[j]
        if gap == 0:
            raise DegenerateParametersError(
                f"Y-spectrum of x^{mu} collides with that of x^{lam}; choose another parameter point")
        coeffs[j] = rhs / gap
    poly = LaurentPolynomial(n, {mu: c for mu, c in zip(basis, coeffs)})
    eig = []
    for i in range(1, n + 1):
        img = apply_Y(ctx, i, poly)
        ev = img.coeff(lam)
        if img != poly * ev:
            raise InternalConsistencyError(f"E_{lam} is not a Y_{i} eigenfunction")
        eig.append(ev)
    return NonsymmetricE(lam, poly, eig)


# Koornwinder's difference operator

def _d_consts(params, s):
    """(a, b, c, d, t) with a, b taken at the shift s actually used by D."""
    if s == params.s:
        sh = params.s_half
    else:
        sh = None
        if isinstance(s, Fraction):
            from .params import exact_sqrt
            try:
                sh = exact_sqrt(s)
            except ValueError:
                pass
        if sh is None:
            import mpmath
            sh = mpmath.sqrt(s)
    a = sh * params.t0_half * params.u0_half
    b = -sh * params.t0_half / params.u0_half
    return a, b, params.c, params.d, params.t


def _g(x, i, params, s, consts=None):
    """g_i(x; s) at a numeric point."""
    a, b, c, d, t = consts or _d_consts(params, s)
    xi = x[i]
    num = (1 - a * xi) * (1 - b * xi) * (1 - c * xi) * (1 - d * xi)
    den = (1 - xi * xi) * (1 - s * xi * xi)
    for j, xj in enumerate(x):
        if j == i:
            continue
        num *= (1 - t * xi / xj) * (1 - t * xi * xj)
        den *= (1 - xi / xj) * (1 - xi * xj)
    if den == 0:
        raise DomainError(f"g_{i + 1} has a pole at {x}")
    return num / den


def g_function(x, i, params, s):
    return _g(tuple(x), i, params, s)


def apply_D_pointwise(f, x, params, s):
    """(D f)(x) by direct evaluation; f is any callable of a point."""
    x = tuple(x)
    consts = _d_consts(params, s)
    xinv = tuple(1 / v for v in x)
    f0 = f(x)
    total = 0
    for i in range(len(x)):
        up = x[:i] + (s * x[i],) + x[i + 1:]
        dn = x[:i] + (x[i] / s,) + x[i + 1:]
        total += _g(x, i, params, s, consts) * (f(up) - f0)
        total += _g(xinv, i, params, s, consts) * (f(dn) - f0)
    return total


def _primes():
    k = 2
    while True:
        if all(k % p for p in range(2, int(k ** 0.5) + 1)):
            yield k
        k += 1


def interpolation_points(n, count, params, s):
    """Deterministic points with coordinates prime/7, skipping poles of the
    g_i at the point and at its inverse."""
    gen = _primes()
    pts = []
    while len(pts) < count:
        x = tuple(Fraction(next(gen), 7) for _ in range(n))
        try:
            for i in range(n):
                _g(x, i, params, s)
                _g(tuple(1 / v for v in x), i, params, s)
        except (DomainError, ZeroDivisionError):
            continue
        pts.append(x)
    return pts


def _numeric(s):
    return not isinstance(s, (int, Fraction))


def apply_D_matrix(ctx, basis, s=None, extra=3):
    """Matrix of D on the orbit-sum basis ``basis`` (partitions), via
    evaluation and interpolation.  Column k holds the expansion of
    D m_{basis[k]}.  Raises if the interpolation is inconsistent."""
    pp = ctx.params
    s = pp.s if s is None else s
    if _numeric(s):
        pp = pp.to_mpf()
    n = ctx.nvars
    npts = len(basis) + extra
    pts = interpolation_points(n, npts, pp, s)
    if _numeric(s):
        import mpmath
        pts = [tuple(mpmath.mpf(v.numerator) / v.denominator for v in x) for x in pts]
    monos = [orbit_sum(mu) for mu in basis]
    V = [[m.evaluate(x) for m in monos] for x in pts]
    rhs = [[apply_D_pointwise(m.evaluate, x, pp, s) for m in monos] for x in pts]
    if _numeric(s):
        from .params import to_mpf
        V = [[to_mpf(v) for v in row] for row in V]
        rhs = [[to_mpf(v) for v in row] for row in rhs]
    sq = len(basis)
    sol = solve_exact([row[:] for row in V[:sq]], [row[:] for row in rhs[:sq]])
    # consistency on the extra points
    for r in range(sq, npts):
        for k in range(sq):
            pred = sum(V[r][j] * sol[j][k] for j in range(sq))
            if not _close(pred, rhs[r][k], s):
                raise ValueError("D f is not in the span of the basis (precondition violated)")
    return sol


def _close(a, b, s):
    if not _numeric(s):
        return a == b
    import mpmath
    scale = max(1, abs(a), abs(b))
    return abs(a - b) <= scale * mpmath.mpf(2) ** (-(mpmath.mp.prec // 2))


def apply_D(ctx, f, s=None):
    """D f for a W0-invariant f in the span of orbit sums, returned as a
    Laurent polynomial."""
    pp = ctx.params
    s = pp.s if s is None else s
    n = ctx.nvars
    if not f:
        return LaurentPolynomial(n)
    m = max(max(abs(v) for v in e) for e in f.terms)
    basis = comp.box_partitions(m, n)
    coords = []
    for mu in basis:
        coords.append(f.coeff(mu))
    recon = sum((orbit_sum(mu) * c for mu, c in zip(basis, coords) if c != 0),
                LaurentPolynomial(n))
    if recon != f:
        raise ValueError("f is not W0-invariant or not in the orbit-sum span")
    mat = apply_D_matrix(ctx, basis, s)
    out = LaurentPolynomial(n)
    for j, mu in enumerate(basis):
        c = sum(mat[j][k] * coords[k] for k in range(len(basis)))
        if c != 0:
            out = out + orbit_sum(mu) * c
    return out


def d_eigenvalue(ctx, lam, s=None):
    """d_lam = sum_i [t0 tN t^(2N-i-1) (s^lam_i - 1) + t^(i-1) (s^-lam_i - 1)]."""
    pp = ctx.params
    s = pp.s if s is None else s
    if _numeric(s):
        pp = pp.to_mpf()
    n = ctx.nvars
    if not comp.is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    total = 0
    for i, li in enumerate(lam, start=1):
        total += pp.t0 * pp.tN * pp.t ** (2 * n - i - 1) * (s ** li - 1)
        total += pp.t ** (i - 1) * (s ** (-li) - 1)
    return total


def d0(params, n, xi):
    """The eigenvalue of D on P_{(m^N)} at s = xi^(1/m), independent of m."""
    t = params.t
    return (1 - t ** n) / (1 - t) * (xi - 1) * (params.t0 * params.tN * t ** (n - 1) - 1 / xi)


def symmetric_P(ctx, m, s=None):
    """P_{(m^N)} expanded on orbit sums over box_partitions(m, N), from the
    triangular system D P = d P with unit leading coefficient."""
    pp = ctx.params
    s = pp.s if s is None else s
    n = ctx.nvars
    if m < 0:
        raise ValueError("m must be >= 0")
    basis = comp.box_partitions(m, n)
    top = len(basis) - 1
    lam = (m,) * n
    if basis[top] != lam:
        raise InternalConsistencyError("(m^N) is not maximal")
    mat = apply_D_matrix(ctx, basis, s)
    numeric = _numeric(s)
    for k in range(len(basis)):
        for j in range(k + 1, len(basis)):
            if mat[j][k] != 0 and not (numeric and _close(mat[j][k], 0, s)):
                raise InternalConsistencyError("D is not triangular on the orbit-sum basis")
    dval = d_eigenvalue(ctx, lam, s)
    if not (_close(mat[top][top], dval, s) if numeric else mat[top][top] == dval):
        raise InternalConsistencyError("diagonal of D disagrees with the closed-form eigenvalue")
    one = mat[top][top] ** 0
    coeffs = [0 * one] * len(basis)
    coeffs[top] = one
    for j in range(top - 1, -1, -1):
        rhs = sum(mat[j][k] * coeffs[k] for k in range(j + 1, top + 1))
        gap = dval - mat[j][j]
        if (gap == 0) if not numeric else _close(gap, 0, s):
            raise DegenerateParametersError(
                f"d_{basis[j]} equals d_{lam}; choose another parameter point")
        coeffs[j] = rhs / gap
    poly = sum((orbit_sum(mu) * c for mu, c in zip(basis, coeffs) if c != 0),
               LaurentPolynomial(n))
    # eigen-equation in the orbit basis
    for j in range(len(basis)):
        lhs = sum(mat[j][k] * coeffs[k] for k in range(len(basis)))
        ok = _close(lhs, dval * coeffs[j], s) if numeric else lhs == dval * coeffs[j]
        if not ok:
            raise InternalConsistencyError("P fails the D eigen-equation")
    return SymmetricP(lam, poly, dval, basis, coeffs)
