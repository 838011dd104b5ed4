"""Matrix-product states built on the t-deformed oscillator algebra.

Two interchangeable backends supply the boundary expectation values
<<w|S^j (word in a, a^dagger)|v>> / <<w|S^j|v>>:

* ``FockBackend`` contracts the truncated Fock representation (K levels);
* ``MomentBackend`` reduces words to normal order with the algebra
  relations and solves the resulting boundary recursions.  It needs no
  truncation, stays exact over the rationals, and remains usable when the
  Fock series stops converging (s close to 1).

A word is a string over ``"a"`` (annihilation) and ``"d"`` (creation).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import mpmath

from . import linalg as la
from .asep import configurations, gc_diagonal
from .errors import ConvergenceError, DomainError, TruncationError
from .hecke import HeckeContext, apply_T
from .koornwinder import nonsymmetric_E


# t-Hermite polynomials and Fock data

def t_pochhammer(x, n, t):
    out = x ** 0 if not isinstance(x, int) else Fraction(1)
    for k in range(n):
        out *= 1 - t ** k * x
    return out


def t_hermite(n, x, y, t):
    """H_n(x, y) from H_{n+1} = (x + y) H_n - x y (1 - t^n) H_{n-1}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    prev, cur = 0 * x, x ** 0
    for k in range(n):
        prev, cur = cur, (x + y) * cur - x * y * (1 - t ** k) * prev
    return cur


def hermite_table(count, x, y, t):
    out = [x ** 0]
    prev = 0 * x
    for k in range(count - 1):
        nxt = (x + y) * out[-1] - x * y * (1 - t ** k) * prev
        prev = out[-1]
        out.append(nxt)
    return out


def boundary_halves(pp, tilde):
    """(t0^1/2, u0^1/2, tN^1/2, uN^1/2), with u_i := t_i for the tilde pair."""
    if tilde:
        return pp.t0_half, pp.t0_half, pp.tN_half, pp.tN_half
    return pp.t0_half, pp.u0_half, pp.tN_half, pp.uN_half


@dataclass
class FockRep:
    """Truncated Fock representation.  Matrices act on coefficient vectors
    indexed by the level k = 0..K-1."""
    K: int
    params: object
    a: list
    adag: list
    S: list
    w: list
    v: list
    w_tilde: list
    v_tilde: list


def build_fock(pp, K):
    if K < 2:
        raise ValueError("truncation K must be >= 2")
    t = pp.t
    one = t ** 0
    zero = 0 * one
    a = [[zero] * K for _ in range(K)]
    adag = [[zero] * K for _ in range(K)]
    S = [[zero] * K for _ in range(K)]
    for k in range(K):
        S[k][k] = pp.s_half ** k
        if k >= 1:
            a[k - 1][k] = 1 - t ** k
            adag[k][k - 1] = one
    vecs = []
    for tilde in (False, True):
        t0h, u0h, tNh, uNh = boundary_halves(pp, tilde)
        w = hermite_table(K, t0h / u0h, -t0h * u0h, t)
        hv = hermite_table(K, tNh / uNh, -tNh * uNh, t)
        v = [h / t_pochhammer(t, k, t) for k, h in enumerate(hv)]
        vecs.append((w, v))
    (w, v), (wt, vt) = vecs
    return FockRep(K, pp, a, adag, S, w, v, wt, vt)


def apply_word_to_vector(word, vec, t):
    """word |vec>, applying letters right to left on level coefficients."""
    K = len(vec)
    for letter in reversed(word):
        if letter == "a":
            vec = [(1 - t ** (k + 1)) * vec[k + 1] for k in range(K - 1)] + [0 * vec[0]]
        elif letter == "d":
            vec = [0 * vec[0]] + vec[:K - 1]
        else:
            raise ValueError(f"unknown letter {letter!r}")
    return vec


def fock_terms(rep, j, word, tilde=False):
    """Summands w_k s^(jk/2) (word v)_k of <<w|S^j word|v>>."""
    pp = rep.params
    w, v = (rep.w_tilde, rep.v_tilde) if tilde else (rep.w, rep.v)
    vec = apply_word_to_vector(word, list(v), pp.t)
    sj = pp.s_half ** j
    out, scale = [], sj ** 0
    for k in range(rep.K):
        out.append(w[k] * scale * vec[k])
        scale *= sj
    return out


def tail_estimate(terms):
    """Geometric tail bound from the decay of the last half of the terms;
    infinite when the terms do not decay."""
    K = len(terms)
    if K < 8:
        return mpmath.inf
    q1 = max(abs(x) for x in terms[K // 2:3 * K // 4])
    q2 = max(abs(x) for x in terms[3 * K // 4:])
    if q2 == 0:
        return mpmath.mpf(0)
    if q1 == 0:
        return mpmath.inf
    r = (mpmath.mpf(q2) / q1) ** (mpmath.mpf(1) / (K // 4))
    if r >= 1:
        return mpmath.inf
    return mpmath.mpf(q2) * r / (1 - r)


def fock_moment(rep, j, word, tilde=False):
    terms = fock_terms(rep, j, word, tilde)
    return sum(terms[1:], terms[0]), tail_estimate(terms)


def omega_closed_form(pp, a, tilde=False, precision=None):
    """<<w|S^a|v>> from the t-Mehler formula, as an mpf.  The numerator is
    (t0 tN s^a; t)_inf."""
    prec = precision or mpmath.mp.prec
    with mpmath.workprec(prec + 16):
        p = pp.to_mpf()
        t0h, u0h, tNh, uNh = boundary_halves(p, tilde)
        if not abs(p.t) < 1:
            raise ConvergenceError(f"t = {mpmath.nstr(p.t, 8)}: infinite products need |t| < 1")
        lam = p.s_half ** a
        num = [t0h ** 2 * tNh ** 2 * lam ** 2]
        den = [t0h / u0h * tNh / uNh * lam, -t0h / u0h * tNh * uNh * lam,
               -t0h * u0h * tNh / uNh * lam, t0h * u0h * tNh * uNh * lam]
        for z in den:
            if abs(z) >= 1:
                raise ConvergenceError(
                    f"Mehler series diverges: product argument {mpmath.nstr(z, 8)} has modulus >= 1")
        eps = mpmath.mpf(2) ** (-(prec + 8))

        def qinf(z):
            out = mpmath.mpf(1)
            tk = mpmath.mpf(1)
            while True:
                term = tk * z
                out *= 1 - term
                if abs(term) < eps:
                    return out
                tk *= p.t

        val = qinf(num[0])
        for z in den:
            val /= qinf(z)
    return +val


# normal-ordering moment backend

@lru_cache(maxsize=None)
def normal_order(word):
    """Expand a word as sum c(t) d^p a^q using a d = t d a + (1 - t).

    Returns ((p, q), ((power, coeff), ...)) pairs; c(t) is a polynomial in t
    with integer coefficients."""
    k = word.find("ad")
    if k < 0:
        p = word.count("d")
        return (((p, len(word) - p), ((0, 1),)),)
    out = {}

    def add(key, pw, c):
        d = out.setdefault(key, {})
        d[pw] = d.get(pw, 0) + c

    for key, poly in normal_order(word[:k] + "da" + word[k + 2:]):
        for pw, c in poly:
            add(key, pw + 1, c)
    for key, poly in normal_order(word[:k] + word[k + 2:]):
        for pw, c in poly:
            add(key, pw, c)
            add(key, pw + 1, -c)
    return tuple(sorted((key, tuple(sorted((pw, c) for pw, c in d.items() if c)))
                        for key, d in out.items() if any(d.values())))


class MomentBackend:
    """phi_j(word) = <<w|S^j word|v>> / <<w|S^j|v>> by exact reduction."""

    def __init__(self, pp):
        self.pp = pp
        self._g = {}

    def _gtable(self, j, tilde):
        key = (j, tilde)
        if key not in self._g:
            self._g[key] = {}
        return self._g[key]

    def g(self, j, tilde, p, q):
        """phi_j(d^p a^q)."""
        table = self._gtable(j, tilde)
        if (p, q) in table:
            return table[(p, q)]
        pp = self.pp
        t = pp.t
        t0h, u0h, tNh, uNh = boundary_halves(pp, tilde)
        r0 = u0h - 1 / u0h
        rN = uNh - 1 / uNh
        tN = tNh * tNh
        if p == 0 and q == 0:
            val = t ** 0
        elif q > 0:
            val = tN * t ** (q - 1) * self.g(j, tilde, p + 1, q - 1) - tNh * rN * self.g(j, tilde, p, q - 1)
            if q >= 2:
                val += tN * (1 - t ** (q - 1)) * self.g(j, tilde, p, q - 2)
        else:
            sj = pp.s_half ** (2 * j)
            t0 = t0h * t0h
            rhs = -sj * t0 * t ** (p - 1) * tNh * rN * self.g(j, tilde, p - 1, 0)
            if p >= 2:
                rhs += sj * t0 * (1 - t ** (p - 1)) * self.g(j, tilde, p - 2, 0)
            rhs -= pp.s_half ** j * t0h * r0 * self.g(j, tilde, p - 1, 0)
            den = 1 - sj * t0 * tN * t ** (p - 1)
            if den == 0:
                raise DomainError(f"moment recursion singular at j={j}, p={p}")
            val = rhs / den
        table[(p, q)] = val
        return val

    def ratio(self, j, word, tilde=False):
        t = self.pp.t
        total = 0 * t
        for (p, q), poly in normal_order(word):
            coeff = sum((c * t ** pw for pw, c in poly), 0 * t)
            total += coeff * self.g(j, tilde, p, q)
        return total

    def tail(self):
        return 0


class FockBackend:
    """Ratios from the truncated Fock representation.  Tracks the largest
    relative tail estimate seen."""

    def __init__(self, pp, K=64):
        self.pp = pp
        self.rep = build_fock(pp, K)
        self._cache = {}
        self.max_tail = mpmath.mpf(0)

    def omega(self, j, tilde=False):
        return self._moment(j, "", tilde)[0]

    def _moment(self, j, word, tilde):
        key = (j, word, tilde)
        if key not in self._cache:
            self._cache[key] = fock_moment(self.rep, j, word, tilde)
        return self._cache[key]

    def ratio(self, j, word, tilde=False):
        num, tn = self._moment(j, word, tilde)
        den, td = self._moment(j, "", tilde)
        if den == 0:
            raise DomainError(f"<<w|S^{j}|v>> vanishes")
        rel = (abs(tn) + abs(td * num / den)) / abs(den)
        self.max_tail = max(self.max_tail, rel)
        return num / den

    def tail(self):
        return self.max_tail


# increments

_P_LETTER = {(0, 1): "a", (1, 0): "d"}


def _increment(backend, x, j, k, left):
    """Normalised <L(x_1)_1 ... L(x_N)_N> with S^j on the first auxiliary
    space and S^k on the second; ``left`` evaluates L at 1/x."""
    n = len(x)
    confs = configurations(n)
    y = [1 / xi for xi in x] if left else list(x)
    one = y[0] ** 0
    A = [[None] * len(confs) for _ in confs]
    B = [[None] * len(confs) for _ in confs]
    for r, row in enumerate(confs):
        for c, col in enumerate(confs):
            # first space, P(y) = [[1, a], [y a^dagger, y]]
            wt = one
            word = ""
            for ri, ci, yi in zip(row, col, y):
                if ri:
                    wt = wt * yi
                word += _P_LETTER.get((ri, ci), "")
            A[r][c] = wt * backend.ratio(j, word, False)
            # second space, Q(y) = [[1/y, a/y], [a^dagger, 1]]
            wt = one
            word = ""
            for ri, ci, yi in zip(row, col, y):
                if not ri:
                    wt = wt / yi
                word += _P_LETTER.get((ri, ci), "")
            B[r][c] = wt * backend.ratio(k, word, True)
    return la.matmul(A, B)


def psi_1(backend, x):
    """Psi^(1): <<w|S b(x_1)...b(x_N)|v>> / <<w|S|v>>."""
    n = len(x)
    out = []
    for tau in configurations(n):
        total = 0 * x[0]
        # expand prod_i (scalar_i + letter_i)
        for pick in product((0, 1), repeat=n):
            wt = x[0] ** 0
            word = ""
            for ti, pi, xi in zip(tau, pick, x):
                if pi:
                    word += "d" if ti else "a"
                else:
                    wt = wt * (xi if ti else 1 / xi)
            total += wt * backend.ratio(1, word, False)
        out.append(total)
    return out


@dataclass
class MPResult:
    n: int
    m: int
    side: str
    components: list
    tail_estimate: object = 0
    omega: object = None

    def component(self, tau):
        k = 0
        for b in tau:
            k = 2 * k + b
        return self.components[k]

    def total(self):
        return sum(self.components[1:], self.components[0])


def _prepare(pp, x, mode, precision):
    if mode == "exact":
        return pp, [Fraction(v) for v in x]
    if mode != "numeric":
        raise ValueError(f"mode must be 'exact' or 'numeric', not {mode!r}")
    p = pp.to_mpf()
    return p, [mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpmath.mpf(v)
               for v in x]


def make_backend(pp, backend="fock", K=64):
    if backend == "fock":
        return FockBackend(pp, K)
    if backend == "moments":
        return MomentBackend(pp)
    raise ValueError(f"unknown backend {backend!r}")


def psi_m(pp, m, n, x, mode="numeric", K=64, backend="fock", precision=256, tol=None):
    """Right state Psi^(m)(x) at xi = s^m via the increment recursion."""
    if m < 1:
        raise ValueError("psi_m needs m >= 1")
    if len(x) != n:
        raise ValueError("point has wrong length")
    if mode == "exact" and backend != "moments":
        raise ValueError("exact mode needs the moments backend")
    with mpmath.workprec(precision):
        p, pt = _prepare(pp, x, mode, precision)
        be = make_backend(p, backend, K)
        vec = psi_1(be, pt)
        for k in range(2, m + 1):
            G = _increment(be, pt, 2 * k - 1, 2 * k - 2, left=False)
            vec = la.matvec(G, vec)
        res = MPResult(n, m, "right", vec, be.tail())
        res.omega = _omega_right(be, m) if backend == "fock" else None
    _check_tail(res, tol)
    return res


def phi_m(pp, m, n, x, mode="numeric", K=64, backend="fock", precision=256, tol=None):
    """Left state Phi^(m)(x) at xi = s^m (a row vector)."""
    if m < 0:
        raise ValueError("phi_m needs m >= 0")
    if len(x) != n:
        raise ValueError("point has wrong length")
    if mode == "exact" and backend != "moments":
        raise ValueError("exact mode needs the moments backend")
    with mpmath.workprec(precision):
        p, pt = _prepare(pp, x, mode, precision)
        be = make_backend(p, backend, K)
        vec = [pt[0] ** 0] * 2 ** n
        for k in range(1, m + 1):
            H = _increment(be, pt, 2 * k - 1, 2 * k, left=True)
            vec = la.vecmat(vec, H)
        res = MPResult(n, m, "left", vec, be.tail())
    _check_tail(res, tol)
    return res


def _omega_right(be, m):
    """Omega^(m) = prod over the auxiliary spaces of <<w|S^j|v>>."""
    out = be.omega(1)
    for k in range(2, m + 1):
        out *= be.omega(2 * k - 1) * be.omega(2 * k - 2, True)
    return out


def _check_tail(res, tol):
    if tol is None:
        return
    if not 3 * res.tail_estimate <= tol:
        raise TruncationError(
            f"estimated truncation error {mpmath.nstr(3 * res.tail_estimate, 5)} exceeds "
            f"{mpmath.nstr(tol, 5)}; increase K")


def Z_m(pp, m, n, x, mode="numeric", K=64, backend="fock", precision=256, tol=None):
    """Sum of the components of Psi^(m); equals P_(m^N)(x)."""
    res = psi_m(pp, m, n, x, mode, K, backend, precision, tol)
    with mpmath.workprec(precision):
        return res.total()


# oracle states from the exchange relations

def _tau_index(tau):
    k = 0
    for b in tau:
        k = 2 * k + b
    return k


def oracle_state(ctx, m, side="right"):
    """Components (Laurent polynomials) of the exact q-KZ solution at
    xi = s^m, generated from the empty-lattice weight by the exchange
    relations.  Right: psi_{0..0} = E_((-m)^N); left: phi_{0..0} = E_(m^N)."""
    n = ctx.nvars
    pp = ctx.params
    if side == "right":
        base = nonsymmetric_E(ctx, (-m,) * n).poly
        cN, cb = 1 / pp.tN_half, 1 / pp.t_half
    elif side == "left":
        base = nonsymmetric_E(ctx, (m,) * n).poly
        cN, cb = pp.tN_half, pp.t_half
    else:
        raise ValueError("side must be 'right' or 'left'")
    memo = {(0,) * n: base}

    def build(tau):
        if tau in memo:
            return memo[tau]
        k = max(i for i, b in enumerate(tau, start=1) if b)
        if k == n:
            prev = tau[:-1] + (0,)
            val = apply_T(ctx, n, -1, build(prev)) * cN
        else:
            prev = tau[:k - 1] + (0, 1) + tau[k + 1:]
            val = apply_T(ctx, k, -1, build(prev)) * cb
        memo[tau] = val
        return val

    return [build(tau) for tau in configurations(n)]


def check_exchange_relations(ctx, comps, xi, side="right"):
    """Residuals of the component exchange relations (T_0, T_N and the three
    bulk cases).  Exact states must give 0 everywhere."""
    n = ctx.nvars
    pp = ctx.params
    confs = configurations(n)
    report = {}

    def rec(name, poly):
        size = max((abs(c) for c in poly.terms.values()), default=Fraction(0))
        report[name] = max(report.get(name, Fraction(0)), size)

    if side == "right":
        c0, cN, c01 = 1 / (xi * pp.t0_half), 1 / pp.tN_half, 1 / pp.t_half
    else:
        c0, cN, c01 = xi * pp.t0_half, pp.tN_half, pp.t_half
    for tau in confs:
        f = comps[_tau_index(tau)]
        if tau[0] == 0:
            other = comps[_tau_index((1,) + tau[1:])]
            rec("T0", apply_T(ctx, 0, 1, f) - other * c0)
        if tau[-1] == 1:
            other = comps[_tau_index(tau[:-1] + (0,))]
            rec(f"T{n}", apply_T(ctx, n, 1, f) - other * cN)
        for i in range(1, n):
            pair = tau[i - 1:i + 1]
            if pair in ((0, 0), (1, 1)):
                rec(f"T{i} equal pair", apply_T(ctx, i, 1, f) - f * pp.t_half)
            elif pair == (1, 0):
                swapped = tau[:i - 1] + (0, 1) + tau[i + 1:]
                rec(f"T{i} particle-hole", apply_T(ctx, i, 1, f) - comps[_tau_index(swapped)] * c01)
    return report


def evaluator(comps):
    """Callable x -> component values for a list of Laurent polynomials."""
    return lambda x: [c.evaluate(tuple(x)) for c in comps]


def gc_image(pp, n, vec):
    """U_GC applied to a component list."""
    d = gc_diagonal(pp, n)
    return [di * v for di, v in zip(d, vec)]


def left_normalisation_ratios(pp, n, m, points):
    """<1|U_GC Phi^(m)(x)> / P_(m^N)(x) at each point, from the exact left
    state.  The ratio is x-independent; its value has no closed form here."""
    from .koornwinder import symmetric_P
    ctx = HeckeContext(pp.with_(xi=pp.s ** m), n)
    left = oracle_state(ctx, m, "left")
    Z = sum((c * g for c, g in zip(left, gc_diagonal(pp, n))), left[0] * 0)
    P = symmetric_P(HeckeContext(pp, n), m).poly
    return [Z.evaluate(tuple(x)) / P.evaluate(tuple(x)) for x in points]
