"""Noumi's polynomial representation of the affine Hecke algebra of type C_N.

Operators are indexed from 0 to N: ``T_0`` acts on ``x_1`` through the affine
reflection ``x_1 -> s/x_1``, ``T_i`` (1 <= i < N) swaps ``x_i, x_{i+1}`` and
``T_N`` inverts ``x_N``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import random

from .laurent import LaurentPolynomial


@dataclass
class HeckeContext:
    params: object
    nvars: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need N >= 1")

    def _poly(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def var(self, i, power=1):
        """x_i, 1-based."""
        return LaurentPolynomial.variable(i - 1, self.nvars, power)

    def one(self):
        return LaurentPolynomial.constant(Fraction(1), self.nvars)


def _check_poly(ctx, f):
    if f.nvars != ctx.nvars:
        raise ValueError(f"polynomial has {f.nvars} variables, context has {ctx.nvars}")


def apply_T(ctx, i, sign, f):
    """T_i^{sign} f for i in 0..N, sign = +1 or -1."""
    _check_poly(ctx, f)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n, pp = ctx.nvars, ctx.params
    if i == 0:
        h = pp.t0_half
        diff = f - f.s0(pp.s)
        den = ctx._poly("den0", lambda: ctx.var(1, 2) - pp.s)
        num = ctx._poly("num0", lambda: (ctx.var(1) - pp.a) * (ctx.var(1) - pp.b) * (-1 / h))
        q = diff.div_exact(den, 0)
        base = h if sign == 1 else 1 / h
        return f * base + num * q
    if i == n:
        h = pp.tN_half
        diff = f - f.invert(n - 1)
        den = ctx._poly("denN", lambda: ctx.var(n, 2) - 1)
        num = ctx._poly("numN", lambda: (ctx.var(n) * pp.c - 1) * (ctx.var(n) * pp.d - 1) * (1 / h))
        q = diff.div_exact(den, n - 1)
        base = h if sign == 1 else 1 / h
        return f * base + num * q
    if not 1 <= i < n:
        raise IndexError(f"T_{i} undefined for N={n}")
    h = pp.t_half
    diff = f - f.swap(i - 1, i)
    den = ctx._poly(("den", i), lambda: ctx.var(i) - ctx.var(i + 1))
    num = ctx._poly(("num", i), lambda: (ctx.var(i) * h - ctx.var(i + 1) * (1 / h)) * -1)
    q = diff.div_exact(den, i - 1)
    base = h if sign == 1 else 1 / h
    return f * base + num * q


def y_word(n, i):
    """Y_i as a list of (index, sign), leftmost factor first."""
    if not 1 <= i <= n:
        raise IndexError(f"Y_{i} undefined for N={n}")
    word = [(k, 1) for k in range(i, n)]
    word += [(k, 1) for k in range(n, -1, -1)]
    word += [(k, -1) for k in range(1, i)]
    return word


def apply_word(ctx, word, f):
    for k, sign in reversed(word):
        f = apply_T(ctx, k, sign, f)
    return f


def apply_Y(ctx, i, f):
    return apply_word(ctx, y_word(ctx.nvars, i), f)


def random_laurent(nvars, rng, nterms=4, span=2, denom=7):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-span, span) for _ in range(nvars))
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, denom))
    f = LaurentPolynomial(nvars, terms)
    return f if f else LaurentPolynomial.constant(Fraction(1), nvars)


def residual_size(f):
    """Largest |coefficient| of a polynomial (0 iff it is identically zero)."""
    return max((abs(c) for c in f.terms.values()), default=Fraction(0))


def check_hecke_relations(ctx, trials=5, seed=0):
    """Quadratic, inverse, braid and commutation relations (and commutativity
    of the Y_i) on random polynomials.  Returns {relation: max residual}."""
    rng = random.Random(seed)
    n, pp = ctx.nvars, ctx.params
    halves = {0: pp.t0_half, n: pp.tN_half}
    report = {}

    def T(i, f, sign=1):
        return apply_T(ctx, i, sign, f)

    def record(name, res):
        report[name] = max(report.get(name, Fraction(0)), residual_size(res))

    gens = range(n + 1)
    for _ in range(trials):
        f = random_laurent(n, rng)
        for i in gens:
            h = halves.get(i, pp.t_half)
            tf = T(i, f)
            record(f"quadratic T{i}", T(i, tf) + tf * (1 / h - h) - f)
            record(f"inverse T{i}", T(i, T(i, f, -1)) - f)
        if n >= 2:
            record("braid T1T0T1T0", T(1, T(0, T(1, T(0, f)))) - T(0, T(1, T(0, T(1, f)))))
            record(f"braid T{n}T{n - 1}T{n}T{n - 1}",
                   T(n, T(n - 1, T(n, T(n - 1, f)))) - T(n - 1, T(n, T(n - 1, T(n, f)))))
        for i in range(1, n - 1):
            record(f"braid T{i}T{i + 1}T{i}",
                   T(i, T(i + 1, T(i, f))) - T(i + 1, T(i, T(i + 1, f))))
        for i in gens:
            for j in gens:
                if j >= i + 2:
                    record(f"commute T{i}T{j}", T(i, T(j, f)) - T(j, T(i, f)))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                record(f"commute Y{i}Y{j}",
                       apply_Y(ctx, i, apply_Y(ctx, j, f)) - apply_Y(ctx, j, apply_Y(ctx, i, f)))
    return report
