"""Model parameters: the six Hecke square-root parameters, the fugacity, and
the ASEP rates derived from them (or vice versa)."""

from dataclasses import dataclass, replace, fields
from fractions import Fraction
from math import isqrt


def exact_sqrt(x):
    """Square root of a non-negative rational, or ValueError if irrational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"negative argument {x}")
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise ValueError(
            f"sqrt({x}) is irrational; choose rates whose ratios are perfect squares")
    return Fraction(rn, rd)


def positive_half_root(r):
    """The positive solution u of u - 1/u = r, i.e. (r + sqrt(r^2 + 4)) / 2."""
    r = Fraction(r)
    return (r + exact_sqrt(r * r + 4)) / 2


def to_mpf(x):
    import mpmath
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def parse_rational(text):
    return Fraction(text.strip())


@dataclass(frozen=True)
class ParameterPoint:
    """Exact values of s^1/2, t^1/2, t0^1/2, u0^1/2, tN^1/2, uN^1/2 and xi.

    The rates are derived with the time scale fixed by ``q_rate``.  Any of
    the half parameters may be replaced by an ``mpmath.mpf`` for numeric
    work (e.g. ``s = xi**(1/m)``).
    """
    s_half: object
    t_half: object
    t0_half: object
    u0_half: object
    tN_half: object
    uN_half: object
    xi: object = Fraction(1)
    q_rate: object = Fraction(1)

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, (int, str)):
                object.__setattr__(self, f.name, Fraction(v))
        for name in ("s_half", "t_half", "t0_half", "u0_half", "tN_half", "uN_half"):
            if getattr(self, name) == 0:
                raise ValueError(f"{name} must be nonzero")
        if self.t_half ** 2 == 1:
            raise ValueError("t = 1 leaves the boundary rates undetermined")

    # Hecke parameters

    @property
    def s(self):
        return self.s_half ** 2

    @property
    def t(self):
        return self.t_half ** 2

    @property
    def t0(self):
        return self.t0_half ** 2

    @property
    def tN(self):
        return self.tN_half ** 2

    @property
    def u0(self):
        return self.u0_half ** 2

    @property
    def uN(self):
        return self.uN_half ** 2

    @property
    def r0(self):
        """u0^1/2 - u0^-1/2."""
        return self.u0_half - 1 / self.u0_half

    @property
    def rN(self):
        return self.uN_half - 1 / self.uN_half

    # Noumi parameters

    @property
    def a(self):
        return self.s_half * self.t0_half * self.u0_half

    @property
    def b(self):
        return -self.s_half * self.t0_half / self.u0_half

    @property
    def c(self):
        return self.tN_half * self.uN_half

    @property
    def d(self):
        return -self.tN_half / self.uN_half

    # ASEP rates

    @property
    def q(self):
        return self.q_rate

    @property
    def p(self):
        return self.t * self.q_rate

    @property
    def kappa0(self):
        """sqrt(alpha*gamma), signed so that the derivative identities for
        the boundary matrices hold also off the physical region."""
        return (self.q - self.p) / (1 / self.t0_half - self.t0_half - self.r0)

    @property
    def kappaN(self):
        return (self.q - self.p) / (1 / self.tN_half - self.tN_half - self.rN)

    @property
    def kappa_bulk(self):
        """sqrt(p*q)."""
        return self.q_rate * self.t_half

    @property
    def alpha(self):
        return self.kappa0 * self.t0_half

    @property
    def gamma(self):
        return self.kappa0 / self.t0_half

    @property
    def beta(self):
        return self.kappaN * self.tN_half

    @property
    def delta(self):
        return self.kappaN / self.tN_half

    def rates(self):
        return {"p": self.p, "q": self.q, "alpha": self.alpha, "beta": self.beta,
                "gamma": self.gamma, "delta": self.delta}

    @property
    def is_physical(self):
        return all(v > 0 for v in self.rates().values()) and self.t_half > 0 \
            and self.t0_half > 0 and self.tN_half > 0

    # symmetries

    def gc_factor(self, n):
        """t0^-1 tN^-1 t^-(N-1); the Gallavotti-Cohen map is xi -> factor/xi."""
        return 1 / (self.t0 * self.tN * self.t ** (n - 1))

    def xi_prime(self, n, xi=None):
        xi = self.xi if xi is None else xi
        return self.gc_factor(n) / xi

    def with_(self, **kw):
        return replace(self, **kw)

    def to_mpf(self):
        """Copy with every field converted to mpmath.mpf at the current
        working precision (mixed Fraction/mpf arithmetic is not closed)."""
        return replace(self, **{f.name: to_mpf(getattr(self, f.name)) for f in fields(self)})

    # construction from rates

    @classmethod
    def from_rates(cls, p, q, alpha, beta, gamma, delta, s_half=1, xi=1):
        p, q, alpha, beta, gamma, delta = map(Fraction, (p, q, alpha, beta, gamma, delta))
        for name, v in zip("p q alpha beta gamma delta".split(),
                           (p, q, alpha, beta, gamma, delta)):
            if v <= 0:
                raise ValueError(f"rate {name} must be positive")
        t_half = exact_sqrt(p / q)
        t0_half = exact_sqrt(alpha / gamma)
        tN_half = exact_sqrt(beta / delta)
        r0 = (p - q + gamma - alpha) / exact_sqrt(alpha * gamma)
        rN = (p - q + delta - beta) / exact_sqrt(beta * delta)
        return cls(Fraction(s_half), t_half, t0_half, positive_half_root(r0),
                   tN_half, positive_half_root(rN), Fraction(xi), q)

    def to_dict(self):
        return {f.name: str(getattr(self, f.name)) for f in fields(self)}


_FILE_KEYS = {"s_half", "t_half", "t0_half", "u0_half", "tN_half", "uN_half", "xi"}
_RATE_KEYS = {"p", "q", "alpha", "beta", "gamma", "delta"}


def parse_params(text):
    """Parse flat ``key=value`` text (``#`` comments allowed)."""
    kv = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad parameter line: {line!r}")
        k, v = (part.strip() for part in line.split("=", 1))
        kv[k] = parse_rational(v)
    unknown = set(kv) - _FILE_KEYS - _RATE_KEYS
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    if _RATE_KEYS <= set(kv):
        return ParameterPoint.from_rates(
            *(kv[k] for k in ("p", "q", "alpha", "beta", "gamma", "delta")),
            s_half=kv.get("s_half", 1), xi=kv.get("xi", 1))
    missing = (_FILE_KEYS - {"xi"}) - set(kv)
    if missing:
        raise ValueError(f"missing keys: {sorted(missing)}")
    return ParameterPoint(kv["s_half"], kv["t_half"], kv["t0_half"], kv["u0_half"],
                          kv["tN_half"], kv["uN_half"], kv.get("xi", Fraction(1)))


def load_params(path):
    with open(path) as fh:
        return parse_params(fh.read())


def format_params(pp):
    return "".join(f"{k} = {getattr(pp, k)}\n" for k in
                   ("s_half", "t_half", "t0_half", "u0_half", "tN_half", "uN_half", "xi"))


F = Fraction

# generic point for exact identity checks; not physical (alpha < 0)
DEFAULT = ParameterPoint(F(4, 9), F(2, 3), F(3, 5), F(7, 4), F(5, 7), F(9, 5))

# a second generic point, used to double the coverage of exact identities
ALTERNATE = ParameterPoint(F(3, 7), F(5, 4), F(2, 3), F(11, 6), F(4, 5), F(8, 3))

# all six rates positive (p = 4/9, q = 1); used wherever a positive
# stationary measure matters, e.g. the large-m current statistics
PHYSICAL = ParameterPoint(F(4, 9), F(2, 3), F(1, 2), F(5, 4), F(2, 3), F(4, 3))
