"""Sparse multivariate Laurent polynomials over an exact field.

Coefficients are :class:`fractions.Fraction` in exact mode; any type closed
under ``+ - * /`` (``mpmath.mpf`` in numeric mode) also works.  Variables
are indexed from 0 here, so ``x[0]`` is x_1.
"""

from fractions import Fraction
import json

from .errors import DomainError, InternalConsistencyError


def _is_zero(c):
    return c == 0


class LaurentPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for nvars={nvars}")
                if not _is_zero(c):
                    clean[e] = c
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, i, nvars, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    # basic queries

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}"
                for i, k in enumerate(e) if k != 0)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), 0)

    def items(self):
        """Terms in deterministic (lexicographic) exponent order."""
        return sorted(self.terms.items())

    def degree_box(self):
        """Per-variable (min, max) exponents; None for the zero polynomial."""
        if not self.terms:
            return None
        cols = list(zip(*self.terms))
        return [(min(c), max(c)) for c in cols]

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == LaurentPolynomial.constant(other, self.nvars)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # ring operations

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("nvars mismatch")
            return other
        return LaurentPolynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if _is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        return LaurentPolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        if _is_zero(c):
            return LaurentPolynomial(self.nvars)
        return LaurentPolynomial(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("nvars mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, LaurentPolynomial):
            raise TypeError("use div_exact for polynomial division")
        return self.scale(1 / Fraction(c) if isinstance(c, int) else 1 / c)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers only for monomials; use invert")
        out = LaurentPolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def map_coeffs(self, fn):
        return LaurentPolynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # substitutions

    def _map_exps(self, fn, coeff_fn=None):
        out = {}
        for e, c in self.terms.items():
            ne = fn(e)
            if coeff_fn is not None:
                c = c * coeff_fn(e)
            out[ne] = out.get(ne, 0) + c
        return LaurentPolynomial(self.nvars, out)

    def swap(self, i, j):
        """x_i <-> x_j."""
        self._check_index(i)
        self._check_index(j)

        def f(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return tuple(e)
        return self._map_exps(f)

    def invert(self, i):
        """x_i -> 1/x_i."""
        self._check_index(i)
        return self._map_exps(lambda e: e[:i] + (-e[i],) + e[i + 1:])

    def scale_var(self, i, c):
        """x_i -> c * x_i."""
        self._check_index(i)
        if _is_zero(c):
            raise ValueError("zero scale")
        return LaurentPolynomial(
            self.nvars, {e: v * c ** e[i] for e, v in self.terms.items()})

    def s0(self, s):
        """x_1 -> s / x_1 (the affine reflection)."""
        if _is_zero(s):
            raise ValueError("zero scale")
        return LaurentPolynomial(
            self.nvars,
            {(-e[0],) + e[1:]: v * s ** e[0] for e, v in self.terms.items()})

    def invert_all(self):
        return self._map_exps(lambda e: tuple(-k for k in e))

    def shift(self, exp):
        """Multiply by the monomial x^exp."""
        return self._map_exps(lambda e: tuple(a + b for a, b in zip(e, exp)))

    def substitute(self, action, *args):
        """Dispatch on an action name: ``swap(i, j)``, ``invert(i)``,
        ``scale(i, c)`` or ``s0(s)``."""
        table = {"swap": self.swap, "invert": self.invert,
                 "scale": self.scale_var, "s0": self.s0}
        try:
            fn = table[action]
        except KeyError:
            raise ValueError(f"unknown substitution {action!r}") from None
        return fn(*args)

    def _check_index(self, i):
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")

    # evaluation

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        for v in point:
            if _is_zero(v):
                raise DomainError("Laurent polynomial evaluated at a zero coordinate")
        cache = [dict() for _ in point]

        def pw(i, k):
            d = cache[i]
            if k not in d:
                x = point[i]
                d[k] = x ** k if k >= 0 else 1 / (x ** -k)
            return d[k]

        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = total + term
        return total

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    # division

    def div_exact(self, divisor, var):
        """Exact quotient by ``divisor``, which must be a polynomial in
        ``x[var]`` (non-negative powers) with leading coefficient 1; the
        other variables may appear in lower coefficients.  Raises
        :class:`InternalConsistencyError` on a nonzero remainder."""
        if divisor.nvars != self.nvars:
            raise ValueError("nvars mismatch")
        dparts = _split(divisor, var)
        if not dparts or min(dparts) < 0:
            raise ValueError("divisor must be a polynomial in the division variable")
        ddeg = max(dparts)
        lead = dparts[ddeg]
        if lead != {(0,) * self.nvars: 1}:
            raise ValueError("divisor must be monic in the division variable")
        if not self.terms:
            return LaurentPolynomial(self.nvars)
        rem = _split(self, var)
        lo = min(rem)
        quot = {}
        while rem and max(rem) - lo >= ddeg:
            top = max(rem)
            q = rem.pop(top)
            qdeg = top - ddeg
            quot[qdeg] = q
            for k, dc in dparts.items():
                if k == ddeg:
                    continue
                tgt = rem.setdefault(qdeg + k, {})
                for e1, c1 in q.items():
                    for e2, c2 in dc.items():
                        e = tuple(a + b for a, b in zip(e1, e2))
                        v = tgt.get(e, 0) - c1 * c2
                        if _is_zero(v):
                            tgt.pop(e, None)
                        else:
                            tgt[e] = v
                if not tgt:
                    del rem[qdeg + k]
        if rem:
            raise InternalConsistencyError(
                f"inexact Laurent division: remainder has {sum(map(len, rem.values()))} terms")
        return _join(quot, var, self.nvars)

    # serialisation

    def to_json_obj(self):
        terms = []
        for e, c in self.items():
            if isinstance(c, (int, Fraction)):
                c = Fraction(c)
                terms.append({"exp": list(e), "num": str(c.numerator),
                              "den": str(c.denominator)})
            else:
                terms.append({"exp": list(e), "value": str(c)})
        return {"nvars": self.nvars, "terms": terms}

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        terms = {}
        for t in obj["terms"]:
            if "num" in t:
                c = Fraction(int(t["num"]), int(t["den"]))
            else:
                import mpmath
                c = mpmath.mpf(t["value"])
            terms[tuple(t["exp"])] = c
        return cls(obj["nvars"], terms)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def _split(poly, var):
    """Group terms by the power of ``x[var]``; the var slot is zeroed."""
    out = {}
    for e, c in poly.terms.items():
        k = e[var]
        rest = e[:var] + (0,) + e[var + 1:]
        out.setdefault(k, {})[rest] = c
    return out


def _join(parts, var, nvars):
    terms = {}
    for k, d in parts.items():
        for e, c in d.items():
            terms[e[:var] + (k,) + e[var + 1:]] = c
    return LaurentPolynomial(nvars, terms)


def orbit_sum(lam):
    """Sum of x^mu over the W0-orbit of the partition ``lam``."""
    from .compositions import is_partition, orbit
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    return LaurentPolynomial(len(lam), {mu: 1 for mu in orbit(lam)})
