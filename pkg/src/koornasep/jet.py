"""First-order jets: value plus derivative in one designated variable."""

from fractions import Fraction


class Jet:
    __slots__ = ("val", "der")

    def __init__(self, val, der=0):
        self.val = val
        self.der = der

    @classmethod
    def variable(cls, val):
        return cls(val, 1)

    def __repr__(self):
        return f"Jet({self.val}, {self.der})"

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Jet) else Jet(x, 0)

    def __add__(self, o):
        o = self._lift(o)
        return Jet(self.val + o.val, self.der + o.der)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.der)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Jet(self.val * o.val, self.val * o.der + self.der * o.val)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o.val == 0:
            raise ZeroDivisionError("jet division by a vanishing value")
        inv = 1 / o.val if not isinstance(o.val, int) else Fraction(1, o.val)
        return Jet(self.val * inv, (self.der * o.val - self.val * o.der) * inv * inv)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return 1 / (self ** -k)
        out = Jet(1, 0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        o = self._lift(o)
        return self.val == o.val and self.der == o.der

    def __ne__(self, o):
        return not self == o

    def __hash__(self):
        return hash((self.val, self.der))


def value(x):
    return x.val if isinstance(x, Jet) else x


def derivative(x):
    return x.der if isinstance(x, Jet) else 0
