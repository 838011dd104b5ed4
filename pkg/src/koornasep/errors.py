class KoornasepError(Exception):
    pass


class DomainError(KoornasepError, ValueError):
    """An evaluation point hits a zero or a pole."""


class InternalConsistencyError(KoornasepError, ArithmeticError):
    """An identity that must hold by construction failed (a bug, not bad input)."""


class DegenerateParametersError(KoornasepError, ValueError):
    """Eigenvalue collision at the chosen parameter point; pick another point."""


class TruncationError(KoornasepError):
    """Fock-space truncation error exceeds the requested tolerance."""


class ConvergenceError(KoornasepError):
    pass


class RangeError(KoornasepError, ValueError):
    pass
