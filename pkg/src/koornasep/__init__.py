"""Koornwinder polynomials, matrix-product states and the open ASEP."""

from .errors import (ConvergenceError, DegenerateParametersError, DomainError,
                     InternalConsistencyError, KoornasepError, RangeError, TruncationError)
from .params import ALTERNATE, DEFAULT, PHYSICAL, ParameterPoint, load_params, parse_params

__version__ = "0.1.0"

__all__ = [
    "ParameterPoint", "parse_params", "load_params", "DEFAULT", "ALTERNATE", "PHYSICAL",
    "KoornasepError", "DomainError", "InternalConsistencyError", "DegenerateParametersError",
    "TruncationError", "ConvergenceError", "RangeError",
]
