"""Exact and arbitrary-precision calculus of Fibonacci divisors F_n^(k) = F_nk / F_k."""
from .errors import DomainError, PrecisionUnachievable
from .goldenfield import PHI, PHI_BAR, ComplexQuadratic, QuadraticNumber
from .sequences import fib_divisor, fibonacci, fibonomial, lucas

__version__ = "0.1.0"

__all__ = [
    "ComplexQuadratic",
    "DomainError",
    "PHI",
    "PHI_BAR",
    "PrecisionUnachievable",
    "QuadraticNumber",
    "fib_divisor",
    "fibonacci",
    "fibonomial",
    "lucas",
]
