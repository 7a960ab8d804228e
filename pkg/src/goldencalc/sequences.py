"""Fibonacci, Lucas and Fibonacci-divisor numbers, factorials and Fibonomials.

All values are Python ints.  ``fib_divisor(n, k)`` is F_{nk}/F_k, computed by
the three-term recurrence with Lucas coefficient and extended to negative
``n`` and ``k`` by the sign rules

    F_{-n}^(k)  = (-1)^(kn+1)   F_n^(k)
    F_n^(-k)    = (-1)^((n+1)k) F_n^(k)
    F_{-n}^(-k) = (-1)^(k+1)    F_n^(k)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import IndexOutOfRange, NegativeIndex, check_order

__all__ = [
    "SequenceQuery",
    "fibonacci",
    "lucas",
    "fib_divisor",
    "fib_divisor_row",
    "fib_divisor_factorial",
    "mod_k_factorial",
    "mod_k_fibonacci_factorial",
    "fibonomial",
]


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) for n >= 0 by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fibonacci(n: int) -> int:
    """F_n for any integer n, with F_{-n} = (-1)^(n+1) F_n."""
    if n >= 0:
        return _fib_pair(n)[0]
    return _sign(-n + 1) * _fib_pair(-n)[0]


def lucas(k: int) -> int:
    """L_k = F_{k-1} + F_{k+1}, with L_{-k} = (-1)^k L_k."""
    m = abs(k)
    f, g = _fib_pair(m)
    value = 2 * g - f
    return value if k >= 0 else _sign(m) * value


@dataclass(frozen=True)
class SequenceQuery:
    """An index pair (n, k) for F_n^(k); k = 0 is rejected."""

    n: int
    k: int

    def __post_init__(self):
        check_order(self.k)

    def evaluate(self) -> int:
        return fib_divisor(self.n, self.k)


@lru_cache(maxsize=256)
def _positive_row(k: int, upto: int) -> tuple[int, ...]:
    # F_0^(k) .. F_upto^(k) for k > 0 via F_{n+1} = L_k F_n + (-1)^(k-1) F_{n-1}
    lk = lucas(k)
    s = _sign(k - 1)
    row = [0, 1]
    for _ in range(upto - 1):
        row.append(lk * row[-1] + s * row[-2])
    return tuple(row[: upto + 1])


def _row_for(k: int, n: int) -> tuple[int, ...]:
    # round the cache key up so neighbouring queries share rows
    upto = max(8, 1 << max(n, 1).bit_length())
    return _positive_row(k, upto)


def fib_divisor(n: int, k: int) -> int:
    """F_n^(k) = F_{nk} / F_k for any integers n and k != 0."""
    check_order(k)
    if k < 0:
        if n < 0:
            return _sign(-k + 1) * fib_divisor(-n, -k)
        return _sign((n + 1) * -k) * fib_divisor(n, -k)
    if n < 0:
        return _sign(k * -n + 1) * fib_divisor(-n, k)
    return _row_for(k, n)[n]


def fib_divisor_row(k: int, n_max: int) -> list[int]:
    """[F_0^(k), ..., F_{n_max}^(k)]."""
    check_order(k)
    if k > 0:
        return list(_row_for(k, n_max)[: n_max + 1])
    return [fib_divisor(n, k) for n in range(n_max + 1)]


def _check_factorial_args(n: int, k: int) -> None:
    check_order(k)
    if n < 0:
        raise NegativeIndex("factorial index must be nonnegative")


def fib_divisor_factorial(n: int, k: int) -> int:
    """F_n^(k)! = F_1^(k) F_2^(k) ... F_n^(k); the empty product is 1."""
    _check_factorial_args(n, k)
    out = 1
    for v in fib_divisor_row(k, n)[1:]:
        out *= v
    return out


def mod_k_factorial(n: int, k: int) -> int:
    """n!_{mod k} = k * 2k * ... * nk = n! k^n."""
    _check_factorial_args(n, k)
    out = 1
    for s in range(1, n + 1):
        out *= s * k
    return out


def mod_k_fibonacci_factorial(n: int, k: int) -> int:
    """F_n!_{mod k} = F_k F_{2k} ... F_{nk}."""
    _check_factorial_args(n, k)
    out = 1
    for s in range(1, n + 1):
        out *= fibonacci(s * k)
    return out


def fibonomial(n: int, m: int, k: int) -> int:
    """k-th Fibonomial F_n^(k)! / (F_m^(k)! F_{n-m}^(k)!), checked integral."""
    check_order(k)
    if n < 0 or m < 0:
        raise NegativeIndex("Fibonomial indices must be nonnegative")
    if m > n:
        raise IndexOutOfRange(f"m={m} exceeds n={n}")
    m = min(m, n - m)
    row = fib_divisor_row(k, n)
    num = 1
    for v in row[n - m + 1 : n + 1]:
        num *= v
    den = 1
    for v in row[1 : m + 1]:
        den *= v
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"Fibonomial ({n},{m};k={k}) is not integral")
    return q
