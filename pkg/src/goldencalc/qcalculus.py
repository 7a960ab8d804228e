"""The k-th Golden derivative and the polynomial calculus built on it.

For polynomials everything is exact over Q(sqrt 5)(i): the derivative acts on
monomials by ``D x^n = F_n^(k) x^(n-1)``.  Black-box numeric functions use the
difference quotient

    D f(x) = (f(phi^k x) - f(phi'^k x)) / ((phi^k - phi'^k) x)

evaluated with mpmath.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import mpmath

from .errors import EvaluationAtZero, check_order
from .goldenfield import ComplexQuadratic, golden_power, silver_power, to_real
from .sequences import fib_divisor, fib_divisor_factorial

__all__ = [
    "GoldenPolynomial",
    "NumericFunction",
    "golden_derivative_poly",
    "golden_derivative_fn",
    "golden_binomial",
    "golden_binomial_expansion",
    "golden_taylor",
    "taylor_resum",
    "golden_translate",
    "exp_sign",
]

_CZ = ComplexQuadratic.ZERO


def _cq(v) -> ComplexQuadratic:
    return ComplexQuadratic.coerce(v)


class GoldenPolynomial:
    """Polynomial with ComplexQuadratic coefficients, ``coeffs[n]`` multiplies x^n.

    Trailing zeros are stripped.  The zero polynomial has an empty coefficient
    list and ``degree`` 0.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_cq(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenPolynomial is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> "GoldenPolynomial":
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> "GoldenPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> ComplexQuadratic:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else _CZ

    def __eq__(self, other):
        if isinstance(other, GoldenPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, GoldenPolynomial):
            other = GoldenPolynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return GoldenPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return GoldenPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, GoldenPolynomial):
            other = GoldenPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return GoldenPolynomial([other]) - self

    def __mul__(self, other):
        if not isinstance(other, GoldenPolynomial):
            c = _cq(other)
            return GoldenPolynomial(a * c for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return GoldenPolynomial()
        out = [_CZ] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return GoldenPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GoldenPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def scale_argument(self, s) -> "GoldenPolynomial":
        """p(s*x) for an exact scalar s."""
        s = _cq(s)
        out, sp = [], ComplexQuadratic.ONE
        for c in self.coeffs:
            out.append(c * sp)
            sp = sp * s
        return GoldenPolynomial(out)

    def __call__(self, x):
        """Exact Horner evaluation at an exact point."""
        x = _cq(x)
        acc = _CZ
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate(self, z, precision_bits: int = 53):
        """Numeric evaluation at an mpmath point."""
        with mpmath.workprec(precision_bits + 16):
            cs = [c.to_complex(precision_bits + 16) for c in self.coeffs]
            acc = mpmath.mpc(0)
            for c in reversed(cs):
                acc = acc * z + c
        with mpmath.workprec(precision_bits):
            return +acc

    def __repr__(self):
        terms = [f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "GoldenPolynomial(" + (" + ".join(terms) or "0") + ")"


@dataclass(frozen=True)
class NumericFunction:
    """A deterministic black-box map from mpc to mpc.

    ``evaluator`` is called inside the caller's working precision and must
    not depend on anything other than its argument and that precision.
    """

    evaluator: Callable = field(compare=False)
    label: str = "f"

    def __call__(self, z):
        return self.evaluator(z)


def golden_derivative_poly(k: int, p: GoldenPolynomial) -> GoldenPolynomial:
    """Exact k-th Golden derivative: x^n -> F_n^(k) x^(n-1)."""
    check_order(k)
    return GoldenPolynomial(
        p.coeffs[n] * fib_divisor(n, k) for n in range(1, len(p.coeffs))
    )


def golden_derivative_fn(k: int, f: NumericFunction, x, precision_bits: int = 53):
    """Numeric k-th Golden derivative of ``f`` at ``x`` (``x != 0``)."""
    check_order(k)
    guard = 24
    with mpmath.workprec(precision_bits + guard):
        x = mpmath.mpmathify(x)
        if x == 0:
            raise EvaluationAtZero("the Golden difference quotient divides by x")
        pk = to_real(golden_power(k), precision_bits + guard)
        qk = to_real(silver_power(k), precision_bits + guard)
        value = (f(pk * x) - f(qk * x)) / ((pk - qk) * x)
    with mpmath.workprec(precision_bits):
        return +value


def exp_sign(k: int, m: int) -> int:
    """(-1)^(k m (m-1)/2), the sign pattern of the big exponential E_F."""
    return -1 if (k * (m * (m - 1) // 2)) % 2 else 1


def golden_binomial(k: int, n: int, a, sign: str = "-") -> GoldenPolynomial:
    """k-th Golden binomial (x - a)^n_F (or (x + a)^n_F for ``sign='+'``).

    Product of the n factors x - phi^(k(n-1-j)) phi'^(kj) a, j = 0..n-1.
    """
    check_order(k)
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    a = _cq(a)
    if sign == "+":
        a = -a
    out = GoldenPolynomial([1])
    for j in range(n):
        root = a * (golden_power(k * (n - 1 - j)) * silver_power(k * j))
        out = out * GoldenPolynomial([-root, 1])
    return out


def golden_binomial_expansion(k: int, n: int, y) -> GoldenPolynomial:
    """(x + y)^n_F from the Fibonomial expansion, independent of the product."""
    from .sequences import fibonomial

    check_order(k)
    y = _cq(y)
    coeffs = [_CZ] * (n + 1)
    yp = ComplexQuadratic.ONE
    for m in range(n + 1):
        coeffs[n - m] = yp * (fibonomial(n, m, k) * exp_sign(k, m))
        yp = yp * y
    return GoldenPolynomial(coeffs)


def golden_taylor(k: int, p: GoldenPolynomial) -> list[ComplexQuadratic]:
    """Taylor data c_n = (D^n p)(0), so p(x) = sum c_n x^n / F_n^(k)!."""
    check_order(k)
    out = []
    q = p
    for _ in range(p.degree + 1):
        out.append(q.coeff(0))
        q = golden_derivative_poly(k, q)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def taylor_resum(k: int, coeffs: Sequence) -> GoldenPolynomial:
    """Rebuild sum c_n x^n / F_n^(k)! from Taylor data."""
    check_order(k)
    return GoldenPolynomial(
        _cq(c) / fib_divisor_factorial(n, k) for n, c in enumerate(coeffs)
    )


def golden_translate(k: int, p: GoldenPolynomial, y) -> GoldenPolynomial:
    """Translation operator E_F^{y D} applied to p as a finite operator sum.

    sum_{m=0}^{deg p} (-1)^(k m(m-1)/2) y^m / F_m^(k)! * D^m p; terminates
    because D lowers degree.  Sends x^n to (x + y)^n_F.
    """
    check_order(k)
    y = _cq(y)
    out = GoldenPolynomial()
    term = p
    yp = ComplexQuadratic.ONE
    for m in range(p.degree + 1):
        if term.is_zero():
            break
        scale = yp * exp_sign(k, m) / fib_divisor_factorial(m, k)
        out = out + term * scale
        term = golden_derivative_poly(k, term)
        yp = yp * y
    return out
