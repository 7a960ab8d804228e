"""Exact arithmetic in Q(sqrt 5) and its complexification Q(sqrt 5)(i).

Every golden-ratio quantity (phi, phi', their powers, Binet quotients) is held
symbolically as ``a + b*sqrt(5)`` with rational ``a, b``, so identities become
structural equalities.  Floats appear only through :func:`to_real`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import DivisionByZero, PrecisionUnachievable

__all__ = [
    "QuadraticNumber",
    "ComplexQuadratic",
    "PHI",
    "PHI_BAR",
    "SQRT5",
    "field_ops",
    "power",
    "conjugate",
    "to_real",
    "golden_power",
    "silver_power",
]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


class QuadraticNumber:
    """Immutable element ``a + b*sqrt(5)`` of Q(sqrt 5).

    Components are :class:`fractions.Fraction`, which already keeps lowest
    terms with a positive denominator, so ``==`` is mathematical equality.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @classmethod
    def coerce(cls, v) -> "QuadraticNumber":
        if isinstance(v, QuadraticNumber):
            return v
        return cls(_frac(v), 0)

    # -- structure -----------------------------------------------------------
    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 5 b^2 = x * conjugate(x)."""
        return self.a * self.a - 5 * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        try:
            o = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        try:
            o = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, QuadraticNumber):
            a, b, c, d = self.a, self.b, other.a, other.b
            return QuadraticNumber(a * c + 5 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            # the norm vanishes only at 0 since sqrt(5) is irrational
            raise DivisionByZero("division by zero in Q(sqrt 5)")
        return QuadraticNumber(self.a / n, -self.b / n)

    def __truediv__(self, other):
        try:
            o = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        return power(self, n)

    # -- ordering via the real embedding (exact) ------------------------------
    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(5), decided exactly."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with 5 b^2
        lead = 1 if a > 0 else -1
        diff = a * a - 5 * b * b
        return lead if diff > 0 else -lead

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- text ----------------------------------------------------------------
    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt5"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt5"

    _PARSE = re.compile(
        r"^\s*(?:(?P<a>[+-]?\d+(?:/\d+)?)(?=\s*(?:[+-]|$)))?\s*"
        r"(?:(?P<b>[+-]?\s*\d+(?:/\d+)?)\*sqrt5)?\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> "QuadraticNumber":
        """Inverse of ``str``: accepts ``"3"``, ``"-1/2"``, ``"1/2+1/2*sqrt5"``."""
        m = cls._PARSE.match(text)
        if not m or (m.group("a") is None and m.group("b") is None):
            raise ValueError(f"cannot parse {text!r} as a + b*sqrt5")
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(m.group("b").replace(" ", "")) if m.group("b") else Fraction(0)
        return cls(a, b)

    def to_real(self, precision_bits: int = 53):
        return to_real(self, precision_bits)


ZERO = QuadraticNumber(0)
ONE = QuadraticNumber(1)
SQRT5 = QuadraticNumber(0, 1)
PHI = QuadraticNumber(Fraction(1, 2), Fraction(1, 2))
PHI_BAR = QuadraticNumber(Fraction(1, 2), Fraction(-1, 2))


def field_ops(x: QuadraticNumber, y: QuadraticNumber, op: str) -> QuadraticNumber:
    """Apply ``op`` in {"add", "sub", "mul", "div"} exactly."""
    x, y = QuadraticNumber.coerce(x), QuadraticNumber.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation {op!r}")


def power(x, n: int):
    """Exact ``x**n`` by binary exponentiation; negative ``n`` inverts first.

    Works for :class:`QuadraticNumber` and :class:`ComplexQuadratic`.
    """
    if not isinstance(x, (QuadraticNumber, ComplexQuadratic)):
        x = QuadraticNumber.coerce(x)
    one = ComplexQuadratic.ONE if isinstance(x, ComplexQuadratic) else ONE
    if n < 0:
        if not x:
            raise DivisionByZero("zero raised to a negative power")
        x, n = x.inverse(), -n
    result = one
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


_GOLDEN_CACHE: dict[int, QuadraticNumber] = {}


def golden_power(n: int) -> QuadraticNumber:
    """phi**n, memoized (values are immutable so sharing is safe)."""
    v = _GOLDEN_CACHE.get(n)
    if v is None:
        v = power(PHI, n)
        if len(_GOLDEN_CACHE) < 4096:
            _GOLDEN_CACHE[n] = v
    return v


def silver_power(n: int) -> QuadraticNumber:
    """phi'**n, the Galois conjugate of phi**n."""
    return golden_power(n).conjugate()


def conjugate(x: QuadraticNumber) -> QuadraticNumber:
    """Galois conjugation sqrt5 -> -sqrt5 (maps phi to phi')."""
    return QuadraticNumber.coerce(x).conjugate()


def _mpf_from_fraction(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def to_real(x, precision_bits: int = 53):
    """Evaluate ``a + b*sqrt(5)`` as an mpmath real rounded to ``precision_bits``.

    When ``a`` and ``b*sqrt5`` have opposite signs the value is computed as
    ``norm / (a - b*sqrt5)`` so that no cancellation occurs.
    """
    if precision_bits < 32:
        raise PrecisionUnachievable("precision_bits must be at least 32")
    x = QuadraticNumber.coerce(x)
    with mpmath.workprec(precision_bits + 24):
        a = _mpf_from_fraction(x.a)
        if x.b == 0:
            v = a
        else:
            b = _mpf_from_fraction(x.b)
            s5 = mpmath.sqrt(5)
            if x.a == 0 or (x.a > 0) == (x.b > 0):
                v = a + b * s5
            else:
                v = _mpf_from_fraction(x.norm()) / (a - b * s5)
    with mpmath.workprec(precision_bits):
        return +v


class ComplexQuadratic:
    """Immutable ``re + i*im`` with ``re, im`` in Q(sqrt 5)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", QuadraticNumber.coerce(re))
        object.__setattr__(self, "im", QuadraticNumber.coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexQuadratic is immutable")

    @classmethod
    def coerce(cls, v) -> "ComplexQuadratic":
        if isinstance(v, ComplexQuadratic):
            return v
        return cls(QuadraticNumber.coerce(v), ZERO)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, ComplexQuadratic):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (QuadraticNumber, int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        try:
            o = ComplexQuadratic.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexQuadratic(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexQuadratic(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = ComplexQuadratic.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexQuadratic(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return ComplexQuadratic.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, ComplexQuadratic):
            a, b, c, d = self.re, self.im, other.re, other.im
            return ComplexQuadratic(a * c - b * d, a * d + b * c)
        try:
            o = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexQuadratic(self.re * o, self.im * o)

    __rmul__ = __mul__

    def conj(self) -> "ComplexQuadratic":
        """Complex conjugation i -> -i."""
        return ComplexQuadratic(self.re, -self.im)

    def galois(self) -> "ComplexQuadratic":
        """Galois conjugation sqrt5 -> -sqrt5 on both parts."""
        return ComplexQuadratic(self.re.conjugate(), self.im.conjugate())

    def abs2(self) -> QuadraticNumber:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ComplexQuadratic":
        n = self.abs2()
        if not n:
            raise DivisionByZero("division by zero in Q(sqrt 5)(i)")
        ninv = n.inverse()
        return ComplexQuadratic(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        try:
            o = ComplexQuadratic.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ComplexQuadratic.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        return power(self, n)

    def __repr__(self):
        return f"ComplexQuadratic({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re})+i*({self.im})"

    def to_complex(self, precision_bits: int = 53):
        re = to_real(self.re, precision_bits)
        im = to_real(self.im, precision_bits)
        with mpmath.workprec(precision_bits):
            return mpmath.mpc(re, im)


ComplexQuadratic.ZERO = ComplexQuadratic(0, 0)
ComplexQuadratic.ONE = ComplexQuadratic(1, 0)
ComplexQuadratic.I = ComplexQuadratic(0, 1)
