"""Generating functions, Golden exponentials and identity checks.

Numeric series are summed with mpmath at a working precision that adds guard
bits for the largest term, so that cancellation in alternating sums does not
eat the requested precision.  Every numeric result carries a tail bound.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import mpmath

from .errors import PrecisionUnachievable, check_order
from .goldenfield import ComplexQuadratic, QuadraticNumber, golden_power, silver_power
from .qcalculus import exp_sign
from .sequences import fib_divisor, fib_divisor_factorial, fib_divisor_row, fibonacci, lucas

__all__ = [
    "TruncatedSeries",
    "IdentityReport",
    "ExpValue",
    "generating_coeffs",
    "golden_exp_series",
    "golden_exp_eval",
    "binomial_exp_sum",
    "entire_gf_residual",
    "identity_suite",
    "BivariatePolynomial",
    "complex_golden_binomial",
    "analytic_residuals",
    "EXPONENTIAL_VARIANTS",
]

EXPONENTIAL_VARIANTS = ("e", "E")


def generating_coeffs(k: int, N: int) -> list[int]:
    """Maclaurin coefficients 0..N of x / (1 - L_k x + (-1)^k x^2).

    Uses the recurrence read off the denominator, c_n = L_k c_{n-1} - (-1)^k c_{n-2}.
    """
    check_order(k)
    if N < 1:
        raise ValueError("N must be positive")
    lk = lucas(k)
    sk = -1 if k % 2 else 1
    c = [0, 1]
    for n in range(2, N + 1):
        c.append(lk * c[n - 1] - sk * c[n - 2])
    return c[: N + 1]


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients 0..N of a power series at a fixed binary precision."""

    coeffs: tuple
    truncation_order: int
    precision_bits: int

    def __post_init__(self):
        if len(self.coeffs) != self.truncation_order + 1:
            raise ValueError("coeffs must have length truncation_order + 1")

    def __call__(self, x):
        with mpmath.workprec(self.precision_bits):
            return mpmath.polyval(list(reversed(self.coeffs)), x)


def golden_exp_series(k: int, variant: str, N: int, precision_bits: int) -> TruncatedSeries:
    """Partial sum data for e_F (``variant='e'``) or E_F (``'E'``)."""
    check_order(k)
    if variant not in EXPONENTIAL_VARIANTS:
        raise ValueError("variant must be 'e' or 'E'")
    if N < 1:
        raise ValueError("N must be positive")
    row = fib_divisor_row(k, N)
    coeffs = []
    fact = 1
    with mpmath.workprec(precision_bits):
        for n in range(N + 1):
            if n:
                fact *= row[n]
            s = exp_sign(k, n) if variant == "E" else 1
            coeffs.append(mpmath.mpf(s) / fact)
    return TruncatedSeries(tuple(coeffs), N, precision_bits)


class ExpValue(NamedTuple):
    value: object
    tail_bound: object


def _golden_exp_tail(k: int, absx, N: int):
    """Bound on sum_{n>N} |x|^n / |F_n^(k)!| from the ratio |x| / |F_{N+1}^(k)|.

    |F_n^(k)| is nondecreasing in n >= 1, so later ratios are no larger.
    """
    f_next = abs(fib_divisor(N + 1, k))
    r = absx / f_next
    if r >= 1:
        return mpmath.inf
    last = absx**N / abs(fib_divisor_factorial(N, k))
    return last * r / (1 - r)


def golden_exp_eval(k: int, variant: str, x, N: int, precision_bits: int) -> ExpValue:
    """Order-N partial sum of e_F^x or E_F^x with its tail bound."""
    series = golden_exp_series(k, variant, N, precision_bits + 16)
    with mpmath.workprec(precision_bits + 16):
        x = mpmath.mpmathify(x)
        value = series(x)
        tail = _golden_exp_tail(k, abs(x), N)
    with mpmath.workprec(precision_bits):
        return ExpValue(+value, +tail)


def binomial_exp_sum(k: int, x, y, N: int, precision_bits: int):
    """sum_{n=0}^{N} (x + y)^n_F / F_n^(k)!, the expansion of e_F^x E_F^y.

    (x + y)^n_F is expanded by Fibonomials, so this is independent of the
    two exponential series.
    """
    from .sequences import fibonomial

    check_order(k)
    row = fib_divisor_row(k, N)
    with mpmath.workprec(precision_bits + 32):
        x, y = mpmath.mpmathify(x), mpmath.mpmathify(y)
        total = mpmath.mpf(0)
        fact = 1
        for n in range(N + 1):
            if n:
                fact *= row[n]
            b = mpmath.fsum(
                fibonomial(n, m, k) * exp_sign(k, m) * x ** (n - m) * y**m for m in range(n + 1)
            )
            total += b / fact
    with mpmath.workprec(precision_bits):
        return +total


@dataclass(frozen=True)
class IdentityReport:
    """One numerically checked identity: both sides and |lhs - rhs|."""

    identity_id: str
    k: int
    evaluation_point: object
    lhs: object
    rhs: object
    residual: object
    tail_bound: object = None
    precision_bits: int = 128

    def recompute_residual(self):
        with mpmath.workprec(self.precision_bits + 16):
            return abs(mpmath.mpmathify(self.lhs) - mpmath.mpmathify(self.rhs))

    def passes(self, tol) -> bool:
        return self.residual < tol

    def to_json(self) -> str:
        digits = int(self.precision_bits * 0.30103) + 3
        s = lambda v: None if v is None else mpmath.nstr(v, digits, strip_zeros=False)  # noqa: E731
        return json.dumps(
            {
                "id": self.identity_id,
                "k": self.k,
                "x": s(self.evaluation_point),
                "lhs": s(self.lhs),
                "rhs": s(self.rhs),
                "residual": s(self.residual),
                "tail_bound": s(self.tail_bound),
                "precision_bits": self.precision_bits,
            }
        )

    @classmethod
    def from_json(cls, line: str) -> "IdentityReport":
        d = json.loads(line)
        prec = int(d.get("precision_bits", 128))
        with mpmath.workprec(prec + 16):
            num = lambda v: None if v is None else mpmath.mpf(v)  # noqa: E731
            return cls(
                identity_id=d["id"],
                k=int(d["k"]),
                evaluation_point=num(d["x"]),
                lhs=num(d["lhs"]),
                rhs=num(d["rhs"]),
                residual=num(d["residual"]),
                tail_bound=num(d.get("tail_bound")),
                precision_bits=prec,
            )


# ---------------------------------------------------------------------------
# sums of F_n^(k) x^n / n! with automatic guard bits

def _guard_bits(k: int, absx: float) -> int:
    # largest term of sum |F_n^(k)| |x|^n / n! is below exp(phi^|k| |x|)
    growth = ((1 + 5**0.5) / 2) ** abs(k) * absx
    return int(growth / math.log(2)) + 32


def _fd_sum(k: int, x, parities, sign_of, shift: int, target_bits: int,
            n_start: int = 0, n_stop: int | None = None):
    """sum_{n >= n_start, n % 2 in parities} sign_of(n) F_n^(k) x^(n-shift) / n!.

    Returns (value, tail_bound, last_n).  The tail past n is bounded by
    |t_n| r / (1 - r) with r = (|L_k| + 1)|x| / (n + 1), because
    |F_{n+1}^(k) / F_n^(k)| <= |L_k| + 1.  Without ``n_stop`` summation runs
    until that bound is below 2^-(target_bits + 8).  Call inside a workprec
    context that already carries guard bits.
    """
    lk1 = abs(lucas(k)) + 1
    absx = abs(x)
    eps = mpmath.ldexp(1, -(target_bits + 8))
    cap = n_stop if n_stop is not None else 100000
    total = mpmath.mpf(0)
    tail = mpmath.inf
    n = n_start
    fact = math.factorial(n_start)
    xpow = x ** (n_start - shift)
    while True:
        t = fib_divisor(n, k) * xpow / fact
        if n % 2 in parities:
            total += sign_of(n) * t
        if n >= 1:
            r = lk1 * absx / (n + 1)
            tail = abs(t) * r / (1 - r) if r < 1 else mpmath.inf
            if n_stop is None and r < 0.5 and tail < eps:
                break
        if n >= cap:
            break
        n += 1
        fact *= n
        xpow *= x
    if n_stop is None and not tail < eps:
        raise PrecisionUnachievable("series did not converge within the term cap")
    return total, tail, n


def entire_gf_residual(k: int, x, N: int, precision_bits: int) -> IdentityReport:
    """Compare sum_{n=1}^{N} F_n^(k) x^n / n! with its closed form.

    The closed form is e^(L_k x/2) sinh(F_k sqrt5 x / 2) / (F_k sqrt5 / 2).
    """
    check_order(k)
    if N < 1:
        raise ValueError("N must be positive")
    with mpmath.workprec(precision_bits + 16):
        xv = mpmath.mpmathify(x)
        absx = float(abs(xv))
    wp = precision_bits + _guard_bits(k, absx)
    with mpmath.workprec(wp):
        xv = mpmath.mpmathify(x)
        lhs, tail, _ = _fd_sum(k, xv, (0, 1), lambda n: 1, 0, precision_bits, 1, N)
        L, F = lucas(k), fibonacci(k)
        h = F * mpmath.sqrt(5) / 2
        rhs = mpmath.exp(L * xv / 2) * mpmath.sinh(h * xv) / h
        res = abs(lhs - rhs)
    with mpmath.workprec(precision_bits):
        return IdentityReport("entire-gf", k, +xv, +lhs, +rhs, +res, +tail, precision_bits)


def _closed_odd(L, F, x):
    h = F * mpmath.sqrt(5) / 2
    return mpmath.cos(L * x / 2) * mpmath.sin(h * x) / (h * x)


def _closed_even(L, F, x):
    h = F * mpmath.sqrt(5) / 2
    return mpmath.sin(L * x / 2) * mpmath.sin(h * x) / (h * x)


def identity_suite(k: int, precision_bits: int) -> list[IdentityReport]:
    """Evaluate the battery of identities derived from the entire generating function.

    ``sum-*``: the x = 1 summation formulas.  ``odd-i`` / ``even-i``: the
    odd- and even-index generating identities, written with the left side
    divided by x, at the seven special points each.  ``odd-closed`` and
    ``even-closed``: the point x = pi / (sqrt5 F_k).  The right-hand side of
    each item is the closed form as displayed for that point (literal 0 for
    the vanishing items).
    """
    check_order(k)
    L, F = lucas(k), fibonacci(k)
    reports = []

    def run(ident, xfun, parities, sign_of, shift, rhs_fun, n_start=0, scale=1):
        with mpmath.workprec(precision_bits + 16):
            absx = float(abs(xfun()))
        wp = precision_bits + _guard_bits(k, absx)
        with mpmath.workprec(wp):
            x = xfun()
            lhs, tail, _ = _fd_sum(k, x, parities, sign_of, shift, precision_bits, n_start)
            lhs = lhs * scale
            rhs = mpmath.mpf(rhs_fun(x)) if rhs_fun is not None else mpmath.mpf(0)
            res = abs(lhs - rhs)
        with mpmath.workprec(precision_bits):
            reports.append(IdentityReport(ident, k, +x, +lhs, +rhs, +res, +tail, precision_bits))

    pi, s5 = (lambda: mpmath.pi), (lambda: mpmath.sqrt(5))
    h = lambda: F * s5() / 2  # noqa: E731

    # summation formulas at x = 1
    run("sum-1", lambda: mpmath.mpf(1), (0, 1), lambda n: 1, 0,
        lambda x: mpmath.exp(mpmath.mpf(L) / 2) * mpmath.sinh(h()) / h())
    run("sum-2", lambda: mpmath.mpf(1), (0, 1), lambda n: 1, 0,
        lambda x: mpmath.exp(mpmath.mpf(L) / 2) * mpmath.sinh(h()) / (s5() / 2), scale=F)

    odd_sign = lambda n: -1 if ((n - 1) // 2) % 2 else 1  # noqa: E731  (-1)^l, n = 2l+1
    even_sign = lambda n: -1 if ((n - 2) // 2) % 2 else 1  # noqa: E731  (-1)^l, n = 2l+2

    odd_points = [
        ("odd-1", lambda: pi(),
         lambda x: mpmath.cos(pi() * L / 2) * mpmath.sin(h() * pi()) / (h() * pi())),
        ("odd-2", lambda: 2 * pi() / s5(), None),
        ("odd-3", lambda: pi() / s5(),
         lambda x: 2 / (F * pi()) * mpmath.cos(L * pi() / (2 * s5())) * mpmath.sin(F * pi() / 2)),
        ("odd-4", lambda: 2 * pi(),
         lambda x: mpmath.cos(L * pi()) * mpmath.sin(F * s5() * pi()) / (F * s5() * pi())),
        ("odd-5", lambda: mpmath.mpf(1),
         lambda x: mpmath.cos(mpmath.mpf(L) / 2) * mpmath.sin(h()) / h()),
        ("odd-6", lambda: pi() / L, None),
        ("odd-7", lambda: 2 * pi() / (s5() * F), None),
    ]
    for ident, xfun, rhs_fun in odd_points:
        run(ident, xfun, (1,), odd_sign, 1, rhs_fun, n_start=1)

    even_points = [
        ("even-1", lambda: pi(),
         lambda x: mpmath.sin(pi() * L / 2) * mpmath.sin(h() * pi()) / (h() * pi())),
        ("even-2", lambda: 2 * pi() / s5(), None),
        ("even-3", lambda: pi() / s5(),
         lambda x: 2 / (F * pi()) * mpmath.sin(L * pi() / (2 * s5())) * mpmath.sin(F * pi() / 2)),
        ("even-4", lambda: 2 * pi(), None),
        ("even-5", lambda: mpmath.mpf(1),
         lambda x: mpmath.sin(mpmath.mpf(L) / 2) * mpmath.sin(h()) / h()),
        ("even-6", lambda: pi() / L,
         lambda x: mpmath.sin(mpmath.mpf(F) / L * s5() / 2 * pi()) / (mpmath.mpf(F) / L * s5() / 2 * pi())),
        ("even-7", lambda: 2 * pi() / L, None),
    ]
    for ident, xfun, rhs_fun in even_points:
        run(ident, xfun, (0,), even_sign, 1, rhs_fun, n_start=2)

    run("odd-closed", lambda: pi() / (s5() * F), (1,), odd_sign, 1,
        lambda x: 2 / pi() * mpmath.cos(mpmath.mpf(L) / F * pi() / (2 * s5())), n_start=1)
    run("even-closed", lambda: pi() / (s5() * F), (0,), even_sign, 1,
        lambda x: 2 / pi() * mpmath.sin(mpmath.mpf(L) / F * pi() / (2 * s5())), n_start=2)
    return reports


def vanishing_items(k: int) -> set[str]:
    """Ids whose right side is zero for this k (unconditional or by parity)."""
    ids = {"odd-2", "odd-6", "odd-7", "even-2", "even-4", "even-7"}
    L, F = lucas(k), fibonacci(k)
    if L % 2:
        ids.add("odd-1")
    else:
        ids.add("even-1")
    if F % 2 == 0:
        ids.update({"odd-3", "even-3"})
    return ids


# ---------------------------------------------------------------------------
# Golden analytic functions

class BivariatePolynomial:
    """Exact polynomial in (x, y) stored as {(i, j): ComplexQuadratic}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = ComplexQuadratic.coerce(c)
            if c:
                clean[key] = c
        self.terms = clean

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ComplexQuadratic.ZERO) + c
        return BivariatePolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        out = {}
        for (i, j), a in self.terms.items():
            for (p, q), b in other.terms.items():
                key = (i + p, j + q)
                out[key] = out.get(key, ComplexQuadratic.ZERO) + a * b
        return BivariatePolynomial(out)

    def __eq__(self, other):
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def scale(self, c) -> "BivariatePolynomial":
        c = ComplexQuadratic.coerce(c)
        return BivariatePolynomial({key: v * c for key, v in self.terms.items()})

    def real_part(self) -> "BivariatePolynomial":
        return BivariatePolynomial({key: c.re for key, c in self.terms.items()})

    def imag_part(self) -> "BivariatePolynomial":
        return BivariatePolynomial({key: c.im for key, c in self.terms.items()})

    def derivative(self, k: int, var: str) -> "BivariatePolynomial":
        """k-th Golden derivative in ``var`` ('x' or 'y'), exact on monomials."""
        check_order(k)
        out = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i:
                out[(i - 1, j)] = c * fib_divisor(i, k)
            elif var == "y" and j:
                out[(i, j - 1)] = c * fib_divisor(j, k)
        return BivariatePolynomial(out)

    def __call__(self, x, y) -> ComplexQuadratic:
        x, y = ComplexQuadratic.coerce(x), ComplexQuadratic.coerce(y)
        acc = ComplexQuadratic.ZERO
        for (i, j), c in self.terms.items():
            acc = acc + c * (x**i) * (y**j)
        return acc


def complex_golden_binomial(k: int, n: int) -> BivariatePolynomial:
    """(x + i y)^n_F as the product of its n linear factors."""
    check_order(k)
    out = BivariatePolynomial({(0, 0): 1})
    for j in range(n):
        c = golden_power(k * (n - 1 - j)) * silver_power(k * j)
        out = out * BivariatePolynomial({(1, 0): 1, (0, 1): ComplexQuadratic(0, c)})
    return out


def analytic_residuals(k: int, coeffs: Sequence, x, y):
    """Exact Cauchy-Riemann and Laplace residuals of f((x + i y)_F) at (x, y).

    f = sum a_n (x + i y)^n_F with u = Re f, v = Im f.  Returns
    (D_x u - D'_y v, D'_y u + D_x v, D_x^2 f + D'_y^2 f) where D_x has order k
    and D'_y has order -k.  The third entry is complex: its real part is the
    Laplacian of u and its imaginary part that of v.
    """
    check_order(k)
    f = BivariatePolynomial()
    for n, a in enumerate(coeffs):
        a = ComplexQuadratic.coerce(a)
        if a:
            f = f + complex_golden_binomial(k, n).scale(a)
    u, v = f.real_part(), f.imag_part()
    x, y = QuadraticNumber.coerce(x), QuadraticNumber.coerce(y)
    cr1 = u.derivative(k, "x") - v.derivative(-k, "y")
    cr2 = u.derivative(-k, "y") + v.derivative(k, "x")
    lap = f.derivative(k, "x").derivative(k, "x") + f.derivative(-k, "y").derivative(-k, "y")
    return cr1(x, y), cr2(x, y), lap(x, y)
