"""Golden-deformed bosonic and fermionic oscillators.

Energies are exact integers in units of hbar*omega/2 ("half-quanta").
Ladder operators are truncated to D Fock states; the last diagonal entry of
b b^dagger is a truncation artifact and is excluded from algebra checks.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

import mpmath

from .errors import (
    EvenOrderForFermionic,
    IndefiniteMetric,
    OddOrderForSemiclassical,
    check_order,
)
from .goldenfield import QuadraticNumber, golden_power, silver_power
from .qcalculus import GoldenPolynomial, golden_derivative_poly
from .sequences import fib_divisor, fib_divisor_row, lucas

__all__ = [
    "FockOperator",
    "SpectrumEntry",
    "CoherentState",
    "ladder_matrices",
    "number_operator",
    "bosonic_spectrum",
    "fermionic_spectrum",
    "spectrum_csv",
    "energy_gap",
    "gap_ratio",
    "bernoulli_number",
    "bernoulli_polynomial",
    "semiclassical_energy",
    "continuous_divisor_even",
    "continuous_divisor_odd",
    "deformed_commutators",
    "coherent_state",
    "coherent_overlap",
    "coherent_overlap_closed",
    "bargman_apply",
]


@dataclass(frozen=True)
class FockOperator:
    """Dense D x D operator in the truncated Fock basis |0>, ..., |D-1>."""

    dim: int
    entries: object  # mpmath.matrix
    exact_diag: tuple | None = None

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.dim, self.entries * other.entries)

    def diagonal(self) -> list:
        return [self.entries[i, i] for i in range(self.dim)]

    def apply(self, vec: Sequence):
        return self.entries * mpmath.matrix(list(vec))


def _check_metric(k: int, values: Sequence[int]) -> None:
    if any(v < 0 for v in values):
        raise IndefiniteMetric(f"F_n^({k}) takes negative values; ladder entries are not real")


def ladder_matrices(k: int, D: int, precision_bits: int = 128) -> tuple[FockOperator, FockOperator]:
    """(b_k, b_k^dagger) truncated to D states.

    b_k has sqrt(F_{n+1}^(k)) at (n, n+1).  Negative odd k makes some F_n^(k)
    negative and is rejected with IndefiniteMetric.
    """
    check_order(k)
    if D < 2:
        raise ValueError("dimension D must be at least 2")
    row = fib_divisor_row(k, D)
    _check_metric(k, row)
    with mpmath.workprec(precision_bits):
        b = mpmath.zeros(D, D)
        for n in range(D - 1):
            b[n, n + 1] = mpmath.sqrt(row[n + 1])
        bd = b.T
    return FockOperator(D, b), FockOperator(D, bd)


def number_operator(k: int, D: int, shift: int = 0, precision_bits: int = 128) -> FockOperator:
    """F^(k)_{N + shift I}: diagonal with exact entries F_{n+shift}^(k), n < D."""
    check_order(k)
    exact = tuple(fib_divisor(n + shift, k) for n in range(D))
    with mpmath.workprec(precision_bits):
        m = mpmath.diag([mpmath.mpf(v) for v in exact])
    return FockOperator(D, m, exact)


def deformed_commutators(k: int, n: int) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Diagonal entries n of b b^+ - phi^k b^+ b - phi'^(kN) and b b^+ - phi'^k b^+ b - phi^(kN).

    Both are exactly zero by the Binet form.
    """
    check_order(k)
    f0, f1 = fib_divisor(n, k), fib_divisor(n + 1, k)
    first = f1 - golden_power(k) * f0 - silver_power(k * n)
    second = f1 - silver_power(k) * f0 - golden_power(k * n)
    return first, second


class SpectrumEntry(NamedTuple):
    n: int
    energy_halfquanta: int


def bosonic_spectrum(k: int, n_max: int) -> list[SpectrumEntry]:
    """E_n^(k) = F_n^(k) + F_{n+1}^(k) in half-quanta, n = 0..n_max."""
    check_order(k)
    row = fib_divisor_row(k, n_max + 1)
    return [SpectrumEntry(n, row[n] + row[n + 1]) for n in range(n_max + 1)]


def fermionic_spectrum(k: int, n_max: int, magnitude: bool = False) -> list[SpectrumEntry]:
    """E_n^(k) = F_n^(k) - F_{n+1}^(k) in half-quanta for odd k (signed by default)."""
    check_order(k)
    if k % 2 == 0:
        raise EvenOrderForFermionic("fermionic oscillators are defined for odd k")
    row = fib_divisor_row(k, n_max + 1)
    out = []
    for n in range(n_max + 1):
        e = row[n] - row[n + 1]
        out.append(SpectrumEntry(n, abs(e) if magnitude else e))
    return out


def spectrum_csv(k: int, entries: Sequence[SpectrumEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "n", "energy_halfquanta"])
    for e in entries:
        w.writerow([k, e.n, str(e.energy_halfquanta)])
    return buf.getvalue()


def energy_gap(k: int, n: int) -> int:
    """Delta E_n = E_{n+1} - E_n in half-quanta."""
    check_order(k)
    return fib_divisor(n + 2, k) - fib_divisor(n, k)


def gap_ratio(k: int, n: int, precision_bits: int = 128):
    """Delta E_n / E_n as an mpmath real."""
    e = fib_divisor(n, k) + fib_divisor(n + 1, k)
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(energy_gap(k, n)) / e


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if m == 0:
        return Fraction(1)
    acc = sum(comb(m + 1, j) * bernoulli_number(j) for j in range(m))
    return -acc / (m + 1)


def bernoulli_polynomial(m: int, x) -> Fraction:
    """B_m(x) = sum_j C(m, j) B_j x^(m-j), exact."""
    x = Fraction(x)
    return sum(comb(m, j) * bernoulli_number(j) * x ** (m - j) for j in range(m + 1))


def semiclassical_energy(k: int, n: int, S: int, precision_bits: int = 128):
    """Truncated Bernoulli expansion of E_n^(k) in half-quanta, even k.

    2(n + 1/2) + 2 sum_{s=1}^{S} B_{2s+1}(n+1) (k ln phi)^(2s) / (2s+1)!,
    which is the Maclaurin series in k of sinh((n+1/2) k ln phi) / sinh(k ln phi / 2).
    Converges for |k ln phi| < 2 pi, slowly when n is large.
    """
    check_order(k)
    if k % 2:
        raise OddOrderForSemiclassical("the sinh form of the spectrum needs even k")
    if S < 1:
        raise ValueError("S must be at least 1")
    return _bernoulli_sum(k, n, S, precision_bits)


def _bernoulli_sum(kv, n: int, S: int, precision_bits: int):
    with mpmath.workprec(precision_bits + 32):
        a2 = (kv * mpmath.log(mpmath.phi)) ** 2
        total = mpmath.mpf(2 * n + 1)
        ap = mpmath.mpf(1)
        fact = 1
        for s in range(1, S + 1):
            ap *= a2
            fact *= (2 * s) * (2 * s + 1)
            b = bernoulli_polynomial(2 * s + 1, n + 1)
            total += 2 * (mpmath.mpf(b.numerator) / b.denominator) * ap / fact
    with mpmath.workprec(precision_bits):
        return +total


def continuous_divisor_even(n: int, k, precision_bits: int = 128):
    """sinh(n k ln phi) / sinh(k ln phi): the even-k branch at real k; tends to n as k -> 0."""
    with mpmath.workprec(precision_bits + 32):
        a = mpmath.mpf(k) * mpmath.log(mpmath.phi)
        v = mpmath.sinh(n * a) / mpmath.sinh(a)
    with mpmath.workprec(precision_bits):
        return +v


def continuous_divisor_odd(n: int, k, precision_bits: int = 128):
    """(phi^(kn) - (-1)^n phi^(-kn)) / (phi^k + phi^(-k)) at real k; tends to n mod 2."""
    with mpmath.workprec(precision_bits + 32):
        p = mpmath.phi ** mpmath.mpf(k)
        v = (p**n - (-1) ** n * p ** (-n)) / (p + 1 / p)
    with mpmath.workprec(precision_bits):
        return +v


@dataclass(frozen=True)
class CoherentState:
    """Truncated Golden coherent state; ``residual`` is ||(b_k - beta)|beta>||."""

    k: int
    beta: object
    dim: int
    amplitudes: tuple
    residual: object
    norm_sum: object
    precision_bits: int

    def norm(self):
        with mpmath.workprec(self.precision_bits):
            return mpmath.sqrt(mpmath.fsum(abs(c) ** 2 for c in self.amplitudes))


def coherent_state(k: int, beta, D: int, precision_bits: int = 128) -> CoherentState:
    """Amplitudes beta^n / sqrt(F_n^(k)!), n < D, normalized by the order D-1 partial e_F."""
    check_order(k)
    if D < 2:
        raise ValueError("dimension D must be at least 2")
    row = fib_divisor_row(k, D)
    _check_metric(k, row)
    wp = precision_bits + 32
    with mpmath.workprec(wp):
        beta = mpmath.mpmathify(beta)
        raw = []
        fact = 1
        bp = mpmath.mpc(1)
        for n in range(D):
            if n:
                fact *= row[n]
                bp *= beta
            raw.append(bp / mpmath.sqrt(fact))
        norm_sum = mpmath.fsum(abs(c) ** 2 for c in raw)  # = partial e_F^{|beta|^2}
        scale = 1 / mpmath.sqrt(norm_sum)
        amps = [c * scale for c in raw]
        b, _ = ladder_matrices(k, D, wp)
        vec = b.apply(amps)
        residual = mpmath.sqrt(mpmath.fsum(abs(vec[i] - beta * amps[i]) ** 2 for i in range(D)))
    with mpmath.workprec(precision_bits):
        return CoherentState(k, +beta, D, tuple(+c for c in amps), +residual, +norm_sum, precision_bits)


def coherent_overlap(a: CoherentState, b: CoherentState):
    """<a|b> by direct amplitude sum."""
    prec = min(a.precision_bits, b.precision_bits)
    with mpmath.workprec(prec + 16):
        v = mpmath.fsum(mpmath.conj(x) * y for x, y in zip(a.amplitudes, b.amplitudes))
    with mpmath.workprec(prec):
        return +v


def coherent_overlap_closed(k: int, alpha, beta, N: int, precision_bits: int = 128):
    """e_F^(conj(alpha) beta) / sqrt(e_F^|alpha|^2 e_F^|beta|^2) with order-N partial sums."""
    from .series import golden_exp_eval

    with mpmath.workprec(precision_bits + 16):
        alpha, beta = mpmath.mpmathify(alpha), mpmath.mpmathify(beta)
        num = golden_exp_eval(k, "e", mpmath.conj(alpha) * beta, N, precision_bits + 16).value
        ea = golden_exp_eval(k, "e", abs(alpha) ** 2, N, precision_bits + 16).value
        eb = golden_exp_eval(k, "e", abs(beta) ** 2, N, precision_bits + 16).value
        v = num / mpmath.sqrt(ea * eb)
    with mpmath.workprec(precision_bits):
        return +v


def bargman_apply(k: int, p: GoldenPolynomial) -> GoldenPolynomial:
    """z * D_z^(k) p: the number operator in the Fock-Bargman picture."""
    check_order(k)
    d = golden_derivative_poly(k, p)
    return GoldenPolynomial((0, *d.coeffs)) if not d.is_zero() else d
