"""Qubit states with Fibonacci-divisor amplitudes, concurrence, Hecke powers.

Pure states keep unnormalized exact amplitudes in Q(sqrt 5) (integers for the
Fibonacci multi-qubit family) together with the exact squared norm; square
roots are taken only when exporting to mpmath.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath

from .errors import EvenOrderForState, NotHecke, WrongArity, check_order
from .goldenfield import ONE, ZERO, QuadraticNumber, golden_power, silver_power
from .sequences import fib_divisor, fibonacci, lucas

__all__ = [
    "PureState",
    "TwoByTwoOperator",
    "antipodal_qubits",
    "fibonacci_multiqubit",
    "measurement_probabilities",
    "concurrence_closed",
    "concurrence_pure",
    "concurrence_wootters",
    "bell_superpositions",
    "bell_coefficients",
    "hecke_sample",
    "hecke_power",
    "hecke_coefficients",
]


def _q(v) -> QuadraticNumber:
    return QuadraticNumber.coerce(v)


@dataclass(frozen=True)
class PureState:
    """n-qubit pure state: unnormalized amplitudes in computational-basis order."""

    num_qubits: int
    amplitudes_unnorm: tuple
    norm_sq: QuadraticNumber
    k: int | None = None

    def __post_init__(self):
        amps = tuple(_q(a) for a in self.amplitudes_unnorm)
        if len(amps) != 2**self.num_qubits:
            raise ValueError("need 2**num_qubits amplitudes")
        object.__setattr__(self, "amplitudes_unnorm", amps)
        object.__setattr__(self, "norm_sq", _q(self.norm_sq))
        if sum((a * a for a in amps), ZERO) != self.norm_sq:
            raise ValueError("norm_sq must equal the sum of squared amplitudes")

    def probabilities(self) -> list[QuadraticNumber]:
        """Exact basis-state probabilities a_i^2 / norm_sq."""
        return [a * a / self.norm_sq for a in self.amplitudes_unnorm]

    def normalized(self, precision_bits: int = 128) -> list:
        with mpmath.workprec(precision_bits + 16):
            nrm = mpmath.sqrt(self.norm_sq.to_real(precision_bits + 16))
            vals = [a.to_real(precision_bits + 16) / nrm for a in self.amplitudes_unnorm]
        with mpmath.workprec(precision_bits):
            return [+v for v in vals]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.num_qubits,
                "k": self.k,
                "amplitudes": [str(a) for a in self.amplitudes_unnorm],
                "norm_sq": str(self.norm_sq),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PureState":
        d = json.loads(text)
        return cls(
            int(d["n"]),
            tuple(QuadraticNumber.parse(a) for a in d["amplitudes"]),
            QuadraticNumber.parse(d["norm_sq"]),
            d.get("k"),
        )


def antipodal_qubits(k: int) -> tuple[tuple[QuadraticNumber, QuadraticNumber],
                                      tuple[QuadraticNumber, QuadraticNumber],
                                      QuadraticNumber]:
    """Unnormalized (1, phi^k) and (-phi^k, 1) plus their common norm 1 + phi^(2k)."""
    check_order(k)
    t = golden_power(k)
    return (ONE, t), (-t, ONE), ONE + t * t


def fibonacci_multiqubit(k: int, n: int) -> PureState:
    """n-qubit state whose weight-s basis strings carry amplitude F_s^(k) (odd k)."""
    check_order(k)
    if k % 2 == 0:
        raise EvenOrderForState("the Fibonacci n-qubit state is defined for odd k")
    if n < 1:
        raise ValueError("need at least one qubit")
    amps = [fib_divisor(bin(i).count("1"), k) for i in range(2**n)]
    norm_sq = sum(comb(n, s) * fib_divisor(s, k) ** 2 for s in range(1, n + 1))
    return PureState(n, tuple(amps), _q(norm_sq), k)


def measurement_probabilities(k: int, n: int) -> dict[int, Fraction]:
    """P_l = (F_l^(k))^2 / sum_s C(n, s) (F_s^(k))^2, per basis string of weight l."""
    check_order(k)
    denom = sum(comb(n, s) * fib_divisor(s, k) ** 2 for s in range(1, n + 1))
    return {l: Fraction(fib_divisor(l, k) ** 2, denom) for l in range(n + 1)}


def concurrence_closed(k: int) -> Fraction:
    """C_k = 2 / (2 + L_k^2)."""
    return Fraction(2, 2 + lucas(k) ** 2)


def concurrence_pure(state: PureState) -> QuadraticNumber:
    """Exact 2|ad - bc| / norm_sq for a two-qubit pure state with real amplitudes."""
    if state.num_qubits != 2:
        raise WrongArity("concurrence is defined here for two qubits")
    a, b, c, d = state.amplitudes_unnorm
    return abs(a * d - b * c) * 2 / state.norm_sq


def concurrence_wootters(state: PureState, precision_bits: int = 128):
    """Spin-flip concurrence max(0, l1 - l2 - l3 - l4) from rho (sy x sy) rho* (sy x sy).

    Independent of :func:`concurrence_pure`: builds the density matrix and
    diagonalizes numerically.
    """
    if state.num_qubits != 2:
        raise WrongArity("Wootters concurrence needs exactly two qubits")
    # zero eigenvalues come back as rounding noise and get square-rooted,
    # so the working precision has to be doubled
    wp = 2 * precision_bits + 32
    psi = state.normalized(wp)
    with mpmath.workprec(wp):
        v = mpmath.matrix([mpmath.mpc(x) for x in psi])
        rho = v * v.H
        sy = mpmath.matrix([[0, -1j], [1j, 0]])
        syy = mpmath.matrix(4, 4)
        for i in range(2):
            for j in range(2):
                for p in range(2):
                    for q in range(2):
                        syy[2 * i + p, 2 * j + q] = sy[i, j] * sy[p, q]
        rho_tilde = syy * rho.conjugate() * syy
        ev = mpmath.eig(rho * rho_tilde, left=False, right=False)
        lams = sorted((mpmath.sqrt(abs(mpmath.re(e))) for e in ev), reverse=True)
        c = max(mpmath.mpf(0), lams[0] - lams[1] - lams[2] - lams[3])
    with mpmath.workprec(precision_bits):
        return +c


def bell_coefficients(k: int) -> tuple[QuadraticNumber, QuadraticNumber]:
    """(c1, c2) with |P_-> = -c1 (|00>-|11>)/sqrt2 + c2 (|01>+|10>)/sqrt2.

    Even k: (sqrt5 F_k / L_k, 2 / L_k).  Odd k: (L_k / (sqrt5 F_k), 2 / (sqrt5 F_k)).
    """
    check_order(k)
    L, F = _q(lucas(k)), _q(fibonacci(k))
    s5 = QuadraticNumber(0, 1)
    if k % 2 == 0:
        return s5 * F / L, _q(2) / L
    return L / (s5 * F), _q(2) / (s5 * F)


def bell_superpositions(k: int) -> dict[str, PureState]:
    """|P_+>, |P_->, |G_+>, |G_-> from tensor products of the antipodal pair."""
    a, b, norm = antipodal_qubits(k)

    def kron(u, v):
        return [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]

    aa, bb, ab, ba = kron(a, a), kron(b, b), kron(a, b), kron(b, a)
    out = {}
    for name, (u, v, s) in {
        "P+": (aa, bb, 1), "P-": (aa, bb, -1), "G+": (ab, ba, 1), "G-": (ab, ba, -1),
    }.items():
        amps = tuple(x + s * y for x, y in zip(u, v))
        out[name] = PureState(2, amps, sum((x * x for x in amps), ZERO), k)
    return out


@dataclass(frozen=True)
class TwoByTwoOperator:
    """2 x 2 matrix over Q(sqrt 5), rows ((a, b), (c, d))."""

    a: QuadraticNumber
    b: QuadraticNumber
    c: QuadraticNumber
    d: QuadraticNumber

    def __post_init__(self):
        for f in "abcd":
            object.__setattr__(self, f, _q(getattr(self, f)))

    @classmethod
    def identity(cls) -> "TwoByTwoOperator":
        return cls(1, 0, 0, 1)

    @classmethod
    def scalar(cls, s) -> "TwoByTwoOperator":
        return cls(s, 0, 0, s)

    def __add__(self, o):
        return TwoByTwoOperator(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return TwoByTwoOperator(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __matmul__(self, o):
        return TwoByTwoOperator(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def scale(self, s) -> "TwoByTwoOperator":
        s = _q(s)
        return TwoByTwoOperator(self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self) -> QuadraticNumber:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "TwoByTwoOperator":
        inv = self.det().inverse()
        return TwoByTwoOperator(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def power(self, n: int) -> "TwoByTwoOperator":
        """R^n by repeated multiplication."""
        out = TwoByTwoOperator.identity()
        for _ in range(n):
            out = out @ self
        return out


def hecke_defect(R: TwoByTwoOperator, k: int) -> TwoByTwoOperator:
    """(R - phi^k I)(R + phi^(-k) I); zero iff R satisfies the Hecke condition."""
    t = golden_power(k)
    return (R - TwoByTwoOperator.scalar(t)) @ (R + TwoByTwoOperator.scalar(t.inverse()))


def hecke_sample(k: int, conjugator: TwoByTwoOperator | None = None) -> TwoByTwoOperator:
    """diag(phi^k, -phi^(-k)), optionally conjugated by an invertible Q(sqrt 5) matrix."""
    check_order(k)
    t = golden_power(k)
    R = TwoByTwoOperator(t, 0, 0, -t.inverse())
    if conjugator is not None:
        R = conjugator @ R @ conjugator.inverse()
    return R


def hecke_coefficients(k: int, n: int) -> tuple[QuadraticNumber, QuadraticNumber]:
    """(u_n, u_{n-1}) with R^n = u_n R + u_{n-1} I whenever R^2 = B_k R + I.

    u_n = (r^n - s^n) / (r - s) for the roots r = phi^k, s = -phi^(-k).  For
    odd k, s = phi'^k and u_n = F_n^(k).  For even k, B_k = sqrt5 F_k and the
    u_n are not Fibonacci divisors.
    """
    check_order(k)
    if k % 2:
        return _q(fib_divisor(n, k)), _q(fib_divisor(n - 1, k))
    r = golden_power(k)
    s = -r.inverse()
    u = lambda m: (r**m - s**m) / (r - s)  # noqa: E731
    return u(n), u(n - 1)


def hecke_power(R: TwoByTwoOperator, n: int, k: int) -> TwoByTwoOperator:
    """R^n reduced through the Hecke relation R^2 = B_k R + I.

    Returns u_n R + u_{n-1} I with the coefficients of :func:`hecke_coefficients`
    (Fibonacci divisors F_n^(k), F_{n-1}^(k) for odd k).
    """
    check_order(k)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not hecke_defect(R, k).is_zero():
        raise NotHecke(f"R does not satisfy (R - phi^{k})(R + phi^-{k}) = 0")
    un, um = hecke_coefficients(k, n)
    return R.scale(un) + TwoByTwoOperator.scalar(um)


def fibonacci_power_formula(R: TwoByTwoOperator, n: int, k: int) -> TwoByTwoOperator:
    """F_n^(k) R + F_{n-1}^(k) I for any k (equal to R^n only for odd k)."""
    return R.scale(fib_divisor(n, k)) + TwoByTwoOperator.scalar(fib_divisor(n - 1, k))
