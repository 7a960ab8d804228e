"""Point vortex in a Golden annulus and in a double-circular wedge, by images.

Annulus 1 < |z| < phi^(k/2): reflections in the two circles generate images
phi^(kn) z0 (vortices) and phi^(kn)/conj(z0) (counter-vortices).  The wedge
sum is written in z^2 so it is even in z and Golden periodic with scale phi.

All periodicity checks are made on the velocity, which is single-valued.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple

import mpmath

from .errors import OutOfDomain, PoleHit
from .goldenfield import golden_power

__all__ = [
    "FlowConfig",
    "annulus_images",
    "annulus_potential",
    "annulus_velocity",
    "wedge_images",
    "wedge_potential",
    "wedge_velocity",
    "velocity",
    "PeriodicityResidual",
    "periodicity_residual",
    "ladder_spacing_identities",
    "stream_function",
    "boundary_stream_spread",
    "field_csv",
]

Flow = Literal["annulus", "wedge"]


@dataclass(frozen=True)
class FlowConfig:
    z0: complex
    gamma: float = 1.0
    truncation_N: int = 100
    k: int = 1
    precision_bits: int = 128

    def __post_init__(self):
        if self.k < 1:
            raise OutOfDomain("annulus order k must be a positive integer")
        if self.truncation_N < 0:
            raise OutOfDomain("truncation_N must be nonnegative")
        with mpmath.workprec(self.precision_bits):
            r = abs(mpmath.mpc(self.z0))
            if not (1 < r < mpmath.phi ** (mpmath.mpf(self.k) / 2)):
                raise OutOfDomain(f"|z0| = {mpmath.nstr(r, 8)} lies outside 1 < |z| < phi^(k/2)")

    def _wp(self) -> int:
        return self.precision_bits + 32


def _phi_pow(e, wp):
    with mpmath.workprec(wp):
        return mpmath.phi ** e


def _check_pole(z, points, wp):
    tol = mpmath.mpf(2) ** (-(wp - 32) // 2)
    for p in points:
        if abs(z - p) < tol:
            raise PoleHit(f"z = {mpmath.nstr(z, 10)} coincides with an image point")


@lru_cache(maxsize=64)
def annulus_images(cfg: FlowConfig) -> tuple[list, list]:
    """(vortex images phi^(kn) z0, counter images phi^(kn)/conj z0), n = -N..N."""
    wp = cfg._wp()
    with mpmath.workprec(wp):
        z0 = mpmath.mpc(cfg.z0)
        ns = range(-cfg.truncation_N, cfg.truncation_N + 1)
        p = [_phi_pow(cfg.k * n, wp) for n in ns]
        return tuple(s * z0 for s in p), tuple(s / mpmath.conj(z0) for s in p)


def annulus_potential(cfg: FlowConfig, z):
    """Gamma/(2 pi i) sum_n Log[(z - phi^(kn) z0)/(z - phi^(kn)/conj z0)], principal logs."""
    wp = cfg._wp()
    vort, anti = annulus_images(cfg)
    with mpmath.workprec(wp):
        z = mpmath.mpc(z)
        _check_pole(z, vort + anti, wp)
        s = mpmath.fsum(mpmath.log((z - a) / (z - b)) for a, b in zip(vort, anti))
        out = cfg.gamma * s / (2j * mpmath.pi)
    with mpmath.workprec(cfg.precision_bits):
        return +out


def annulus_velocity(cfg: FlowConfig, z):
    """Conjugate velocity: Gamma/(2 pi i) sum_n [1/(z - phi^(kn) z0) - 1/(z - phi^(kn)/conj z0)]."""
    wp = cfg._wp()
    vort, anti = annulus_images(cfg)
    with mpmath.workprec(wp):
        z = mpmath.mpc(z)
        _check_pole(z, vort + anti, wp)
        s = mpmath.fsum(1 / (z - a) - 1 / (z - b) for a, b in zip(vort, anti))
        out = cfg.gamma * s / (2j * mpmath.pi)
    with mpmath.workprec(cfg.precision_bits):
        return +out


def _check_quadrant(z0):
    if not (mpmath.re(z0) > 0 and mpmath.im(z0) > 0):
        raise OutOfDomain("the wedge vortex must lie in the open first quadrant")


@lru_cache(maxsize=64)
def _wedge_factors(cfg: FlowConfig, wp):
    # squared roots (numerator a, b; denominator conj a, conj b) for n = -N..N
    with mpmath.workprec(wp):
        z0 = mpmath.mpc(cfg.z0)
        _check_quadrant(z0)
        w, wb = z0**2, mpmath.conj(z0) ** 2
        out = []
        for n in range(-cfg.truncation_N, cfg.truncation_N + 1):
            p2n, p2n2 = _phi_pow(2 * n, wp), _phi_pow(2 * n + 2, wp)
            out.append((p2n * w, p2n2 / w, p2n * wb, p2n2 / wb))
        return tuple(out)


@lru_cache(maxsize=64)
def wedge_images(cfg: FlowConfig) -> tuple[list, list]:
    """Zeros of the numerator and denominator factors, as points z (both square roots).

    phi^n z0 is a numerator zero; its antipode -1/(phi^n conj z0) is a
    denominator zero.
    """
    wp = cfg._wp()
    num, den = [], []
    with mpmath.workprec(wp):
        for a, b, ab, bb in _wedge_factors(cfg, wp):
            for r in (a, b):
                s = mpmath.sqrt(r)
                num += [s, -s]
            for r in (ab, bb):
                s = mpmath.sqrt(r)
                den += [s, -s]
    return tuple(num), tuple(den)


def wedge_potential(cfg: FlowConfig, z):
    """Gamma/(2 pi i) sum_n Log[(z^2 - a_n)(z^2 - b_n)/((z^2 - conj a_n)(z^2 - conj b_n))].

    a_n = phi^(2n) z0^2, b_n = phi^(2n+2)/z0^2.  Even in z term by term.
    """
    wp = cfg._wp()
    facs = _wedge_factors(cfg, wp)
    with mpmath.workprec(wp):
        z = mpmath.mpc(z)
        num, den = wedge_images(cfg)
        _check_pole(z, num + den, wp)
        z2 = z * z
        s = mpmath.fsum(
            mpmath.log((z2 - a) * (z2 - b) / ((z2 - ab) * (z2 - bb))) for a, b, ab, bb in facs
        )
        out = cfg.gamma * s / (2j * mpmath.pi)
    with mpmath.workprec(cfg.precision_bits):
        return +out


def wedge_velocity(cfg: FlowConfig, z):
    """Term-wise z-derivative of :func:`wedge_potential`."""
    wp = cfg._wp()
    facs = _wedge_factors(cfg, wp)
    num, den = wedge_images(cfg)
    with mpmath.workprec(wp):
        z = mpmath.mpc(z)
        _check_pole(z, num + den, wp)
        z2 = z * z
        s = mpmath.fsum(
            1 / (z2 - a) + 1 / (z2 - b) - 1 / (z2 - ab) - 1 / (z2 - bb) for a, b, ab, bb in facs
        )
        out = cfg.gamma * 2 * z * s / (2j * mpmath.pi)
    with mpmath.workprec(cfg.precision_bits):
        return +out


def velocity(cfg: FlowConfig, z, flow: Flow = "annulus"):
    if flow == "annulus":
        return annulus_velocity(cfg, z)
    if flow == "wedge":
        return wedge_velocity(cfg, z)
    raise ValueError(f"unknown flow {flow!r}")


def _potential(cfg, z, flow):
    if flow == "annulus":
        return annulus_potential(cfg, z)
    if flow == "wedge":
        return wedge_potential(cfg, z)
    raise ValueError(f"unknown flow {flow!r}")


class PeriodicityResidual(NamedTuple):
    residual: object
    predicted_scale: object


def periodicity_residual(cfg: FlowConfig, z, flow: Flow = "annulus") -> PeriodicityResidual:
    """|phi^k V(phi^k z) - V(z)| with the truncation scale it should sit under.

    The scaled sum is the same sum over a window shifted by one (annulus) or
    by k (wedge) images, so the residual is a few boundary terms of size
    phi^(-kN) for the annulus and phi^(-2N) for the wedge, until rounding
    takes over.
    """
    wp = cfg._wp()
    with mpmath.workprec(wp):
        z = mpmath.mpc(z)
        s = _phi_pow(cfg.k, wp)
        v1 = velocity(cfg, s * z, flow)
        v0 = velocity(cfg, z, flow)
        res = abs(s * v1 - v0)
        decay = cfg.k * cfg.truncation_N if flow == "annulus" else 2 * cfg.truncation_N
        z0 = mpmath.mpc(cfg.z0)
        size = max(abs(z), abs(s * z), 1) ** 2 * (abs(z0) + 1 / abs(z0)) * cfg.k
        # truncation tail plus a rounding floor at the requested precision
        tail = 4 * _phi_pow(-decay, wp) + mpmath.mpf(2) ** (8 - cfg.precision_bits)
        predicted = abs(cfg.gamma) / mpmath.pi * size * tail
    with mpmath.workprec(cfg.precision_bits):
        return PeriodicityResidual(+res, +predicted)


def ladder_spacing_identities(n: int) -> tuple[bool, bool]:
    """Exact checks phi^(n+1) - phi^n = phi^(n-1) and phi^(-n) - phi^(-n-1) = phi^(-n-2)."""
    up = golden_power(n + 1) - golden_power(n) == golden_power(n - 1)
    down = golden_power(-n) - golden_power(-n - 1) == golden_power(-n - 2)
    return up, down


def stream_function(cfg: FlowConfig, z, flow: Flow = "annulus"):
    """Im of the complex potential; single-valued since Gamma/(2 pi i) Log has real part of arg only."""
    with mpmath.workprec(cfg._wp()):
        v = mpmath.im(_potential(cfg, z, flow))
    with mpmath.workprec(cfg.precision_bits):
        return +v


def boundary_stream_spread(cfg: FlowConfig, radius, samples: int = 32,
                           flow: Flow = "annulus", arc: tuple = (0.0, 2.0)):
    """max - min of the stream function over points on |z| = radius.

    ``arc`` is the angle range in units of pi (use (0, 0.5) for the wedge).
    Zero spread means the circle is a streamline.
    """
    wp = cfg._wp()
    with mpmath.workprec(wp):
        r = mpmath.mpf(radius)
        a0, a1 = (mpmath.mpf(a) * mpmath.pi for a in arc)
        vals = []
        for j in range(samples):
            t = a0 + (a1 - a0) * (j + mpmath.mpf(1) / 2) / samples
            vals.append(stream_function(cfg, r * mpmath.expjpi(t / mpmath.pi), flow))
        spread = max(vals) - min(vals)
    with mpmath.workprec(cfg.precision_bits):
        return +spread


def field_csv(cfg: FlowConfig, points: Iterable, flow: Flow = "annulus") -> str:
    """CSV rows x, y, Re V, Im V, |V| for the given sample points."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "ReV", "ImV", "absV"])
    for z in points:
        v = velocity(cfg, z, flow)
        z = mpmath.mpc(z)
        w.writerow([mpmath.nstr(t, 17) for t in (z.real, z.imag, v.real, v.imag, abs(v))])
    return buf.getvalue()
