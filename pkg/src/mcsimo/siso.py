"""Single point transmitter, single absorbing sphere.

Hitting rate, cumulative hitting fraction, the polar-angle distribution of
hits on the sphere, and the shortened Laplace-domain coefficients used by
the two-receiver closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import erfc, erfcx

from .geometry import DEFAULT_DIFFUSION, Topology, cross_distance

ANGULAR_PANELS = 1024


@dataclass(frozen=True)
class SisoParams:
    r0: float
    rr: float
    D: float = DEFAULT_DIFFUSION

    def __post_init__(self):
        if not self.rr > 0:
            raise ValueError(f"receiver radius must be > 0, got rr={self.rr}")
        if not self.r0 > self.rr:
            raise ValueError(f"need r0 > rr (transmitter outside receiver), got r0={self.r0}, rr={self.rr}")
        if not self.D > 0:
            raise ValueError(f"diffusion coefficient must be > 0, got D={self.D}")

    @property
    def gap(self) -> float:
        return self.r0 - self.rr

    @property
    def asymptote(self) -> float:
        return self.rr / self.r0

    @property
    def peak_time(self) -> float:
        return self.gap**2 / (6.0 * self.D)

    @classmethod
    def for_receiver(cls, topology: Topology, i: int) -> "SisoParams":
        return cls(topology.center_distance(i), topology.receivers[i].radius, topology.diffusion)


def first_passage_pdf(t, amplitude, width):
    """``amplitude * width / sqrt(4 pi t^3) * exp(-width^2 / 4t)``, zero for t <= 0.

    ``width`` is in s^(1/2), i.e. a distance divided by sqrt(D).
    """
    t = np.asarray(t, dtype=float)
    pos = t > 0
    ts = np.where(pos, t, 1.0)
    # log form keeps t**3 from underflowing for tiny t
    with np.errstate(over="ignore"):
        val = amplitude * width / math.sqrt(4.0 * math.pi) * np.exp(-(width**2) / (4.0 * ts) - 1.5 * np.log(ts))
    return np.where(pos, val, 0.0)


def first_passage_cdf(t, amplitude, width):
    """Time integral of :func:`first_passage_pdf` from 0 to t."""
    t = np.asarray(t, dtype=float)
    pos = t > 0
    ts = np.where(pos, t, 1.0)
    return np.where(pos, amplitude * erfc(width / (2.0 * np.sqrt(ts))), 0.0)


def siso_pdf(t, p: SisoParams):
    return first_passage_pdf(t, p.asymptote, p.gap / math.sqrt(p.D))


def siso_cdf(t, p: SisoParams):
    return first_passage_cdf(t, p.asymptote, p.gap / math.sqrt(p.D))


def _angular_weight(theta, t, p: SisoParams):
    # erfc(x) = erfcx(x) exp(-x^2); the common factor exp(-gap^2/4Dt) is divided
    # out so that the ratio stays finite at small t
    a = p.rr / p.r0
    cos = np.cos(theta)
    r0_star_sq = p.r0**2 + p.rr**2 - 2.0 * p.r0 * p.rr * cos
    scale = 4.0 * p.D * t
    x = np.sqrt(r0_star_sq / scale)
    rel = np.exp(-(r0_star_sq - p.gap**2) / scale)
    return np.sin(theta) * erfcx(x) * rel / (1.0 - 2.0 * a * cos + a * a) ** 1.5


def angular_pdf(theta, t: float, p: SisoParams):
    """Density over the polar angle of molecules absorbed by time ``t``.

    The angle is measured at the receiver center from the axis pointing to the
    transmitter. Normalized to integrate to 1 over [0, pi].
    """
    if not t > 0:
        raise ValueError("angular distribution needs t > 0")
    # The mass sits within a few sqrt(4Dt / (r0 rr)) of the pole at early times,
    # so the quadrature is split there and each piece gets the full panel count.
    split = min(math.pi, 12.0 * math.sqrt(4.0 * p.D * t / (p.r0 * p.rr)))
    norm = 0.0
    for lo, hi in ((0.0, split), (split, math.pi)):
        if hi > lo:
            grid = np.linspace(lo, hi, ANGULAR_PANELS + 1)
            norm += simpson(_angular_weight(grid, t, p), x=grid)
    return _angular_weight(np.asarray(theta, dtype=float), t, p) / norm


def angular_hit_density(theta, t: float, p: SisoParams):
    """Angular density scaled by the absorbed fraction; integrates to ``siso_cdf(t)``."""
    return angular_pdf(theta, t, p) * siso_cdf(t, p)


@dataclass(frozen=True)
class LaplaceCoeffs:
    c1: float
    c2: float
    c12: float
    c21: float
    k1: float
    k2: float
    k12: float
    k21: float

    @property
    def loop_gain(self) -> float:
        """Amplitude gained per round trip Rx1 -> Rx2 -> Rx1."""
        return self.c12 * self.c21

    def swapped(self) -> "LaplaceCoeffs":
        return LaplaceCoeffs(self.c2, self.c1, self.c21, self.c12, self.k2, self.k1, self.k21, self.k12)


def laplace_coeffs(topology: Topology) -> LaplaceCoeffs:
    """Shortened coefficients for a two-receiver topology.

    ``c12``/``k12`` describe molecules virtually released from Rx2 toward Rx1,
    ``c21``/``k21`` the reverse.
    """
    if topology.n_receivers != 2:
        raise ValueError(f"laplace_coeffs needs exactly 2 receivers, got {topology.n_receivers}")
    r1 = topology.receivers[0].radius
    r2 = topology.receivers[1].radius
    r01 = topology.center_distance(0)
    r02 = topology.center_distance(1)
    r0_21 = cross_distance(topology, 1, 0)
    r0_12 = cross_distance(topology, 0, 1)
    sd = math.sqrt(topology.diffusion)
    return LaplaceCoeffs(
        c1=r1 / r01,
        c2=r2 / r02,
        c12=r1 / r0_21,
        c21=r2 / r0_12,
        k1=(r01 - r1) / sd,
        k2=(r02 - r2) / sd,
        k12=(r0_21 - r1) / sd,
        k21=(r0_12 - r2) / sd,
    )
