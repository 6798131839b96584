"""Analytic time-domain SIMO responses for two receivers.

The Laplace-domain response of receiver 1 is expanded as a geometric series
in the round-trip loop gain ``c12 * c21``. Each term inverts to a
first-passage shaped density ``A * B / sqrt(4 pi t^3) * exp(-B^2 / 4t)``,
whose time integral is ``A * erfc(B / (2 sqrt t))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Topology
from .siso import LaplaceCoeffs, SisoParams, first_passage_cdf, first_passage_pdf, laplace_coeffs

DEFAULT_EPS = 1e-12
MAX_TERMS = 100_000


class ROCError(ValueError):
    """The geometric series expansion does not converge for this topology."""


@dataclass(frozen=True)
class SeriesTerm:
    amplitude: float
    width: float
    sign: int
    order: int = 0


@dataclass(frozen=True)
class ClosedFormModel:
    terms: tuple[SeriesTerm, ...]
    truncation_eps: float
    receiver: int

    @property
    def total_fraction(self) -> float:
        """Absorbed fraction as t -> infinity."""
        return sum(term.sign * term.amplitude for term in self.terms)

    def positive(self) -> list[SeriesTerm]:
        return [term for term in self.terms if term.sign > 0]

    def negative(self) -> list[SeriesTerm]:
        return [term for term in self.terms if term.sign < 0]

    def up_to_order(self, order: int) -> "ClosedFormModel":
        return ClosedFormModel(tuple(t for t in self.terms if t.order <= order), self.truncation_eps, self.receiver)


def _coeffs_for(topology: Topology, receiver: int) -> LaplaceCoeffs:
    if receiver not in (0, 1):
        raise ValueError(f"receiver index must be 0 or 1, got {receiver}")
    coeffs = laplace_coeffs(topology)
    return coeffs if receiver == 0 else coeffs.swapped()


def roc_check(topology: Topology) -> float:
    """Convergence margin ``1 - c12 * c21`` (positive means the series converges)."""
    return 1.0 - laplace_coeffs(topology).loop_gain


def roc_inequality_margin(coeffs: LaplaceCoeffs, sigma: float, omega: float) -> float:
    """Margin of ``|g exp(-k sqrt(s))| < 1`` at complex ``s = sigma + i omega``.

    ``g`` is the loop gain and ``k = k12 + k21`` the round-trip width. Returns
    ``exp(k Re sqrt(s)) - g``; positive inside the region of convergence.
    """
    k = coeffs.k12 + coeffs.k21
    re_sqrt = math.sqrt((math.hypot(sigma, omega) + sigma) / 2.0)
    return math.exp(k * re_sqrt) - coeffs.loop_gain


def _family(amplitude, width, ratio, step, sign, eps):
    terms = []
    i = 0
    while True:
        terms.append(SeriesTerm(amplitude, width, sign, i))
        if amplitude < eps or ratio == 0.0:
            return terms
        if i >= MAX_TERMS:
            raise ROCError(f"series did not reach eps={eps} within {MAX_TERMS} terms")
        amplitude *= ratio
        width += step
        i += 1


def build_series(topology: Topology, receiver: int = 0, eps: float = DEFAULT_EPS) -> ClosedFormModel:
    """Truncated series for ``receiver`` (0 or 1) of a two-receiver topology.

    Terms are generated per sign family until the amplitude drops below
    ``eps``; that last sub-threshold term is kept.
    """
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    c = _coeffs_for(topology, receiver)
    g = c.loop_gain
    if g >= 1.0:
        raise ROCError(f"loop gain c12*c21 = {g:.6g} >= 1; series expansion diverges")
    step = c.k12 + c.k21
    pos = _family(c.c1, c.k1, g, step, +1, eps)
    neg = _family(c.c2 * c.c12, c.k2 + c.k12, g, step, -1, eps)
    terms = sorted(pos + neg, key=lambda term: (term.order, -term.sign))
    return ClosedFormModel(tuple(terms), eps, receiver)


def siso_model(p: SisoParams, receiver: int = 0) -> ClosedFormModel:
    """The one-term model of a lone receiver."""
    return ClosedFormModel((SeriesTerm(p.asymptote, p.gap / math.sqrt(p.D), +1, 0),), 0.0, receiver)


def eval_pdf(model: ClosedFormModel, t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for term in model.terms:
        out = out + term.sign * first_passage_pdf(t, term.amplitude, term.width)
    return out


def eval_cdf(model: ClosedFormModel, t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for term in model.terms:
        out = out + term.sign * first_passage_cdf(t, term.amplitude, term.width)
    return out


def approx_model(topology: Topology, receiver: int = 0) -> ClosedFormModel:
    """Zeroth-order slice of the series: the simplified approximation."""
    c = _coeffs_for(topology, receiver)
    terms = (
        SeriesTerm(c.c1, c.k1, +1, 0),
        SeriesTerm(c.c2 * c.c12, c.k2 + c.k12, -1, 0),
    )
    return ClosedFormModel(terms, math.inf, receiver)


def approx_pdf(topology: Topology, receiver: int, t):
    return eval_pdf(approx_model(topology, receiver), t)


def approx_cdf(topology: Topology, receiver: int, t):
    return eval_cdf(approx_model(topology, receiver), t)
