"""Discrete-time recursive SIMO channel estimator and its one-expansion approximation.

Molecules absorbed by receiver j during step k are virtually re-released at
``t_k`` from j's virtual release point; the mass they would deliver to
receiver i afterwards is subtracted from i's single-receiver response.
All masses are exact CDF differences, so no explicit ``dt`` factor appears
in the convolution sums.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.signal import fftconvolve

from .curves import HittingCurve, TimeGrid
from .geometry import Topology, cross_distance
from .siso import SisoParams, siso_cdf

NEGATIVE_MASS_TOL = 1e-9


class NegativeMassWarning(RuntimeWarning):
    """Model subtraction overshot and produced negative per-step mass."""


def interval_masses(params: SisoParams, grid: TimeGrid, extra: int = 0) -> np.ndarray:
    """``F(t_{k+1}) - F(t_k)`` for k = 0..n_steps-1+extra."""
    edges = np.arange(grid.n_steps + 1 + extra) * grid.dt
    return np.diff(siso_cdf(edges, params))


def siso_curve(p: SisoParams, grid: TimeGrid) -> HittingCurve:
    edges_cdf = siso_cdf(grid.edges, p)
    return HittingCurve(grid, np.diff(edges_cdf), edges_cdf[1:])


def _conditional_kernels(topology: Topology, grid: TimeGrid) -> dict[tuple[int, int], np.ndarray]:
    """q[(j, i)][m]: mass reaching i during lag interval m after release from j."""
    kernels = {}
    n = topology.n_receivers
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            params = SisoParams(cross_distance(topology, j, i), topology.receivers[i].radius, topology.diffusion)
            kernels[j, i] = interval_masses(params, grid, extra=1)
    return kernels


def _finish(grid: TimeGrid, raw: np.ndarray) -> list[HittingCurve]:
    curves = [HittingCurve.from_steps(grid, row, clamp=True) for row in raw]
    worst = float(raw.min())
    if worst < -NEGATIVE_MASS_TOL:
        warnings.warn(
            f"negative per-step mass {worst:.3g} clamped to 0; residuals "
            f"{[c.residual for c in curves]} (refine dt)",
            NegativeMassWarning,
            stacklevel=3,
        )
    return curves


def _siso_steps(topology: Topology, grid: TimeGrid) -> np.ndarray:
    return np.array([interval_masses(SisoParams.for_receiver(topology, i), grid) for i in range(topology.n_receivers)])


def recursive_nrx(topology: Topology, grid: TimeGrid) -> list[HittingCurve]:
    """Comprehensive recursive model for any number of receivers.

    ``p_i[n] = siso_i[n] - sum_{j != i} sum_{k < n} p_j[k] q_{j->i}[n - k]``,
    solved jointly in one causal forward pass over n.
    """
    n_rx = topology.n_receivers
    if n_rx == 1:
        return [siso_curve(SisoParams.for_receiver(topology, 0), grid)]
    siso = _siso_steps(topology, grid)
    N = grid.n_steps
    # reversed kernels: q[n - k] for k = 0..n-1 is the contiguous slice rev[N - n : N]
    rev = {key: np.ascontiguousarray(q[::-1]) for key, q in _conditional_kernels(topology, grid).items()}
    pairs = [[(j, rev[j, i]) for j in range(n_rx) if j != i] for i in range(n_rx)]
    out = np.zeros((n_rx, N))
    out[:, 0] = siso[:, 0]
    for n in range(1, N):
        lo = N - n
        for i in range(n_rx):
            acc = 0.0
            for j, qr in pairs[i]:
                acc += np.dot(out[j, :n], qr[lo:N])
            out[i, n] = siso[i, n] - acc
    return _finish(grid, out)


def recursive_2rx(topology: Topology, grid: TimeGrid) -> tuple[HittingCurve, HittingCurve]:
    if topology.n_receivers != 2:
        raise ValueError(f"recursive_2rx needs 2 receivers, got {topology.n_receivers}")
    a, b = recursive_nrx(topology, grid)
    return a, b


def approx_nrx(topology: Topology, grid: TimeGrid) -> list[HittingCurve]:
    """One-expansion approximation: the other receivers' SISO curves feed the sums."""
    if topology.n_receivers == 1:
        return [siso_curve(SisoParams.for_receiver(topology, 0), grid)]
    siso = _siso_steps(topology, grid)
    N = grid.n_steps
    out = siso.copy()
    for (j, i), q in _conditional_kernels(topology, grid).items():
        # lag 0 is excluded: shift the kernel by one step
        shifted = np.concatenate(([0.0], q[1:N]))
        out[i] -= fftconvolve(siso[j], shifted)[:N]
    return _finish(grid, out)


def approx_2rx(topology: Topology, grid: TimeGrid) -> tuple[HittingCurve, HittingCurve]:
    if topology.n_receivers != 2:
        raise ValueError(f"approx_2rx needs 2 receivers, got {topology.n_receivers}")
    a, b = approx_nrx(topology, grid)
    return a, b
