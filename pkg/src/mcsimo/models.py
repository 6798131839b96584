"""Uniform access to the channel models as hitting curves on a grid."""

from __future__ import annotations

from .closed_form import DEFAULT_EPS, approx_model, build_series, eval_cdf, eval_pdf, siso_model
from .curves import HittingCurve, TimeGrid
from .geometry import Topology
from .recursive import approx_nrx, recursive_nrx
from .siso import SisoParams

MODELS = ("recursive", "closed", "approx")


def analytic_models(topology: Topology, model: str, eps: float = DEFAULT_EPS):
    """Closed-form models per receiver, or ``None`` when the model is discrete-only."""
    n = topology.n_receivers
    if n == 1 and model != "recursive":
        return [siso_model(SisoParams.for_receiver(topology, 0))]
    if n == 2 and model == "closed":
        return [build_series(topology, r, eps) for r in (0, 1)]
    if n == 2 and model == "approx":
        return [approx_model(topology, r) for r in (0, 1)]
    if model == "closed":
        raise ValueError(f"closed-form series is only available for 1 or 2 receivers, got {n}")
    return None


def model_curves(topology: Topology, model: str, grid: TimeGrid, eps: float = DEFAULT_EPS) -> list[HittingCurve]:
    """Cumulative hitting curves of every receiver under ``model``.

    ``recursive`` is the discrete comprehensive estimator, ``closed`` the
    truncated series (two receivers at most), ``approx`` the simplified
    approximation (analytic for two receivers, discrete otherwise).
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {MODELS}")
    if model == "recursive":
        return recursive_nrx(topology, grid)
    analytic = analytic_models(topology, model, eps)
    if analytic is None:
        return approx_nrx(topology, grid)
    return [HittingCurve.from_cumulative(grid, eval_cdf(m, grid.times)) for m in analytic]


def model_rates(topology: Topology, model: str, grid: TimeGrid, eps: float = DEFAULT_EPS):
    """Hitting rate (1/s) at ``grid.times`` for analytic models, else ``None``."""
    analytic = analytic_models(topology, model, eps) if model != "recursive" else None
    if analytic is None:
        return None
    return [eval_pdf(m, grid.times) for m in analytic]
