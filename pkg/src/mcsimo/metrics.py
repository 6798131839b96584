"""Curve comparison: RMS error, maximum gap and correlation of cumulative curves."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .closed_form import DEFAULT_EPS
from .curves import HittingCurve, TimeGrid
from .geometry import PlanarSpec2Rx, TopologyError, build_planar_2rx
from .models import model_curves
from .montecarlo import SimConfig, simulate

SWEEP_HEADER = ("angle_deg", "rms_rx1", "rms_rx2", "maxabs_rx1", "maxabs_rx2", "pearson_rx1", "pearson_rx2", "mark")


class GridMismatchError(ValueError):
    """Curves live on different time grids."""


@dataclass(frozen=True)
class CurveComparison:
    rms: float
    max_abs: float
    pearson: float
    n_points: int


def compare(a: HittingCurve, b: HittingCurve) -> CurveComparison:
    if not a.grid.same_as(b.grid):
        raise GridMismatchError(f"grids differ: {a.grid} vs {b.grid}; resample first")
    return compare_arrays(a.cumulative, b.cumulative)


def compare_arrays(x, y) -> CurveComparison:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise GridMismatchError(f"need two equal-length samples of >= 2 points, got {x.shape} and {y.shape}")
    diff = x - y
    rms = float(np.sqrt(np.mean(diff**2)))
    max_abs = float(np.max(np.abs(diff)))
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.corrcoef(x, y)[0, 1] if np.ptp(x) > 0 and np.ptp(y) > 0 else math.nan
    # undefined (NaN) when either sample has no usable spread
    pearson = float(np.clip(r, -1.0, 1.0)) if np.isfinite(r) else math.nan
    return CurveComparison(rms, max_abs, pearson, x.size)


def resample(curve: HittingCurve, grid: TimeGrid) -> HittingCurve:
    """Linear interpolation of the cumulative curve onto ``grid``."""
    src = curve.grid
    if grid.horizon > src.horizon * (1 + 1e-12):
        raise ValueError(f"cannot extrapolate: target horizon {grid.horizon} > source horizon {src.horizon}")
    if grid.same_as(src):
        return curve
    cum = np.interp(grid.times, src.edges, np.concatenate(([0.0], curve.cumulative)))
    return HittingCurve.from_cumulative(grid, cum)


@dataclass(frozen=True)
class SweepRow:
    angle_deg: float
    comparisons: tuple[CurveComparison, ...] = ()
    mark: str = ""
    error: str | None = None

    def csv_fields(self) -> list[str]:
        if self.error is not None:
            return [repr(self.angle_deg)] + ["nan"] * 6 + [self.mark or "error"]
        c1, c2 = self.comparisons
        vals = (c1.rms, c2.rms, c1.max_abs, c2.max_abs, c1.pearson, c2.pearson)
        return [repr(self.angle_deg), *(repr(float(v)) for v in vals), self.mark]


def angle_sweep(
    spec: PlanarSpec2Rx,
    angles_deg,
    model: str = "recursive",
    oracle: SimConfig | None = None,
    grid: TimeGrid | None = None,
    eps: float = DEFAULT_EPS,
    marks: dict[float, str] | None = None,
) -> list[SweepRow]:
    """Model-versus-simulation comparison at each separation angle.

    The simulation curves are binned on the model grid (default 1 ms over
    the oracle horizon). Invalid geometries yield a row with ``error`` set.
    """
    oracle = oracle or SimConfig()
    grid = grid or TimeGrid.from_horizon(1e-3, oracle.horizon)
    sim_cfg = SimConfig(
        n_molecules=oracle.n_molecules, dt=oracle.dt, horizon=grid.horizon, seed=oracle.seed,
        diffusion=oracle.diffusion, jump_sigmas=oracle.jump_sigmas, curve_dt=grid.dt,
    )
    marks = marks or {}
    rows = []
    for deg in angles_deg:
        mark = next((label for a, label in marks.items() if abs(a - deg) < 1e-9), "")
        try:
            topo = build_planar_2rx(spec.with_angle(math.radians(deg)))
            predicted = model_curves(topo, model, grid, eps)
        except (TopologyError, ValueError) as exc:
            rows.append(SweepRow(float(deg), mark=mark, error=str(exc)))
            continue
        sim = simulate(topo, sim_cfg)
        rows.append(SweepRow(float(deg), tuple(compare(p, s) for p, s in zip(predicted, sim.curves)), mark))
    return rows


def write_sweep(path, rows: list[SweepRow]) -> None:
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow(row.csv_fields())
