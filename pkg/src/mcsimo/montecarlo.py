"""Brownian-motion particle simulation against absorbing spheres.

Used as the independent oracle for every analytical model. Molecules start
at the transmitter, take Gaussian steps of standard deviation
``sqrt(2 D dt)`` per coordinate and are absorbed when a step ends inside a
receiver. The recorded hit point is where the step segment first meets the
sphere; the hit time is interpolated along the step.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._walk import walk
from .curves import HittingCurve, TimeGrid
from .geometry import Topology

DEFAULT_JUMP_SIGMAS = 7.0
RECORD_HEADER = ("molecule", "time_s", "x_um", "y_um", "z_um", "rx")


class NoHitsError(ValueError):
    """A receiver recorded no absorptions."""


@dataclass(frozen=True)
class SimConfig:
    """Simulation settings.

    ``diffusion`` overrides the topology's coefficient when given.
    ``jump_sigmas`` enables multi-step jumps for molecules farther than that
    many displacement standard deviations from every receiver; the chance of
    a skipped crossing per jump is below 3e-10 at the default of 7. Set it to
    ``None`` to force one Gaussian draw per step everywhere.
    ``curve_dt`` is the bin width of the returned curves (default ``dt``).
    """

    n_molecules: int = 50_000
    dt: float = 1e-4
    horizon: float = 5.0
    seed: int = 0
    diffusion: float | None = None
    jump_sigmas: float | None = DEFAULT_JUMP_SIGMAS
    curve_dt: float | None = None

    def __post_init__(self):
        if int(self.n_molecules) != self.n_molecules or self.n_molecules < 1:
            raise ValueError(f"n_molecules must be a positive integer, got {self.n_molecules}")
        object.__setattr__(self, "n_molecules", int(self.n_molecules))
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.horizon >= self.dt:
            raise ValueError(f"horizon must be >= dt, got horizon={self.horizon}, dt={self.dt}")
        if self.diffusion is not None and not self.diffusion > 0:
            raise ValueError(f"diffusion must be > 0, got {self.diffusion}")
        if self.jump_sigmas is not None and not self.jump_sigmas >= 3:
            raise ValueError(f"jump_sigmas must be >= 3 or None, got {self.jump_sigmas}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        # horizon must be a whole number of both steps
        _ = self.sim_grid, self.curve_grid

    @property
    def sim_grid(self) -> TimeGrid:
        return TimeGrid.from_horizon(self.dt, self.horizon)

    @property
    def curve_grid(self) -> TimeGrid:
        return TimeGrid.from_horizon(self.curve_dt or self.dt, self.horizon)


@dataclass(frozen=True)
class HitRecord:
    molecule: int
    time: float
    point: tuple[float, float, float]
    receiver: int


@dataclass(frozen=True, eq=False)
class SimResult:
    """Per-molecule outcome arrays, sorted by molecule id.

    ``receiver`` is -1 and ``time`` is NaN for molecules still free at the horizon.
    """

    config: SimConfig
    n_receivers: int
    time: np.ndarray
    receiver: np.ndarray
    point: np.ndarray
    curves: tuple[HittingCurve, ...]

    @property
    def hit_mask(self) -> np.ndarray:
        return self.receiver >= 0

    def records(self) -> list[HitRecord]:
        idx = np.flatnonzero(self.hit_mask)
        return [
            HitRecord(int(k), float(self.time[k]), tuple(float(v) for v in self.point[k]), int(self.receiver[k]))
            for k in idx
        ]

    def step_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Absorptions per simulation step for each receiver, and survivors after each step."""
        grid = self.config.sim_grid
        counts = np.zeros((self.n_receivers, grid.n_steps), dtype=np.int64)
        hit = self.hit_mask
        bins = _bin_index(self.time[hit], grid)
        np.add.at(counts, (self.receiver[hit], bins), 1)
        surviving = self.config.n_molecules - np.cumsum(counts.sum(axis=0))
        return counts, surviving

    @property
    def n_free(self) -> int:
        return int(np.count_nonzero(~self.hit_mask))


def molecule_states(seed: int, first: int, count: int) -> np.ndarray:
    """256-bit generator state for molecules ``first .. first+count-1``."""
    out = np.empty((count, 4), dtype=np.uint64)
    for row, mol in enumerate(range(first, first + count)):
        out[row] = np.random.SeedSequence([seed, mol]).generate_state(4, np.uint64)
    return out


def _run_chunk(topology, diffusion, dt, n_steps, jump, seed, first, count):
    states = molecule_states(seed, first, count)
    centers = np.array([rx.center for rx in topology.receivers], dtype=float).reshape(-1, 3)
    radii = np.array([rx.radius for rx in topology.receivers], dtype=float)
    t_steps = np.empty(count)
    rx = np.empty(count, dtype=np.int64)
    pt = np.full((count, 3), np.nan)
    walk(states, np.array(topology.tx, dtype=float), centers, radii,
         math.sqrt(2.0 * diffusion * dt), n_steps, jump, t_steps, rx, pt)
    return t_steps, rx, pt


def simulate(topology: Topology, config: SimConfig, workers: int = 1) -> SimResult:
    """Run the particle simulation; output is identical for any ``workers``."""
    if topology.n_receivers < 1:
        raise ValueError("topology has no receivers")
    diffusion = config.diffusion if config.diffusion is not None else topology.diffusion
    grid = config.sim_grid
    jump = float(config.jump_sigmas) if config.jump_sigmas is not None else 0.0
    n = config.n_molecules
    workers = max(1, min(int(workers), n))
    bounds = np.linspace(0, n, workers + 1).astype(int)
    jobs = [(topology, diffusion, config.dt, grid.n_steps, jump, config.seed, int(a), int(b - a))
            for a, b in zip(bounds[:-1], bounds[1:])]
    if workers == 1:
        parts = [_run_chunk(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _run_chunk(*job), jobs))
    t_steps = np.concatenate([p[0] for p in parts])
    receiver = np.concatenate([p[1] for p in parts])
    point = np.concatenate([p[2] for p in parts])
    time = np.where(receiver >= 0, t_steps * config.dt, np.nan)
    curve_grid = config.curve_grid
    curves = tuple(
        _curve_from_times(time[receiver == i], curve_grid, n) for i in range(topology.n_receivers)
    )
    return SimResult(config, topology.n_receivers, time, receiver, point, curves)


def _bin_index(times: np.ndarray, grid: TimeGrid) -> np.ndarray:
    # interval (t_k, t_{k+1}] -> k
    return np.clip(np.ceil(times / grid.dt).astype(np.int64) - 1, 0, grid.n_steps - 1)


def _curve_from_times(times, grid: TimeGrid, n_molecules: int) -> HittingCurve:
    times = np.asarray(times, dtype=float)
    times = times[times <= grid.horizon * (1 + 1e-12)]
    counts = np.bincount(_bin_index(times, grid), minlength=grid.n_steps)
    return HittingCurve.from_steps(grid, counts / n_molecules)


def empirical_curve(records, grid: TimeGrid, receiver: int, n_molecules: int) -> HittingCurve:
    """Bin the hit times of ``receiver`` into ``grid``; cumulative is hits-so-far / N."""
    times = [rec.time for rec in records if rec.receiver == receiver]
    return _curve_from_times(np.array(times, dtype=float), grid, n_molecules)


def polar_angles(points, topology: Topology, receiver: int) -> np.ndarray:
    """Polar angle of surface points about the receiver-center -> Tx axis."""
    rx = topology.receivers[receiver]
    axis = topology.tx - rx.center
    axis = axis / np.linalg.norm(axis)
    rel = np.asarray(points, dtype=float).reshape(-1, 3) - rx.center
    cos = rel @ axis / np.linalg.norm(rel, axis=1)
    return np.arccos(np.clip(cos, -1.0, 1.0))


def heatmap(records, topology: Topology, receiver: int, n_theta_bins: int = 18):
    """Histogram of hit polar angles on one receiver.

    Returns ``(edges, counts)`` with ``n_theta_bins`` equal-width bins over [0, pi].
    """
    pts = [rec.point for rec in records if rec.receiver == receiver]
    if not pts:
        raise NoHitsError(f"receiver {receiver + 1} has no recorded hits")
    theta = polar_angles(np.array(pts), topology, receiver)
    edges = np.linspace(0.0, math.pi, n_theta_bins + 1)
    counts, _ = np.histogram(theta, bins=edges)
    return edges, counts


def area_density(edges: np.ndarray, counts: np.ndarray, radius: float) -> np.ndarray:
    """Counts per unit surface area of each polar band."""
    areas = 2.0 * math.pi * radius**2 * (np.cos(edges[:-1]) - np.cos(edges[1:]))
    return counts / areas


def write_hit_records(path, records) -> None:
    """CSV with one row per absorption; receivers are numbered from 1."""
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_HEADER)
        for rec in records:
            writer.writerow([rec.molecule, repr(rec.time), *(repr(v) for v in rec.point), rec.receiver + 1])


def read_hit_records(path) -> list[HitRecord]:
    with open(Path(path), newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            HitRecord(int(row["molecule"]), float(row["time_s"]),
                      (float(row["x_um"]), float(row["y_um"]), float(row["z_um"])), int(row["rx"]) - 1)
            for row in reader
        ]
