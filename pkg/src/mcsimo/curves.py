"""Discrete-time hitting curves on a uniform grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_k = k * dt`` for ``k = 0..n_steps``.

    Curve sample ``k`` describes the interval ``(t_k, t_{k+1}]``.
    """

    dt: float
    n_steps: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps}")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @classmethod
    def from_horizon(cls, dt: float, horizon: float) -> "TimeGrid":
        n = int(round(horizon / dt))
        if abs(n * dt - horizon) > 1e-9 * max(horizon, dt):
            raise ValueError(f"horizon {horizon} is not a multiple of dt {dt}")
        return cls(dt, n)

    @property
    def horizon(self) -> float:
        return self.n_steps * self.dt

    @property
    def edges(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt

    @property
    def times(self) -> np.ndarray:
        """Right edges ``t_1..t_n``: the sample times of cumulative values."""
        return np.arange(1, self.n_steps + 1) * self.dt

    def truncated(self, m: int) -> "TimeGrid":
        return TimeGrid(self.dt, m)

    def same_as(self, other: "TimeGrid") -> bool:
        return self.n_steps == other.n_steps and abs(self.dt - other.dt) <= 1e-12 * self.dt


@dataclass(frozen=True, eq=False)
class HittingCurve:
    """Per-interval hitting mass and running cumulative fraction for one receiver.

    ``residual`` is the total negative mass removed when clamping model
    output to nonnegative steps (always 0 for simulated curves).
    """

    grid: TimeGrid
    step_prob: np.ndarray
    cumulative: np.ndarray
    residual: float = 0.0

    def __post_init__(self):
        for name in ("step_prob", "cumulative"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (self.grid.n_steps,):
                raise ValueError(f"{name} has shape {arr.shape}, expected ({self.grid.n_steps},)")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_steps(cls, grid: TimeGrid, steps, clamp: bool = False) -> "HittingCurve":
        steps = np.asarray(steps, dtype=float)
        residual = 0.0
        if clamp:
            neg = steps < 0
            residual = float(max(0.0, -steps[neg].sum()))
            steps = np.where(neg, 0.0, steps)
        return cls(grid, steps, np.cumsum(steps), residual)

    @classmethod
    def from_cumulative(cls, grid: TimeGrid, cumulative) -> "HittingCurve":
        cumulative = np.asarray(cumulative, dtype=float)
        return cls(grid, np.diff(cumulative, prepend=0.0), cumulative)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    @property
    def final(self) -> float:
        return float(self.cumulative[-1])
