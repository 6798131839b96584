"""Topologies of one point transmitter and absorbing spherical receivers.

Everything is stored as explicit 3-D coordinates (µm). Distances and angles
used by the channel models (center distances, virtual release points, cross
distances, eclipse angles) are derived from those coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_DIFFUSION = 79.4  # µm²/s


class TopologyError(ValueError):
    """Raised when a topology is not physically realizable."""


class ReleasePointError(TopologyError):
    """A virtual release point lies on or inside the receiver it targets."""


def _point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(3)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Receiver:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not np.all(np.isfinite(self.center)):
            raise TopologyError(f"receiver center must be finite, got {self.center}")
        if not self.radius > 0:
            raise TopologyError(f"receiver radius must be > 0, got {self.radius}")


@dataclass(frozen=True)
class Topology:
    tx: np.ndarray
    receivers: tuple[Receiver, ...]
    diffusion: float = DEFAULT_DIFFUSION

    def __post_init__(self):
        object.__setattr__(self, "tx", _point(self.tx))
        object.__setattr__(self, "receivers", tuple(self.receivers))
        object.__setattr__(self, "diffusion", float(self.diffusion))
        self.validate()

    def validate(self) -> None:
        if not self.diffusion > 0:
            raise TopologyError(f"diffusion coefficient must be > 0, got {self.diffusion}")
        if not np.all(np.isfinite(self.tx)):
            raise TopologyError("transmitter position must be finite")
        for i, rx in enumerate(self.receivers):
            d = float(np.linalg.norm(self.tx - rx.center))
            if d <= rx.radius:
                raise TopologyError(
                    f"transmitter lies inside receiver {i + 1}: "
                    f"|tx - center| = {d:.6g} <= radius {rx.radius:.6g}"
                )
        for i in range(len(self.receivers)):
            for j in range(i + 1, len(self.receivers)):
                a, b = self.receivers[i], self.receivers[j]
                d = float(np.linalg.norm(a.center - b.center))
                if d <= a.radius + b.radius:
                    raise TopologyError(
                        f"receivers {i + 1} and {j + 1} overlap: center distance "
                        f"{d:.6g} <= r{i + 1} + r{j + 1} = {a.radius + b.radius:.6g}"
                    )

    @property
    def n_receivers(self) -> int:
        return len(self.receivers)

    def center_distance(self, i: int) -> float:
        """Distance from the transmitter to the center of receiver ``i``."""
        return float(np.linalg.norm(self.tx - self.receivers[i].center))

    def separation_angle(self, i: int = 0, j: int = 1) -> float:
        """Angle at the transmitter between the centers of receivers i and j."""
        u = self.receivers[i].center - self.tx
        v = self.receivers[j].center - self.tx
        cos = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
        return math.acos(min(1.0, max(-1.0, cos)))

    def subset(self, indices) -> "Topology":
        return Topology(self.tx, [self.receivers[k] for k in indices], self.diffusion)


@dataclass(frozen=True)
class PlanarSpec2Rx:
    """Two receivers in the plane z=0, parameterized from the transmitter."""

    r1: float
    r2: float
    r01: float
    r02: float
    phi: float
    diffusion: float = DEFAULT_DIFFUSION

    def __post_init__(self):
        for name in ("r1", "r2", "r01", "r02"):
            if not getattr(self, name) > 0:
                raise TopologyError(f"{name} must be > 0, got {getattr(self, name)}")
        if not self.r01 > self.r1:
            raise TopologyError(f"transmitter inside receiver 1: r01={self.r01} <= r1={self.r1}")
        if not self.r02 > self.r2:
            raise TopologyError(f"transmitter inside receiver 2: r02={self.r02} <= r2={self.r2}")
        if not 0.0 <= self.phi <= math.pi:
            raise TopologyError(f"phi must lie in [0, pi], got {self.phi}")

    def with_angle(self, phi: float) -> "PlanarSpec2Rx":
        return PlanarSpec2Rx(self.r1, self.r2, self.r01, self.r02, phi, self.diffusion)

    def _closer_farther(self):
        near = (self.r1, self.r01)
        far = (self.r2, self.r02)
        if self.r02 < self.r01:
            near, far = far, near
        return near, far


def build_planar_2rx(spec: PlanarSpec2Rx) -> Topology:
    """Place Tx at the origin, Rx1 on +x and Rx2 at angle ``phi`` in the xy-plane."""
    c1 = (spec.r01, 0.0, 0.0)
    c2 = (spec.r02 * math.cos(spec.phi), spec.r02 * math.sin(spec.phi), 0.0)
    return Topology(
        tx=(0.0, 0.0, 0.0),
        receivers=(Receiver(c1, spec.r1), Receiver(c2, spec.r2)),
        diffusion=spec.diffusion,
    )


def siso_topology(r0: float, rr: float, diffusion: float = DEFAULT_DIFFUSION) -> Topology:
    return Topology((0.0, 0.0, 0.0), (Receiver((r0, 0.0, 0.0), rr),), diffusion)


def virtual_release_point(topology: Topology, i: int) -> np.ndarray:
    """Point on the surface of receiver ``i`` closest to the transmitter."""
    rx = topology.receivers[i]
    axis = topology.tx - rx.center
    return rx.center + rx.radius * axis / np.linalg.norm(axis)


def cross_distance(topology: Topology, from_j: int, to_i: int) -> float:
    """Distance from receiver j's virtual release point to receiver i's center."""
    if from_j == to_i:
        raise ValueError("cross distance needs two distinct receivers")
    d = float(np.linalg.norm(virtual_release_point(topology, from_j) - topology.receivers[to_i].center))
    r = topology.receivers[to_i].radius
    if d <= r:
        raise ReleasePointError(
            f"virtual release point of receiver {from_j + 1} lies inside receiver "
            f"{to_i + 1}: distance {d:.6g} <= radius {r:.6g}"
        )
    return d


def half_eclipse_angle(spec: PlanarSpec2Rx) -> float:
    """Separation at which the farther center sits on the closer receiver's tangent."""
    (r, r0), _ = spec._closer_farther()
    return math.asin(r / r0)


def no_eclipse_angle(spec: PlanarSpec2Rx) -> float:
    """Separation at which the tangent lines of both receivers coincide."""
    (rn, r0n), (rf, r0f) = spec._closer_farther()
    return math.asin(rn / r0n) + math.asin(rf / r0f)
