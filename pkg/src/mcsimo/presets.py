"""Reference topologies: three two-receiver scenarios and two fixed setups."""

from __future__ import annotations

import math

from .geometry import DEFAULT_DIFFUSION, PlanarSpec2Rx, Receiver, Topology, half_eclipse_angle, no_eclipse_angle
from .montecarlo import SimConfig

# (r1, r2, r01, r02) in µm
SCENARIOS = {
    1: (2.0, 5.0, 6.0, 16.0),  # smaller receiver closer to Tx
    2: (5.0, 2.0, 9.0, 19.0),  # larger receiver closer to Tx
    3: (5.0, 5.0, 9.0, 22.0),  # equal radii
}


def scenario(number: int, phi: float = math.pi / 2, diffusion: float = DEFAULT_DIFFUSION) -> PlanarSpec2Rx:
    try:
        r1, r2, r01, r02 = SCENARIOS[number]
    except KeyError:
        raise ValueError(f"unknown scenario {number}; choose from {sorted(SCENARIOS)}") from None
    return PlanarSpec2Rx(r1, r2, r01, r02, phi, diffusion)


def resolve_angle(spec: PlanarSpec2Rx, angle: str | float) -> float:
    """Angle in radians from degrees or the names ``half-eclipse`` / ``no-eclipse``."""
    if isinstance(angle, str):
        key = angle.strip().lower()
        if key == "half-eclipse":
            return half_eclipse_angle(spec)
        if key == "no-eclipse":
            return no_eclipse_angle(spec)
        angle = float(key)
    return math.radians(float(angle))


def fig23(diffusion: float = DEFAULT_DIFFUSION) -> PlanarSpec2Rx:
    """Two receivers with 2π/3 separation (the motivating stolen-molecules example)."""
    return PlanarSpec2Rx(r1=6.0, r2=3.0, r01=15.0, r02=9.0, phi=2 * math.pi / 3, diffusion=diffusion)


def fig4_topology(diffusion: float = DEFAULT_DIFFUSION) -> Topology:
    """Single receiver at the origin, Tx on the z-axis."""
    return Topology((0.0, 0.0, 12.0), (Receiver((0.0, 0.0, 0.0), 4.0),), diffusion)


def fig4_config(seed: int = 0) -> SimConfig:
    return SimConfig(n_molecules=50_000, dt=1e-4, horizon=5.0, seed=seed)
