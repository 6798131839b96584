import math

import pytest

from mcsimo.geometry import build_planar_2rx, siso_topology
from mcsimo.montecarlo import SimConfig, simulate
from mcsimo.presets import fig23, fig4_config, fig4_topology, scenario


@pytest.fixture(scope="session")
def scenario_topologies():
    return {n: build_planar_2rx(scenario(n, math.pi / 2)) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def fig23_topology():
    return build_planar_2rx(fig23())


@pytest.fixture(scope="session")
def siso_run():
    """Full-scale single receiver run (r0=15, rr=6), about one second."""
    topo = siso_topology(15.0, 6.0)
    cfg = SimConfig(n_molecules=50_000, dt=1e-4, horizon=5.0, seed=11, curve_dt=1e-3)
    return topo, simulate(topo, cfg)


@pytest.fixture(scope="session")
def fig23_run(fig23_topology):
    cfg = SimConfig(n_molecules=50_000, dt=1e-4, horizon=5.0, seed=5, curve_dt=1e-3)
    return fig23_topology, simulate(fig23_topology, cfg)


@pytest.fixture(scope="session")
def fig4_run():
    topo = fig4_topology()
    return topo, simulate(topo, fig4_config(seed=3))
