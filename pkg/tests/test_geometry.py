import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcsimo.geometry import (
    PlanarSpec2Rx,
    Receiver,
    Topology,
    TopologyError,
    build_planar_2rx,
    cross_distance,
    half_eclipse_angle,
    no_eclipse_angle,
    siso_topology,
    virtual_release_point,
)
from mcsimo.presets import SCENARIOS, fig23, scenario


def test_scenario1_collinear_centers():
    topo = build_planar_2rx(scenario(1, math.pi))
    np.testing.assert_allclose(topo.receivers[0].center, (6, 0, 0))
    np.testing.assert_allclose(topo.receivers[1].center, (-16, 0, 0), atol=1e-12)


def test_coincident_receivers_rejected():
    with pytest.raises(TopologyError, match="overlap"):
        build_planar_2rx(PlanarSpec2Rx(1, 1, 5, 5, 0.0))


def test_fig23_center_separation():
    topo = build_planar_2rx(fig23())
    c1, c2 = (rx.center for rx in topo.receivers)
    assert np.linalg.norm(c1 - c2) == pytest.approx(21.0, abs=1e-12)


@pytest.mark.parametrize(
    "kwargs, match",
    [
        (dict(r1=0, r2=1, r01=5, r02=9, phi=1.0), "r1"),
        (dict(r1=6, r2=1, r01=5, r02=9, phi=1.0), "r01"),
        (dict(r1=1, r2=1, r01=5, r02=9, phi=4.0), "phi"),
    ],
)
def test_planar_spec_validation(kwargs, match):
    with pytest.raises(TopologyError, match=match):
        PlanarSpec2Rx(**kwargs)


def test_topology_rejects_tx_inside_and_bad_diffusion():
    with pytest.raises(TopologyError, match="inside"):
        Topology((0, 0, 0), (Receiver((1, 0, 0), 2.0),))
    with pytest.raises(TopologyError, match="diffusion"):
        Topology((0, 0, 0), (Receiver((5, 0, 0), 2.0),), diffusion=0.0)


@pytest.mark.parametrize(
    "center, expected",
    [((12, 0, 0), (8, 0, 0)), ((0, 0, 12), (0, 0, 8))],
)
def test_virtual_release_point_projection(center, expected):
    topo = Topology((0, 0, 0), (Receiver(center, 4.0),))
    np.testing.assert_allclose(virtual_release_point(topo, 0), expected)


def test_virtual_release_point_scenario1():
    topo = build_planar_2rx(scenario(1))
    np.testing.assert_allclose(virtual_release_point(topo, 0), (4, 0, 0))


@pytest.mark.parametrize(
    "phi, expected",
    [(math.pi, 20.0), (0.0, 12.0), (math.pi / 2, math.sqrt(272.0))],
)
def test_cross_distance_scenario1(phi, expected):
    # phi = 0 puts Rx2 behind Rx1 on the same ray; the shells still do not overlap
    topo = build_planar_2rx(scenario(1, phi))
    assert cross_distance(topo, 0, 1) == pytest.approx(expected, rel=1e-12)


def test_cross_distance_law_of_cosines_reverse():
    topo = build_planar_2rx(scenario(1, math.pi / 2))
    assert cross_distance(topo, 1, 0) == pytest.approx(math.sqrt(11**2 + 6**2), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    gap=st.floats(1e-6, 5.0),
    theta=st.floats(0, math.pi),
    r1=st.floats(0.5, 5.0),
    r2=st.floats(0.5, 5.0),
)
def test_release_point_stays_outside_neighbour(gap, theta, r1, r2):
    # any non-overlapping pair keeps each release point outside the other sphere,
    # so ReleasePointError only guards hand-built inconsistent inputs
    c1 = np.array([20.0, 0.0, 0.0])
    c2 = c1 + (r1 + r2 + gap) * np.array([math.cos(theta), math.sin(theta), 0.0])
    try:
        topo = Topology((0, 0, 0), (Receiver(c1, r1), Receiver(c2, r2)))
    except TopologyError:
        return
    assert cross_distance(topo, 0, 1) > r2
    assert cross_distance(topo, 1, 0) > r1


def test_cross_distance_same_receiver_rejected():
    topo = build_planar_2rx(scenario(2))
    with pytest.raises(ValueError):
        cross_distance(topo, 1, 1)


@pytest.mark.parametrize(
    "number, half, full",
    [(1, 19.47, 37.68), (2, 33.75, 39.79), (3, 33.74, 46.88)],
)
def test_eclipse_angles(number, half, full):
    # the published tick values are rounded to two decimals in either direction
    spec = scenario(number)
    assert math.degrees(half_eclipse_angle(spec)) == pytest.approx(half, abs=0.01)
    assert math.degrees(no_eclipse_angle(spec)) == pytest.approx(full, abs=0.01)


def test_scenario_table():
    assert SCENARIOS[1] == (2.0, 5.0, 6.0, 16.0)
    assert SCENARIOS[2] == (5.0, 2.0, 9.0, 19.0)
    assert SCENARIOS[3] == (5.0, 5.0, 9.0, 22.0)


def _rotation(a, b, c):
    ca, sa, cb, sb, cc, sc = math.cos(a), math.sin(a), math.cos(b), math.sin(b), math.cos(c), math.sin(c)
    rz = np.array([[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    rx = np.array([[1, 0, 0], [0, cc, -sc], [0, sc, cc]])
    return rz @ ry @ rx


angles = st.floats(0, 2 * math.pi)


@settings(max_examples=60, deadline=None)
@given(
    phi=st.floats(math.radians(60), math.pi),
    a=angles, b=angles, c=angles,
    shift=st.tuples(*[st.floats(-50, 50)] * 3),
)
def test_cross_distance_rigid_motion_invariant(phi, a, b, c, shift):
    topo = build_planar_2rx(scenario(3, phi))
    rot, off = _rotation(a, b, c), np.array(shift)
    moved = Topology(
        rot @ topo.tx + off,
        tuple(Receiver(rot @ rx.center + off, rx.radius) for rx in topo.receivers),
    )
    for j, i in ((0, 1), (1, 0)):
        assert cross_distance(moved, j, i) == pytest.approx(cross_distance(topo, j, i), rel=1e-9)


@settings(max_examples=80, deadline=None)
@given(phi=st.floats(math.radians(50), math.pi), n=st.sampled_from([1, 2, 3]))
def test_cross_distance_matches_cosine_rule(phi, n):
    # independent oracle: triangle (Tx, release point j, center i) with angle phi at Tx
    r1, r2, r01, r02 = SCENARIOS[n]
    topo = build_planar_2rx(scenario(n, phi))
    d12 = math.sqrt((r01 - r1) ** 2 + r02**2 - 2 * (r01 - r1) * r02 * math.cos(phi))
    d21 = math.sqrt((r02 - r2) ** 2 + r01**2 - 2 * (r02 - r2) * r01 * math.cos(phi))
    assert cross_distance(topo, 0, 1) == pytest.approx(d12, rel=1e-12)
    assert cross_distance(topo, 1, 0) == pytest.approx(d21, rel=1e-12)


def test_siso_topology_geometry():
    topo = siso_topology(15, 6)
    assert topo.n_receivers == 1
    assert topo.center_distance(0) == pytest.approx(15)
