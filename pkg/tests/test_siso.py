import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from mcsimo.geometry import build_planar_2rx, siso_topology
from mcsimo.presets import scenario
from mcsimo.siso import (
    SisoParams,
    angular_hit_density,
    angular_pdf,
    laplace_coeffs,
    siso_cdf,
    siso_pdf,
)

P = SisoParams(15.0, 6.0, 79.4)


def test_zero_time():
    assert siso_pdf(0.0, P) == 0.0
    assert siso_cdf(0.0, P) == 0.0


def test_cdf_at_one_second():
    expected = 0.4 * special.erfc(9 / math.sqrt(317.6))
    assert siso_cdf(1.0, P) == pytest.approx(expected, rel=1e-14)
    assert siso_cdf(1.0, P) == pytest.approx(0.190, abs=5e-4)


def test_cdf_limit():
    assert siso_cdf(1e12, P) == pytest.approx(0.4, abs=1e-6)


def test_peak_time():
    assert P.peak_time == pytest.approx(81 / 476.4)
    t = np.linspace(1e-4, 1.0, 200_001)
    t_max = t[np.argmax(siso_pdf(t, P))]
    assert t_max == pytest.approx(P.peak_time, abs=t[1] - t[0])


def test_pdf_is_derivative_of_cdf():
    h = 1e-4
    fd = (siso_cdf(1 + h, P) - siso_cdf(1 - h, P)) / (2 * h)
    assert siso_pdf(1.0, P) == pytest.approx(fd, rel=1e-8)


@pytest.mark.parametrize("r0, rr, D", [(15, 6, 79.4), (6, 2, 79.4), (22, 5, 10.0), (9.5, 9, 300.0)])
@pytest.mark.parametrize("t", [0.01, 0.3, 2.0, 7.5])
def test_cdf_equals_integral_of_pdf(r0, rr, D, t):
    p = SisoParams(r0, rr, D)
    value, _ = integrate.quad(lambda s: siso_pdf(s, p), 0, t, epsabs=1e-12, limit=200)
    assert siso_cdf(t, p) == pytest.approx(value, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(
    r0=st.floats(2.0, 50.0),
    frac=st.floats(0.05, 0.95),
    D=st.floats(1.0, 500.0),
    t=st.floats(1e-3, 100.0),
    lam=st.floats(0.1, 10.0),
)
def test_scale_invariance(r0, frac, D, t, lam):
    p = SisoParams(r0, frac * r0, D)
    q = SisoParams(lam * r0, lam * frac * r0, lam**2 * D)
    assert siso_cdf(t, q) == pytest.approx(siso_cdf(t, p), rel=1e-10, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(r0=st.floats(2.0, 50.0), frac=st.floats(0.01, 0.99), D=st.floats(1.0, 500.0),
       t=st.lists(st.floats(0.0, 1e3), min_size=2, max_size=20))
def test_ranges_and_monotonicity(r0, frac, D, t):
    p = SisoParams(r0, frac * r0, D)
    t = np.sort(np.array(t))
    pdf, cdf = siso_pdf(t, p), siso_cdf(t, p)
    assert np.all(pdf >= 0)
    assert np.all((cdf >= 0) & (cdf <= p.asymptote + 1e-15))
    assert np.all(np.diff(cdf) >= 0)


def test_invalid_params():
    with pytest.raises(ValueError, match="rr"):
        SisoParams(6.0, 6.0, 79.4)
    with pytest.raises(ValueError):
        SisoParams(6.0, 2.0, -1.0)


def test_angular_pdf_normalized():
    p = SisoParams(12.0, 4.0, 79.4)
    theta = np.linspace(0, math.pi, 20001)
    total = integrate.simpson(angular_pdf(theta, 1.0, p), x=theta)
    assert total == pytest.approx(1.0, abs=1e-6)
    assert angular_pdf(0.0, 1.0, p) == 0.0


def test_angular_mode_faces_transmitter():
    p = SisoParams(12.0, 4.0, 79.4)
    theta = np.linspace(0, math.pi, 2001)
    assert theta[np.argmax(angular_pdf(theta, 0.5, p))] < math.pi / 2


@pytest.mark.parametrize("t", [1e-6, 1e-5, 1e-3, 50.0])
def test_angular_pdf_normalized_across_times(t):
    p = SisoParams(12.0, 4.0, 79.4)
    theta = np.linspace(0, math.pi, 181)
    assert np.all(np.isfinite(angular_pdf(theta, t, p)))
    peak = min(1.0, 50 * math.sqrt(4 * p.D * t / (p.r0 * p.rr)))
    total, _ = integrate.quad(lambda th: angular_pdf(th, t, p), 0, math.pi, points=[peak], limit=500)
    assert total == pytest.approx(1.0, abs=1e-6)


def test_angular_hit_density_integrates_to_cdf():
    p = SisoParams(12.0, 4.0, 79.4)
    theta = np.linspace(0, math.pi, 20001)
    total = integrate.simpson(angular_hit_density(theta, 2.0, p), x=theta)
    assert total == pytest.approx(siso_cdf(2.0, p), rel=1e-6)


def test_angular_pdf_rejects_nonpositive_time():
    with pytest.raises(ValueError):
        angular_pdf(0.3, 0.0, P)


def test_laplace_coeffs_collinear():
    c = laplace_coeffs(build_planar_2rx(scenario(1, math.pi)))
    assert c.c1 == pytest.approx(1 / 3)
    assert c.c21 == pytest.approx(0.25)
    assert c.c2 == pytest.approx(5 / 16)
    assert c.k1 == pytest.approx(4 / math.sqrt(79.4))


def test_laplace_coeffs_right_angle():
    # Rx2's release point sits 11 µm from Tx, so r_{0,2->1} = sqrt(11^2 + 6^2)
    c = laplace_coeffs(build_planar_2rx(scenario(1, math.pi / 2)))
    assert c.c12 == pytest.approx(2 / math.sqrt(157), rel=1e-12)
    assert c.c21 == pytest.approx(5 / math.sqrt(272), rel=1e-12)
    assert c.k12 == pytest.approx((math.sqrt(157) - 2) / math.sqrt(79.4), rel=1e-12)


@settings(max_examples=80, deadline=None)
@given(n=st.sampled_from([1, 2, 3]), phi=st.floats(0.0, math.pi))
def test_loop_gain_below_one(n, phi):
    try:
        topo = build_planar_2rx(scenario(n, phi))
    except ValueError:
        return
    c = laplace_coeffs(topo)
    assert 0 < c.loop_gain < 1
    assert all(0 < v < 1 for v in (c.c1, c.c2, c.c12, c.c21))


def test_laplace_coeffs_needs_two_receivers():
    with pytest.raises(ValueError):
        laplace_coeffs(siso_topology(15, 6))
