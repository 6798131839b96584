"""Channel estimation for diffusion-based molecular communication with several absorbing receivers."""

__version__ = "0.1.0"

from .closed_form import ROCError, approx_cdf, approx_pdf, build_series, eval_cdf, eval_pdf, roc_check
from .curves import HittingCurve, TimeGrid
from .geometry import (
    PlanarSpec2Rx,
    Receiver,
    ReleasePointError,
    Topology,
    TopologyError,
    build_planar_2rx,
    cross_distance,
    half_eclipse_angle,
    no_eclipse_angle,
    virtual_release_point,
)
from .metrics import angle_sweep, compare, resample
from .montecarlo import SimConfig, heatmap, simulate
from .recursive import approx_2rx, approx_nrx, recursive_2rx, recursive_nrx, siso_curve
from .siso import SisoParams, angular_pdf, laplace_coeffs, siso_cdf, siso_pdf
