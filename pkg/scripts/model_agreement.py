"""Closed form, approximation and recursion compared across angles, with timings."""

import argparse
import math
import time

import numpy as np

from mcsimo.closed_form import approx_cdf, build_series, eval_cdf
from mcsimo.curves import TimeGrid
from mcsimo.geometry import build_planar_2rx, no_eclipse_angle
from mcsimo.metrics import compare_arrays
from mcsimo.presets import scenario
from mcsimo.recursive import recursive_2rx


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dt", type=float, default=1e-3, help="recursion step")
    ap.add_argument("--angles", type=float, nargs="*", default=[10, 20, 30, 45, 60, 90, 120, 180])
    args = ap.parse_args()
    grid = TimeGrid.from_horizon(args.dt, 5.0)

    for n in (1, 2, 3):
        spec = scenario(n)
        print(f"scenario {n} (no-eclipse {math.degrees(no_eclipse_angle(spec)):.2f} deg)")
        print(f"{'angle':>7} {'closed-rec':>11} {'approx-rec':>11} {'pearson':>9} {'rec s':>7}")
        for deg in args.angles:
            try:
                topo = build_planar_2rx(spec.with_angle(math.radians(deg)))
            except ValueError as exc:
                print(f"{deg:7.1f}  invalid: {exc}")
                continue
            start = time.perf_counter()
            rec = recursive_2rx(topo, grid)
            elapsed = time.perf_counter() - start
            closed = max(np.max(np.abs(eval_cdf(build_series(topo, i), grid.times) - rec[i].cumulative))
                         for i in (0, 1))
            cmp = [compare_arrays(approx_cdf(topo, i, grid.times), rec[i].cumulative) for i in (0, 1)]
            print(f"{deg:7.1f} {closed:11.2e} {max(c.max_abs for c in cmp):11.4f} "
                  f"{min(c.pearson for c in cmp):9.6f} {elapsed:7.2f}")


if __name__ == "__main__":
    main()
