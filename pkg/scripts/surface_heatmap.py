"""Where molecules land on a lone receiver, against the angular prediction.

Bins simulated hit points by polar angle (measured from the axis pointing at
the transmitter) and prints the observed and predicted fraction per band.
"""

import argparse
import math

import numpy as np
from scipy import integrate

from mcsimo.montecarlo import area_density, heatmap, simulate
from mcsimo.presets import fig4_config, fig4_topology
from mcsimo.siso import SisoParams, angular_pdf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bins", type=int, default=18)
    args = ap.parse_args()

    topo = fig4_topology()
    res = simulate(topo, fig4_config(args.seed))
    edges, counts = heatmap(res.records(), topo, 0, args.bins)
    p = SisoParams.for_receiver(topo, 0)
    horizon = res.config.horizon
    pred = np.array([integrate.quad(lambda th: angular_pdf(th, horizon, p), a, b)[0]
                     for a, b in zip(edges[:-1], edges[1:])])
    emp = counts / counts.sum()
    dens = area_density(edges, counts, p.rr)

    print(f"{counts.sum()} hits of {res.config.n_molecules}; Tx-facing half holds {emp[: args.bins // 2].sum():.3f}")
    print(f"{'theta deg':>14} {'observed':>9} {'predicted':>9} {'hits/um^2':>10}")
    for lo, hi, e, q, d in zip(edges[:-1], edges[1:], emp, pred, dens):
        print(f"{math.degrees(lo):6.1f}-{math.degrees(hi):6.1f} {e:9.4f} {q:9.4f} {d:10.1f}")
    print(f"total variation distance {0.5 * np.abs(emp - pred).sum():.4f}")


if __name__ == "__main__":
    main()
