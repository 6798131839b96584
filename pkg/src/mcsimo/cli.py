"""Command-line front end.

Every command writes a CSV (header row, LF endings, round-trippable floats)
plus a ``<output>.manifest`` sidecar of ``key=value`` lines. Outputs default
to ``$MCSIMO_OUTDIR`` (or the working directory).

Exit codes: 0 success, 2 invalid input, 3 series does not converge, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .closed_form import DEFAULT_EPS, ROCError, roc_check
from .curves import TimeGrid
from .geometry import (
    DEFAULT_DIFFUSION,
    PlanarSpec2Rx,
    Receiver,
    Topology,
    TopologyError,
    build_planar_2rx,
    half_eclipse_angle,
    no_eclipse_angle,
    siso_topology,
)
from .metrics import angle_sweep, compare_arrays, write_sweep
from .models import MODELS, model_curves, model_rates
from .montecarlo import DEFAULT_JUMP_SIGMAS, SimConfig, heatmap, simulate, write_hit_records
from .presets import fig4_config, fig4_topology, fig23, resolve_angle, scenario
from .siso import SisoParams, siso_cdf, siso_pdf

EXIT_OK, EXIT_INPUT, EXIT_ROC, EXIT_IO = 0, 2, 3, 4
OUTDIR_ENV = "MCSIMO_OUTDIR"


class InputError(ValueError):
    pass


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _floats(text: str, n: int | None = None, what: str = "value") -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"could not parse {what} {text!r}") from None
    if n is not None and len(vals) != n:
        raise InputError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    return vals


def _kv(items) -> dict[str, str]:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"expected key=value, got {item!r}")
        out[key.strip().lower()] = val.strip()
    return out


def _output_path(args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get(OUTDIR_ENV, ".")) / default_name


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_manifest(path: Path, args, params: dict, outputs: list[Path]) -> Path:
    manifest = path.with_name(path.name + ".manifest")
    lines = {
        "command": " ".join(["mcsimo", *args.argv]),
        "version": __version__,
        **params,
        "outputs": ",".join(str(p) for p in outputs),
    }
    with open(manifest, "w", newline="") as fh:
        for key, val in lines.items():
            fh.write(f"{key}={val}\n")
    return manifest


# ---- topology arguments ---------------------------------------------------------


def _add_topology_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("topology (choose one)")
    g.add_argument("--scenario", type=int, choices=(1, 2, 3), help="two-receiver scenario preset")
    g.add_argument("--angle", default="90", help="separation in degrees, or half-eclipse / no-eclipse")
    g.add_argument("--preset", choices=("fig23", "fig4"), help="fixed setup: fig23 (two receivers at 120 degrees) or fig4 (lone receiver, Tx on z)")
    g.add_argument("--planar", metavar="R1,R2,R01,R02,PHI_DEG", help="two receivers in a plane")
    g.add_argument("--siso", metavar="R0,RR", help="single receiver on the x-axis")
    g.add_argument("--rx", action="append", metavar="X,Y,Z,R", help="receiver by coordinates (repeatable)")
    g.add_argument("--tx", default="0,0,0", metavar="X,Y,Z", help="transmitter position for --rx")
    p.add_argument("--D", type=float, default=DEFAULT_DIFFUSION, help="diffusion coefficient (µm²/s)")


def _topology(args) -> tuple[Topology, dict]:
    chosen = [name for name in ("scenario", "preset", "planar", "siso", "rx") if getattr(args, name)]
    if len(chosen) != 1:
        raise InputError("give exactly one of --scenario, --preset, --planar, --siso, --rx")
    D = args.D
    if args.scenario:
        spec = scenario(args.scenario, diffusion=D)
        spec = spec.with_angle(resolve_angle(spec, args.angle))
        return build_planar_2rx(spec), {"scenario": args.scenario, "phi_deg": math.degrees(spec.phi), **_spec_params(spec)}
    if args.preset == "fig23":
        spec = fig23(D)
        return build_planar_2rx(spec), {"preset": "fig23", **_spec_params(spec)}
    if args.preset == "fig4":
        topo = fig4_topology(D)
        return topo, {"preset": "fig4", **_coord_params(topo)}
    if args.planar:
        r1, r2, r01, r02, deg = _floats(args.planar, 5, "--planar")
        spec = PlanarSpec2Rx(r1, r2, r01, r02, math.radians(deg), D)
        return build_planar_2rx(spec), _spec_params(spec)
    if args.siso:
        r0, rr = _floats(args.siso, 2, "--siso")
        topo = siso_topology(r0, rr, D)
        return topo, _coord_params(topo)
    tx = _floats(args.tx, 3, "--tx")
    rxs = []
    for item in args.rx:
        x, y, z, r = _floats(item, 4, "--rx")
        rxs.append(Receiver((x, y, z), r))
    topo = Topology(tx, rxs, D)
    return topo, _coord_params(topo)


def _spec_params(spec: PlanarSpec2Rx) -> dict:
    return {"r1": spec.r1, "r2": spec.r2, "r01": spec.r01, "r02": spec.r02,
            "phi_rad": repr(spec.phi), "D": spec.diffusion}


def _coord_params(topo: Topology) -> dict:
    out = {"tx": ",".join(repr(float(v)) for v in topo.tx), "D": topo.diffusion}
    for i, rx in enumerate(topo.receivers, start=1):
        out[f"rx{i}"] = ",".join(repr(float(v)) for v in (*rx.center, rx.radius))
    return out


# ---- commands ---------------------------------------------------------------------


def cmd_siso(args) -> int:
    p = SisoParams(args.r0, args.rr, args.D)
    grid = TimeGrid.from_horizon(args.dt, args.T)
    t = grid.times
    rows = zip(t, siso_pdf(t, p), siso_cdf(t, p))
    out = _output_path(args, "siso.csv")
    _write_csv(out, ("t", "pdf", "cdf"), rows)
    _write_manifest(out, args, {"r0": args.r0, "rr": args.rr, "D": args.D, "dt": args.dt, "T": args.T}, [out])
    return EXIT_OK


def cmd_simo(args) -> int:
    topo, params = _topology(args)
    grid = TimeGrid.from_horizon(args.dt, args.T)
    if topo.n_receivers == 2 and args.model != "recursive":
        margin = roc_check(topo)
        params["roc_margin"] = margin
    curves = model_curves(topo, args.model, grid, args.eps)
    rates = model_rates(topo, args.model, grid, args.eps)
    header, cols = ["t"], [grid.times]
    for i, curve in enumerate(curves, start=1):
        if rates is not None:
            header.append(f"rx{i}_pdf")
            cols.append(rates[i - 1])
        else:
            header.append(f"rx{i}_step")
            cols.append(curve.step_prob)
        header.append(f"rx{i}_cum")
        cols.append(curve.cumulative)
    out = _output_path(args, "simo.csv")
    _write_csv(out, header, zip(*cols))
    params.update(model=args.model, dt=args.dt, T=args.T, eps=args.eps,
                  residuals=",".join(repr(c.residual) for c in curves))
    _write_manifest(out, args, params, [out])
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.preset == "fig4" and not args.keep_config:
        base = fig4_config(args.seed)
        args.N, args.sim_dt, args.T = base.n_molecules, base.dt, base.horizon
    topo, params = _topology(args)
    config = SimConfig(
        n_molecules=int(args.N), dt=args.sim_dt, horizon=args.T, seed=args.seed,
        jump_sigmas=None if args.exact_steps else DEFAULT_JUMP_SIGMAS, curve_dt=args.curve_dt,
    )
    result = simulate(topo, config, workers=args.workers)
    out = _output_path(args, "simulate.csv")
    header, cols = ["t"], [config.curve_grid.times]
    for i, curve in enumerate(result.curves, start=1):
        header += [f"rx{i}_step", f"rx{i}_cum"]
        cols += [curve.step_prob, curve.cumulative]
    _write_csv(out, header, zip(*cols))
    outputs = [out]
    records = result.records()
    if args.records:
        write_hit_records(args.records, records)
        outputs.append(Path(args.records))
    if args.heatmap:
        opts = _kv(args.heatmap)
        k = int(opts.get("rx", 1))
        bins = int(opts.get("bins", 18))
        if not 1 <= k <= topo.n_receivers:
            raise InputError(f"heatmap receiver rx={k} out of range 1..{topo.n_receivers}")
        edges, counts = heatmap(records, topo, k - 1, bins)
        hpath = out.with_name(out.stem + f"_heatmap_rx{k}.csv")
        _write_csv(hpath, ("theta_lo", "theta_hi", "count"), zip(edges[:-1], edges[1:], counts))
        outputs.append(hpath)
    params.update(N=config.n_molecules, dt=config.dt, T=config.horizon, seed=config.seed,
                  curve_dt=config.curve_grid.dt, jump_sigmas=config.jump_sigmas, workers=args.workers,
                  free_molecules=result.n_free)
    _write_manifest(out, args, params, outputs)
    return EXIT_OK


def _read_table(path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(v) for v in row] for row in reader if row], dtype=float)
    return header, data.reshape(-1, len(header))


def _cumulative_columns(header) -> list[str]:
    return [h for h in header if h.endswith("_cum") or h == "cdf"]


def cmd_compare(args) -> int:
    ha, a = _read_table(args.a)
    hb, b = _read_table(args.b)
    if "t" not in ha or "t" not in hb:
        raise InputError("both tables need a 't' column")
    ta, tb = a[:, ha.index("t")], b[:, hb.index("t")]
    # compare on the coarser of the two grids
    if len(tb) < len(ta):
        ha, a, ta, hb, b, tb = hb, b, tb, ha, a, ta
    if ta[-1] > tb[-1] * (1 + 1e-12):
        raise InputError("tables cover different horizons; cannot compare without extrapolation")
    rows = []
    for col in _cumulative_columns(ha):
        if col not in hb:
            continue
        xa = a[:, ha.index(col)]
        xb = np.interp(ta, np.concatenate(([0.0], tb)), np.concatenate(([0.0], b[:, hb.index(col)])))
        c = compare_arrays(xa, xb)
        rows.append((col, c.rms, c.max_abs, c.pearson, c.n_points))
    if not rows:
        raise InputError("no shared cumulative columns (*_cum or cdf) to compare")
    out = _output_path(args, "compare.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("column", "rms", "max_abs", "pearson", "n_points"))
        for col, *vals in rows:
            writer.writerow([col, *(_fmt(v) for v in vals)])
    for col, rms, max_abs, pearson, n in rows:
        print(f"{col}: rms={rms:.6g} max_abs={max_abs:.6g} pearson={pearson:.6g} n={n}")
    _write_manifest(out, args, {"a": args.a, "b": args.b}, [out])
    return EXIT_OK


def _parse_angles(text: str) -> list[float]:
    if ":" in text:
        parts = _floats(text.replace(":", ","), 3, "--angles start:stop:step")
        start, stop, step = parts
        if step <= 0:
            raise InputError("angle step must be > 0")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + k * step for k in range(n)]
    return _floats(text, None, "--angles")


def cmd_sweep(args) -> int:
    if args.scenario:
        spec = scenario(args.scenario, diffusion=args.D)
    elif args.planar:
        r1, r2, r01, r02 = _floats(args.planar, 4, "--planar")
        spec = PlanarSpec2Rx(r1, r2, r01, r02, 0.0, args.D)
    else:
        raise InputError("give --scenario or --planar R1,R2,R01,R02")
    half = math.degrees(half_eclipse_angle(spec))
    full = math.degrees(no_eclipse_angle(spec))
    angles = sorted(set(_parse_angles(args.angles)) | {half, full})
    mc = _kv(args.mc)
    oracle = SimConfig(
        n_molecules=int(float(mc.get("n", 5e4))), dt=float(mc.get("dt", 1e-4)), horizon=args.T,
        seed=int(mc.get("seed", 0)),
    )
    grid = TimeGrid.from_horizon(args.dt, args.T)
    rows = angle_sweep(spec, angles, args.model, oracle, grid, args.eps,
                       marks={half: "half-eclipse", full: "no-eclipse"})
    out = _output_path(args, "sweep.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    write_sweep(out, rows)
    params = {**_spec_params(spec), "model": args.model, "dt": args.dt, "T": args.T,
              "mc_N": oracle.n_molecules, "mc_dt": oracle.dt, "mc_seed": oracle.seed,
              "rms_grid": f"cumulative curves at {grid.n_steps} uniform points over (0,{args.T}]",
              "half_eclipse_deg": half, "no_eclipse_deg": full}
    errors = [f"{r.angle_deg}:{r.error}" for r in rows if r.error]
    if errors:
        params["row_errors"] = " | ".join(errors)
    _write_manifest(out, args, params, [out])
    return EXIT_OK


# ---- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcsimo", description="SIMO diffusion channel models and simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("siso", help="single-receiver hitting rate and cumulative fraction")
    p.add_argument("--r0", type=float, required=True, help="Tx to receiver center distance (µm)")
    p.add_argument("--rr", type=float, required=True, help="receiver radius (µm)")
    p.add_argument("--D", type=float, default=DEFAULT_DIFFUSION)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--T", type=float, default=5.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_siso)

    p = sub.add_parser("simo", help="multi-receiver channel model curves")
    _add_topology_args(p)
    p.add_argument("--model", choices=MODELS, default="recursive")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--T", type=float, default=5.0)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="series truncation amplitude")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simo)

    p = sub.add_parser("simulate", help="Brownian-motion particle simulation")
    _add_topology_args(p)
    p.add_argument("--N", type=float, default=5e4, help="number of molecules")
    p.add_argument("--dt", dest="sim_dt", type=float, default=1e-4, help="simulation step (s)")
    p.add_argument("--curve-dt", type=float, default=1e-3, help="bin width of the output curves (s)")
    p.add_argument("--T", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact-steps", action="store_true", help="one Gaussian draw per step, no far-field jumps")
    p.add_argument("--keep-config", action="store_true", help="with --preset fig4, keep --N/--dt/--T as given")
    p.add_argument("--records", help="hit-record CSV path")
    p.add_argument("--heatmap", nargs="+", metavar="KEY=VAL", help="polar-angle histogram, e.g. rx=1 bins=18")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="RMS / max gap / correlation between two CSV outputs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="model versus simulation over separation angles")
    p.add_argument("--scenario", type=int, choices=(1, 2, 3))
    p.add_argument("--planar", metavar="R1,R2,R01,R02")
    p.add_argument("--D", type=float, default=DEFAULT_DIFFUSION)
    p.add_argument("--angles", default="10:180:10", help="start:stop:step or comma list, degrees")
    p.add_argument("--model", choices=MODELS, default="recursive")
    p.add_argument("--mc", nargs="*", metavar="KEY=VAL", help="simulation settings: N=, dt=, seed=")
    p.add_argument("--dt", type=float, default=1e-3, help="model grid step (s)")
    p.add_argument("--T", type=float, default=5.0)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args)
    except ROCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ROC
    except (InputError, TopologyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
