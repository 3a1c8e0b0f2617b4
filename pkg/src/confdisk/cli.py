"""Command-line front end.

    confdisk <command> --scene <path> [--t re,im] [--n N] [--seed S] [--threads K]
             [--tol X] [--out PATH] [--format json|csv] [--no-timing]

Exit codes: 0 success, 1 usage error, 2 numeric non-convergence, 3 invalid scene.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import export
from .confmap import boundary_correspondence
from .domains import SceneError
from .maps import DomainError, NumericError
from .measure import decompose, harmonic_measure, measure_distance
from .motion import (TAU, PreconditionError, default_t_grid, fitness_report, harmonicity_scan,
                     log_radius)
from .potential import (boundary_support, check_energy_radius, energy_pushforward_scan,
                        equilibrium_measure)
from .scene import Scene, load
from .wos import walk_on_spheres
from .zipper import ZipperError
from .zhukovskii import PreconditionError as LiftPreconditionError
from .zhukovskii import zhukovskii_preimage

COMMANDS = ("radius", "map", "hmeasure", "decompose", "energy", "equilibrium", "wos",
            "zhukovskii", "fitness", "harmonicity", "motion-scan")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_SCENE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    try:
        z = complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError("t must be finite")
    return z


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="confdisk", description="Conformal maps, harmonic measure and motions "
                                             "of pointed disks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--scene", required=True, help="scene JSON file")
    p.add_argument("--t", type=parse_complex, help="motion parameter as re,im")
    p.add_argument("--n", type=_positive_int, help="discretization size")
    p.add_argument("--seed", type=_seed, help="64-bit seed for walk-on-spheres")
    p.add_argument("--threads", type=_positive_int, help="worker pool size")
    p.add_argument("--tol", type=_positive_float, help="solver / verdict tolerance")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock timing")
    return p


# ------------------------------------------------------------------ commands


class Context:
    def __init__(self, scene: Scene, args):
        self.scene = scene
        self.n = args.n or scene.option("n", 512)
        self.seed = args.seed if args.seed is not None else scene.option("seed", 0xC0FFEE)
        self.threads = args.threads or scene.option("threads", os.cpu_count() or 1)
        self.tol = args.tol if args.tol is not None else scene.option("tol")
        t = args.t if args.t is not None else scene.option("t")
        if t is not None and abs(t) >= 1:
            raise UsageError("--t must satisfy |t| < 1")
        self.t = t
        self.samples = scene.option("samples", 100_000)
        self.warnings: list = []

    def options(self) -> dict:
        return {"n": self.n, "seed": self.seed, "threads": self.threads, "tol": self.tol,
                "t": self.t, "samples": self.samples}

    def riemann_map(self):
        sc = self.scene
        if sc.domain is not None and self.t is not None and "t" not in sc.domain:
            # a t-independent domain: --t selects the motion's disk if there is one
            if sc.motion is not None:
                return sc.build_motion(self.n).riemann_map(self.t)
        if sc.domain is None:
            return sc.build_motion(self.n).riemann_map(0j if self.t is None else self.t)
        return sc.build_map(self.n, self.t)

    def motion(self):
        M = self.scene.build_motion(self.n)
        if M is None:
            raise SceneError("this command needs a motion in the scene")
        return M

    def t_grid(self):
        if self.t is not None:
            return np.array([self.t])
        grid = self.scene.option("t_grid")
        return default_t_grid() if grid is None else np.asarray(grid, complex)


def _germ(g) -> dict:
    ge = g.germ()
    return {"model": g.model, "normalization": g.normalization,
            "center": ge.point, "radius": g.conformal_radius,
            "log_radius": math.log(g.conformal_radius)}


def _kv_csv(results: dict):
    rows = [(k, v) for k, v in results.items() if not isinstance(v, (list, dict))]
    return ("key", "value"), rows


def cmd_radius(ctx: Context):
    sc = ctx.scene
    if sc.motion is not None and (sc.domain is None or "t" not in sc.domain):
        M = ctx.motion()
        t = 0j if ctx.t is None else ctx.t
        r = M.radius(t)
        res = {"t": t, "radius": r, "log_radius": math.log(r), "source": "motion"}
    else:
        g = ctx.riemann_map()
        res = {"t": ctx.t, **_germ(g), "source": "domain"}
    return res, _kv_csv(res)


def cmd_map(ctx: Context):
    g = ctx.riemann_map()
    c = boundary_correspondence(g, ctx.n)
    res = {**_germ(g), "marked_angle": g.marked_angle, "chain": g.map.describe(),
           "correspondence": [[a, z, conv, tag] for a, z, conv, tag in c.rows()]}
    if not np.all(c.converged):
        ctx.warnings.append(f"{int(np.sum(~c.converged))} radial limits did not converge")
    return res, (export.CORRESPONDENCE_HEADER, list(export.correspondence_rows(c)))


def _atoms(mu):
    return [[p, z, w, cum, tag] for p, z, w, cum, tag in mu.rows()]


def cmd_hmeasure(ctx: Context):
    g = ctx.riemann_map()
    om = harmonic_measure(g, ctx.n)
    ctx.warnings += om.diagnostics.get("warnings", [])
    res = {"n": ctx.n, "atoms": len(om), "mass": om.mass,
           "nonconvergent": om.diagnostics.get("nonconvergent", 0),
           "measure": _atoms(om)}
    return res, (export.MEASURE_HEADER, list(export.measure_rows(om)))


def cmd_decompose(ctx: Context):
    g = ctx.riemann_map()
    om = harmonic_measure(g, ctx.n)
    ctx.warnings += om.diagnostics.get("warnings", [])
    d = decompose(om, g.domain.marked_point)
    res = {"n": ctx.n, "marked_point": g.domain.marked_point,
           "alpha": d.alpha.mass, "beta_minus": d.beta_minus.mass, "beta_plus": d.beta_plus.mass,
           "total": float(d.total().sum()), "measure": _atoms(om)}
    return res, (export.MEASURE_HEADER, list(export.measure_rows(om)))


def _require_exterior(g, what: str):
    if g.model != "exterior":
        raise SceneError(f"{what} needs a domain centered at infinity")


def cmd_energy(ctx: Context):
    g = ctx.riemann_map()
    _require_exterior(g, "energy")
    rep = check_energy_radius(g, ctx.n)
    res = rep.as_dict()
    return res, _kv_csv(res)


def cmd_equilibrium(ctx: Context):
    g = ctx.riemann_map()
    bd = g.domain.boundary
    pts, cells = boundary_support(bd, ctx.n)
    tol = 1e-9 if ctx.tol is None else ctx.tol
    mu, rep = equilibrium_measure(pts, bd, cells, tol=tol, max_iter=50_000)
    res = rep.as_dict()
    if g.model == "exterior":
        lr = math.log(g.conformal_radius)
        res["log_rad"] = lr
        res["discrepancy"] = abs(rep.energy + lr)
        res["ks_vs_harmonic"] = measure_distance(mu, harmonic_measure(g, ctx.n))
    res["measure"] = _atoms(mu)
    return res, (export.MEASURE_HEADER, list(export.measure_rows(mu)))


def cmd_wos(ctx: Context):
    g = ctx.riemann_map()
    mu = walk_on_spheres(g.domain, ctx.samples, ctx.seed, threads=ctx.threads)
    ctx.warnings += mu.diagnostics.get("warnings", [])
    om = harmonic_measure(g, ctx.n)
    res = {"samples": ctx.samples, "seed": ctx.seed, "lost": mu.diagnostics.get("lost", 0),
           "ks": measure_distance(mu, om)}
    return res, (export.MEASURE_HEADER, list(export.measure_rows(mu)))


def cmd_zhukovskii(ctx: Context):
    g = ctx.riemann_map()
    lift = zhukovskii_preimage(g, ctx.n)
    ru, rv = g.conformal_radius, lift.lifted_map.conformal_radius
    res = {"radius_base": ru, "radius_lift": rv, "radius_difference": abs(rv - ru),
           "lift_residual": lift.lift_residual()}
    return res, _kv_csv(res)


def cmd_fitness(ctx: Context):
    M = ctx.motion()
    rep = fitness_report(M, ctx.t_grid(), n=ctx.n, threads=ctx.threads)
    for r in rep.records:
        for cond, msg in sorted(r.errors.items()):
            ctx.warnings.append(f"t={r.t.real:g},{r.t.imag:g} {cond}: {msg}")
    res = {**rep.as_dict(), "verdict_counts": rep.verdict_counts()}
    return res, (export.FITNESS_HEADER, list(rep.rows()))


def cmd_harmonicity(ctx: Context):
    M = ctx.motion()
    c = 0j if ctx.t is None else ctx.t
    radii = [(1 - abs(c)) * f for f in (0.25, 0.5, 0.75)]
    tol = TAU["vi"] if ctx.tol is None else ctx.tol
    rep = harmonicity_scan(log_radius(M), [c], radii, 16, tol)
    res = rep.as_dict()
    rows = [(c.real, c.imag, r, v) for r, v in zip(radii, rep.residuals[0])]
    return res, (("center_re", "center_im", "radius", "residual"), rows)


def cmd_motion_scan(ctx: Context):
    M = ctx.motion()
    grid = ctx.t_grid()
    radii = [M.radius(t) for t in grid]
    scan = None
    if M.center_is_inf:
        scan = energy_pushforward_scan(M, grid, ctx.n, 1e-3 if ctx.tol is None else ctx.tol)
    rows, out = [], []
    for k, t in enumerate(grid):
        h = e = above = None
        if scan is not None:
            r = scan.rows[k]
            h, e, above = r.h, r.energy, r.above
        rows.append((t.real, t.imag, radii[k], math.log(radii[k]), h, e, above))
        out.append({"t": t, "radius": radii[k], "log_radius": math.log(radii[k]),
                    "h": h, "energy": e, "above": above})
    res = {"rows": out,
           "mean_value_residuals": None if scan is None else scan.as_dict()["mean_value_residuals"]}
    header = ("t_re", "t_im", "radius", "log_radius", "h", "energy", "above")
    return res, (header, rows)


DISPATCH = {
    "radius": cmd_radius, "map": cmd_map, "hmeasure": cmd_hmeasure, "decompose": cmd_decompose,
    "energy": cmd_energy, "equilibrium": cmd_equilibrium, "wos": cmd_wos,
    "zhukovskii": cmd_zhukovskii, "fitness": cmd_fitness, "harmonicity": cmd_harmonicity,
    "motion-scan": cmd_motion_scan,
}


# ------------------------------------------------------------------ driver


def _emit(args, envelope: dict, table):
    text = json.dumps(export.jsonable(envelope), indent=2) + "\n"
    if args.format == "json":
        if args.out:
            export.write_text(args.out, text)
        else:
            sys.stdout.write(text)
        return
    header, rows = table
    csv_text = export.csv_text(header, rows)
    if args.out:
        out = Path(args.out)
        export.write_text(out, csv_text)
        side = out.with_suffix(".json") if out.suffix != ".json" else \
            out.with_name(out.stem + ".envelope.json")
        export.write_text(side, text)
    else:
        sys.stdout.write(csv_text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"confdisk: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        scene = load(args.scene)
        ctx = Context(scene, args)
        results, table = DISPATCH[args.command](ctx)
    except UsageError as e:
        print(f"confdisk: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, DomainError) as e:
        print(f"confdisk: numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SceneError, PreconditionError, LiftPreconditionError, ZipperError, ValueError) as e:
        print(f"confdisk: invalid scene: {e}", file=sys.stderr)
        return EXIT_SCENE
    envelope = {
        "command": args.command,
        "scene_digest": scene.digest,
        "options": ctx.options(),
        "results": results,
        "warnings": ctx.warnings,
        "timing": None if args.no_timing else {"seconds": time.perf_counter() - t0},
    }
    try:
        _emit(args, envelope, table)
    except OSError as e:
        print(f"confdisk: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
