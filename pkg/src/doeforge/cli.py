"""Command-line interface.

Subcommands: ``gen`` writes a point file plus its regeneration manifest,
``compare`` scores methods against each other, ``regen`` replays a
manifest. Exit codes: 0 success, 1 runtime generation failure, 2 usage
error. ``DOE_FORGE_THREADS`` caps compare's worker count (0 = auto).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

import numpy as np

from . import io, methods
from .core import to_unit_cube
from .errors import DoeForgeError, SizeError
from .methods import UsageError
from .metrics import (
    MetricReport,
    centered_l2_discrepancy,
    maximin_distance,
    star_discrepancy_smallcase,
)

_METRICS = ("maximin", "centered-l2", "star-disc")


def _parse_bounds(text):
    out = []
    for part in text.split(";"):
        pieces = part.split(",")
        if len(pieces) != 2:
            raise UsageError(f"bad bounds segment {part!r}, want 'lo,hi'")
        try:
            lo, hi = float(pieces[0]), float(pieces[1])
        except ValueError:
            raise UsageError(f"bad bounds segment {part!r}") from None
        out.append([lo, hi])
    return out


def build_parser():
    p = argparse.ArgumentParser(
        prog="doe-forge",
        description="Design-of-experiments point-set generator and scorer.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a point set")
    g.add_argument("--method", required=True, choices=methods.METHODS)
    g.add_argument("--dim", type=int)
    g.add_argument("--count", type=int)
    g.add_argument("--level", type=int, help="grid level (sparse/full grid)")
    g.add_argument("--bounds", help='per-dimension "lo,hi;lo,hi;..."')
    g.add_argument("--seed", type=int)
    g.add_argument("--out", required=True)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--levels", type=int, choices=(2, 3),
                   help="factorial level count")
    g.add_argument("--generators",
                   help='fractional defining relations "D=ABC,E=ABD"')
    g.add_argument("--variant", choices=("ccc", "cci", "ccf"),
                   help="central-composite flavour")
    g.add_argument("--alpha", type=float, help="central-composite axial distance")
    g.add_argument("--oa", help="builtin array name or OA CSV path")
    g.add_argument("--target", choices=("uniform", "gaussian"),
                   help="mh chain target")
    g.add_argument("--mu", type=float, help="gaussian target mean")
    g.add_argument("--sigma", type=float, help="gaussian target std-dev")
    g.add_argument("--mh-scale", type=float, help="mh proposal std-dev")
    g.add_argument("--burn-in", type=int, help="mh burn-in steps")
    g.add_argument("--thin", type=int, help="mh thinning factor")
    g.add_argument("--n-iter", type=int, help="maximin-lhs / cvt iterations")
    g.add_argument("--m", type=int,
                   help="maximin-lhs swaps or cvt samples per iteration")
    g.add_argument("--tol", type=float, help="cvt displacement tolerance")
    g.add_argument("--order", choices=("plain", "gray"), help="sobol ordering")
    g.add_argument("--include-zero", action="store_true",
                   help="start sequences at index 0 (origin point)")
    g.add_argument("--grid-levels", help='full-grid per-dimension levels "3,3"')
    g.add_argument("--theta-deg", type=float,
                   help="fixed rotation angle (degrees)")
    g.add_argument("--objective", choices=("maximin", "centered-l2"),
                   help="rotation search objective")
    g.add_argument("--angle-step", type=float,
                   help="rotation search step (degrees)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compare", help="score methods against each other")
    c.add_argument("--methods", required=True, help="comma-separated list")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--count", type=int, required=True)
    c.add_argument("--seeds", type=int, default=1,
                   help="seeds per seeded method")
    c.add_argument("--metrics", default="maximin,centered-l2",
                   help=f"comma list from {_METRICS}")
    c.add_argument("--out", required=True, help="report JSON path")
    c.set_defaults(func=cmd_compare)

    r = sub.add_parser("regen", help="regenerate a point file from a manifest")
    r.add_argument("manifest")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_regen)
    return p


_OPTION_FLAGS = {
    "levels": "levels",
    "generators": "generators",
    "variant": "variant",
    "alpha": "alpha",
    "oa": "oa",
    "target": "target",
    "mu": "mu",
    "sigma": "sigma",
    "mh_scale": "proposal_scale",
    "burn_in": "burn_in",
    "thin": "thin",
    "n_iter": "n_iter",
    "m": "m",
    "tol": "tol",
    "order": "order",
    "theta_deg": "theta_deg",
    "objective": "objective",
    "angle_step": "angle_step_deg",
}


def _collect_options(args):
    options = {}
    for attr, key in _OPTION_FLAGS.items():
        val = getattr(args, attr, None)
        if val is not None:
            options[key] = val
    if getattr(args, "include_zero", False):
        options["include_zero"] = True
    if options.get("generators"):
        options["generators"] = [
            g for g in options["generators"].replace(";", ",").split(",") if g
        ]
    if getattr(args, "grid_levels", None):
        options["levels"] = [int(v) for v in args.grid_levels.split(",")]
    return options


def cmd_gen(args):
    options = _collect_options(args)
    patch = methods.resolve_count(args.method, args.dim, args.count)
    for key, val in patch.items():
        options.setdefault(key, val)
    request = {
        "method": args.method,
        "dim": args.dim,
        "count": args.count,
        "level": args.level,
        "seed": args.seed,
        "options": options,
        "bounds": _parse_bounds(args.bounds) if args.bounds else None,
    }
    s, manifest = io.generate_and_write(request, args.out, args.format)
    print(f"wrote {s.n} x {s.dims} points to {args.out} "
          f"(manifest {args.out}.manifest.json)")
    return 0


def _score_job(method, seed, dim, count, metric_names):
    t0 = time.perf_counter()
    options = methods.resolve_count(method, dim, count)
    s = methods.generate(method, dim=dim, count=count, seed=seed,
                         options=options)
    u = to_unit_cube(s)
    vals = {"maximin": None, "centered-l2": None, "star-disc": None}
    if "maximin" in metric_names:
        vals["maximin"] = maximin_distance(u) if u.n >= 2 else 0.0
    if "centered-l2" in metric_names:
        vals["centered-l2"] = centered_l2_discrepancy(u)
    if "star-disc" in metric_names:
        try:
            vals["star-disc"] = star_discrepancy_smallcase(u)
        except SizeError:
            vals["star-disc"] = None  # beyond the exact-case budget
    return MetricReport(
        method=method,
        n=u.n,
        d=u.dims,
        seed=seed,
        maximin=vals["maximin"],
        centered_l2=vals["centered-l2"],
        star_disc=vals["star-disc"],
        elapsed=time.perf_counter() - t0,
    )


def _workers():
    raw = os.environ.get("DOE_FORGE_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    return k if k > 0 else (os.cpu_count() or 1)


def cmd_compare(args):
    names = [m for m in args.methods.split(",") if m]
    for m in names:
        if m not in methods.METHODS:
            raise UsageError(f"unknown method {m!r}")
    metric_names = [m for m in args.metrics.split(",") if m]
    for m in metric_names:
        if m not in _METRICS:
            raise UsageError(f"unknown metric {m!r}, choose from {_METRICS}")
    jobs = []
    for m in names:
        if m in methods.SEEDED:
            jobs += [(m, seed) for seed in range(args.seeds)]
        else:
            jobs.append((m, None))
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        futures = [
            pool.submit(_score_job, m, seed, args.dim, args.count, metric_names)
            for m, seed in jobs
        ]
        reports = [f.result() for f in futures]
    reports.sort(key=lambda r: (r.method, -1 if r.seed is None else r.seed))

    summary = {}
    for m in names:
        rows = [r for r in reports if r.method == m]
        summary[m] = {"seedless": rows[0].seed is None, "runs": len(rows)}
        for metric, attr in (
            ("maximin", "maximin"),
            ("centered-l2", "centered_l2"),
            ("star-disc", "star_disc"),
        ):
            if metric not in metric_names:
                continue
            vals = [getattr(r, attr) for r in rows if getattr(r, attr) is not None]
            if not vals:
                summary[m][metric] = None
                continue
            q1, med, q3 = np.percentile(vals, [25, 50, 75])
            summary[m][metric] = {"median": med, "q1": q1, "q3": q3}

    doc = {
        "request": {
            "methods": names,
            "dim": args.dim,
            "count": args.count,
            "seeds": args.seeds,
            "metrics": metric_names,
        },
        "reports": [asdict(r) for r in reports],
        "summary": summary,
    }
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")

    csv_path = (args.out[:-5] if args.out.endswith(".json") else args.out) + ".csv"
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("method,seed,metric,value\n")
        for r in reports:
            for metric, attr in (
                ("maximin", "maximin"),
                ("centered-l2", "centered_l2"),
                ("star-disc", "star_disc"),
            ):
                if metric not in metric_names:
                    continue
                val = getattr(r, attr)
                if val is None:
                    continue
                seed = "" if r.seed is None else r.seed
                fh.write(f"{r.method},{seed},{metric},{io.format_float(val)}\n")
    print(f"wrote {args.out} and {csv_path}")
    return 0


def cmd_regen(args):
    manifest = io.read_manifest(args.manifest)
    s, new_manifest = io.regenerate(manifest, args.out)
    if new_manifest["file_sha256"] != manifest.get("file_sha256"):
        print("regenerated file digest differs from the manifest", file=sys.stderr)
        return 1
    print(f"regenerated {s.n} x {s.dims} points to {args.out} (digest match)")
    return 0


def _merge_bounds_flag(argv):
    """Join '--bounds' with its value so leading minus signs parse."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--bounds" and i + 1 < len(argv):
            out.append("--bounds=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_bounds_flag(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DoeForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
