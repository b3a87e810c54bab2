"""Point-file formats and regeneration manifests.

CSV is the interchange format: UTF-8, LF newlines, header ``x1,...,xd``,
one shortest-round-trip decimal per value so a write/read cycle is exact.
JSON files carry ``{"manifest": ..., "points": [[...], ...]}`` or point
to a CSV via ``"points_file"`` (resolved relative to the JSON file).
Every generated file gets a sidecar ``<path>.manifest.json`` sufficient
to regenerate it byte-for-byte (timestamp aside).
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os

import numpy as np

from . import methods
from .core import CODED, UNIT_CUBE, DesignSpace, SampleSet, scale_to_domain
from .errors import ParseError

TOOL_NAME = "doe-forge"
TOOL_VERSION = "0.1.0"


def format_float(v) -> str:
    """Shortest decimal text that round-trips the double exactly."""
    return repr(float(v))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def _domain_fields(domain):
    if domain == UNIT_CUBE:
        return {"kind": "unit01", "bounds": None}
    if domain == CODED:
        return {"kind": "coded", "bounds": None}
    return {"kind": "user", "bounds": [[lo, hi] for lo, hi in domain.bounds]}


def _domain_from_fields(fields):
    kind = fields["kind"]
    if kind == "unit01":
        return UNIT_CUBE
    if kind == "coded":
        return CODED
    return DesignSpace(tuple((lo, hi) for lo, hi in fields["bounds"]))


# ---------------------------------------------------------------------------
# point files


def write_points(s: SampleSet, path, fmt="csv"):
    """Write a sample set; returns the manifest-ready file digest."""
    if fmt == "csv":
        _write_csv(s, path)
    elif fmt == "json":
        _write_json(s, path)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return file_digest(path)


def _write_csv(s, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(f"x{k + 1}" for k in range(s.dims)) + "\n")
        for row in s.points:
            fh.write(",".join(format_float(v) for v in row) + "\n")


def _write_json(s, path):
    doc = {
        "manifest": {
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "method": s.method,
            "n": s.n,
            "dim": s.dims,
            "seed": s.seed,
            "domain": _domain_fields(s.domain),
            "params": _jsonable(s.params),
        },
        "points": [[float(v) for v in row] for row in s.points],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _parse_csv(path):
    pts = []
    d = None
    with open(path, encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            fields = line.split(",")
            if ln == 1:
                want = [f"x{k + 1}" for k in range(len(fields))]
                if fields != want:
                    raise ParseError("expected header x1,...,xd", line=ln)
                d = len(fields)
                continue
            if len(fields) != d:
                raise ParseError(
                    f"expected {d} fields, got {len(fields)}", line=ln
                )
            try:
                pts.append([float(v) for v in fields])
            except ValueError as exc:
                raise ParseError(str(exc), line=ln) from None
    if d is None or not pts:
        raise ParseError("no data rows")
    return np.array(pts)


def _infer_domain(pts):
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    pad = np.where(hi > lo, 0.0, 0.5)
    return DesignSpace(tuple(zip(lo - pad, hi + pad)))


def read_points(path, domain=None) -> SampleSet:
    """Read a point file back into a SampleSet.

    Domain and provenance come from (in order) the explicit argument, the
    embedded/sidecar manifest, or a bounding box inferred from the data.
    """
    if str(path).endswith(".json"):
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        man = doc.get("manifest", {})
        if "points" in doc:
            pts = np.array(doc["points"], dtype=float)
        elif "points_file" in doc:
            rel = os.path.join(os.path.dirname(os.path.abspath(path)),
                               doc["points_file"])
            pts = _parse_csv(rel)
        else:
            raise ParseError("json file has neither 'points' nor 'points_file'")
        dom = domain
        if dom is None and "domain" in man:
            dom = _domain_from_fields(man["domain"])
        if dom is None:
            dom = _infer_domain(pts)
        return SampleSet(
            pts, dom, man.get("method", "imported"), man.get("seed"),
            man.get("params", {}),
        )
    pts = _parse_csv(path)
    man = {}
    sidecar = str(path) + ".manifest.json"
    if domain is None and os.path.exists(sidecar):
        man = read_manifest(sidecar)
        domain = _domain_from_fields(man["domain"])
    if domain is None:
        domain = _infer_domain(pts)
    return SampleSet(
        pts, domain, man.get("method", "imported"), man.get("seed"),
        man.get("params", {}),
    )


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


# ---------------------------------------------------------------------------
# manifests


def build_manifest(request, s: SampleSet, path, fmt, digest) -> dict:
    """Record everything needed to regenerate a written point file."""
    return {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "method": request["method"],
        "dim": request.get("dim"),
        "count": request.get("count"),
        "level": request.get("level"),
        "seed": s.seed,
        "options": _jsonable(request.get("options", {})),
        "bounds": request.get("bounds"),
        "n": s.n,
        "d": s.dims,
        "domain": _domain_fields(s.domain),
        "params": _jsonable(s.params),
        "format": fmt,
        "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "file": os.path.basename(str(path)),
        "file_sha256": digest,
    }


def write_manifest(manifest, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def generate_and_write(request, out_path, fmt="csv"):
    """Generate from a request dict, write points plus sidecar manifest.

    Request fields: method, dim, count, level, seed, options, bounds
    (bounds as [[lo, hi], ...] or None). Returns (SampleSet, manifest).
    """
    s = methods.generate(
        request["method"],
        dim=request.get("dim"),
        count=request.get("count"),
        level=request.get("level"),
        seed=request.get("seed"),
        options=request.get("options"),
    )
    bounds = request.get("bounds")
    if bounds is not None:
        s = scale_to_domain(s, DesignSpace(tuple((lo, hi) for lo, hi in bounds)))
    digest = write_points(s, out_path, fmt)
    manifest = build_manifest(request, s, out_path, fmt, digest)
    write_manifest(manifest, str(out_path) + ".manifest.json")
    return s, manifest


def regenerate(manifest, out_path):
    """Re-run a manifest's request; output bytes match the original file."""
    request = {
        "method": manifest["method"],
        "dim": manifest.get("dim"),
        "count": manifest.get("count"),
        "level": manifest.get("level"),
        "seed": manifest.get("seed"),
        "options": manifest.get("options", {}),
        "bounds": manifest.get("bounds"),
    }
    return generate_and_write(request, out_path, manifest.get("format", "csv"))
