"""Uniform entry point over every generation method.

The CLI, the comparison driver and manifest regeneration all build point
sets through :func:`generate`, so a recorded request reproduces its file
exactly. Methods are canonical-domain generators; scaling to user bounds
happens afterwards.
"""

from __future__ import annotations

import math
import os

from . import classical, grids, quasirandom, randoms
from .core import SampleSet, make_stream
from .errors import DoeForgeError

#: Methods whose output depends on a seed.
SEEDED = ("oa-lhs", "random", "mh", "lhs", "maximin-lhs", "cvt")

#: Deterministic methods; any seed argument is ignored and recorded as None.
SEEDLESS = (
    "factorial",
    "fractional",
    "ccd",
    "bbd",
    "doehlert",
    "sobol",
    "halton",
    "hammersley",
    "faure",
    "full-grid",
    "sparse-grid",
    "rot-sparse-grid",
)

METHODS = SEEDED + SEEDLESS

#: Methods whose run count is structural (dimension/level bound) rather
#: than freely chosen.
STRUCTURAL = (
    "factorial",
    "fractional",
    "ccd",
    "bbd",
    "doehlert",
    "oa-lhs",
    "full-grid",
    "sparse-grid",
    "rot-sparse-grid",
)


class UsageError(ValueError):
    """Bad request shape: unknown method, missing or conflicting fields."""


def _require(cond, msg):
    if not cond:
        raise UsageError(msg)


def _opt(options, key, default=None):
    return options.get(key, default)


def _with_params(s, **extra):
    params = dict(s.params)
    params.update(extra)
    return SampleSet(s.points, s.domain, s.method, s.seed, params)


def _sparse_count(mu, beta):
    return grids.sparse_grid(grids.GridLevelSpec(mu, beta)).n


def resolve_count(method, dim, count):
    """Map a requested run count onto a structural method's knobs.

    Returns an options patch: the largest design of the family that does
    not exceed ``count`` (falling back to the smallest design when even
    that is too big). Count-driven methods return an empty patch.
    """
    if method not in STRUCTURAL or count is None:
        return {}
    if method == "factorial":
        return {"levels": 3 if dim is not None and 3**dim <= count else 2}
    if method in ("ccd", "bbd", "doehlert", "fractional", "oa-lhs"):
        return {}  # count fixed by dim / generators / array
    if method == "full-grid":
        level = 1
        while dim and grids.level_size(level + 1) ** dim <= count:
            level += 1
        return {"level": level}
    if method in ("sparse-grid", "rot-sparse-grid"):
        mu = 1
        while dim and _sparse_count(mu + 1, dim) <= count:
            mu += 1
        return {"level": mu}
    return {}


def _build_mh_target(options):
    target = _opt(options, "target", "uniform")
    if target == "uniform":
        return randoms.uniform_log_density
    if target == "gaussian":
        return randoms.gaussian_log_density(
            mu=float(_opt(options, "mu", 0.5)),
            sigma=float(_opt(options, "sigma", 0.25)),
        )
    raise UsageError(f"unknown mh target {target!r}")


def generate(method, dim=None, count=None, level=None, seed=None, options=None):
    """Build the canonical-domain sample set for one request."""
    options = dict(options or {})
    _require(method in METHODS, f"unknown method {method!r}")
    if method in SEEDED:
        stream = make_stream(seed if seed is not None else 0)
    else:
        stream = None

    if method == "factorial":
        _require(dim is not None, "factorial needs --dim")
        return classical.full_factorial(dim, int(_opt(options, "levels", 2)))
    if method == "fractional":
        _require(dim is not None, "fractional needs --dim")
        gens = _opt(options, "generators", ())
        return classical.fractional_factorial(dim, list(gens))
    if method == "ccd":
        _require(dim is not None, "ccd needs --dim")
        alpha = _opt(options, "alpha")
        return classical.central_composite(
            dim,
            _opt(options, "variant", "ccc"),
            None if alpha is None else float(alpha),
        )
    if method == "bbd":
        _require(dim is not None, "bbd needs --dim")
        return classical.box_behnken(dim)
    if method == "doehlert":
        _require(dim is not None, "doehlert needs --dim")
        return classical.doehlert(dim)
    if method == "oa-lhs":
        name = _opt(options, "oa", "oa4_3_2_2")
        catalog = classical.builtin_arrays()
        if name in catalog:
            array = catalog[name]
        elif os.path.exists(str(name)):
            array = classical.load_oa_csv(str(name))
        else:
            raise UsageError(
                f"--oa must name a builtin array {sorted(catalog)} or a CSV file"
            )
        return _with_params(classical.oa_lhs(array, stream), oa=str(name))
    if method == "random":
        _require(count is not None and dim is not None, "random needs --count/--dim")
        return randoms.uniform_random(count, dim, stream)
    if method == "mh":
        _require(count is not None and dim is not None, "mh needs --count/--dim")
        cfg = randoms.MhConfig(
            proposal_scale=float(_opt(options, "proposal_scale", 0.1)),
            burn_in=int(_opt(options, "burn_in", 1000)),
            thin=int(_opt(options, "thin", 10)),
        )
        out = randoms.metropolis_hastings(
            count, dim, _build_mh_target(options), cfg, stream
        )
        extra = {"target": _opt(options, "target", "uniform")}
        if extra["target"] == "gaussian":
            extra["mu"] = float(_opt(options, "mu", 0.5))
            extra["sigma"] = float(_opt(options, "sigma", 0.25))
        return _with_params(out, **extra)
    if method == "lhs":
        _require(count is not None and dim is not None, "lhs needs --count/--dim")
        return quasirandom.lhs_basic(count, dim, stream)
    if method == "maximin-lhs":
        _require(
            count is not None and dim is not None,
            "maximin-lhs needs --count/--dim",
        )
        return quasirandom.lhs_maximin(
            count,
            dim,
            stream,
            n_iter=int(_opt(options, "n_iter", 10)),
            m=int(_opt(options, "m", 100)),
        )
    if method == "cvt":
        _require(count is not None and dim is not None, "cvt needs --count/--dim")
        m = _opt(options, "m")
        cfg = quasirandom.CvtConfig(
            n_iter=int(_opt(options, "n_iter", 200)),
            m=None if m is None else int(m),
            tol=float(_opt(options, "tol", 1e-4)),
        )
        return quasirandom.cvt(count, dim, stream, cfg)
    if method == "sobol":
        _require(count is not None and dim is not None, "sobol needs --count/--dim")
        return quasirandom.sobol(
            count,
            dim,
            order=_opt(options, "order", "plain"),
            include_zero=bool(_opt(options, "include_zero", False)),
        )
    if method == "halton":
        _require(count is not None and dim is not None, "halton needs --count/--dim")
        return quasirandom.halton(
            count, dim, include_zero=bool(_opt(options, "include_zero", False))
        )
    if method == "hammersley":
        _require(
            count is not None and dim is not None,
            "hammersley needs --count/--dim",
        )
        return quasirandom.hammersley(count, dim)
    if method == "faure":
        _require(count is not None and dim is not None, "faure needs --count/--dim")
        return quasirandom.faure(
            count, dim, include_zero=bool(_opt(options, "include_zero", False))
        )
    if method == "full-grid":
        _require(dim is not None, "full-grid needs --dim")
        per_dim = _opt(options, "levels")
        if per_dim is None:
            lvl = level if level is not None else _opt(options, "level")
            _require(lvl is not None, "full-grid needs --level or --grid-levels")
            per_dim = [int(lvl)] * dim
        _require(len(per_dim) == dim, "--grid-levels length must equal --dim")
        return grids.full_grid(per_dim)
    if method == "sparse-grid":
        lvl = level if level is not None else _opt(options, "level")
        _require(
            dim is not None and lvl is not None, "sparse-grid needs --dim/--level"
        )
        return grids.sparse_grid(grids.GridLevelSpec(int(lvl), dim))
    if method == "rot-sparse-grid":
        lvl = level if level is not None else _opt(options, "level")
        _require(
            dim is not None and lvl is not None,
            "rot-sparse-grid needs --dim/--level",
        )
        base = grids.sparse_grid(grids.GridLevelSpec(int(lvl), dim))
        theta_deg = _opt(options, "theta_deg")
        if theta_deg is not None:
            rotated = grids.rotate_points(
                base, grids.RotationSpec(math.radians(float(theta_deg)))
            )
            objective = None
        else:
            _, rotated = grids.optimize_rotation(
                base,
                objective=_opt(options, "objective", "maximin"),
                step=math.radians(float(_opt(options, "angle_step_deg", 1.0))),
            )
            objective = _opt(options, "objective", "maximin")
        params = dict(rotated.params)
        params.update({"mu": int(lvl), "beta": dim, "objective": objective})
        return SampleSet(rotated.points, rotated.domain, "rot-sparse-grid",
                         rotated.seed, params)
    raise DoeForgeError(f"unhandled method {method}")  # pragma: no cover
