"""Random designs: i.i.d. uniform points and random-walk Metropolis-Hastings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import RNG_NAME, UNIT_CUBE, RandomStream, SampleSet
from .errors import InitError, SizeError


def uniform_random(n, d, stream: RandomStream):
    """n i.i.d. uniform points in [0,1)^d, deterministic per stream."""
    if n < 1 or d < 1:
        raise SizeError("need n >= 1 and d >= 1")
    pts = stream.generator().random((n, d))
    return SampleSet(
        pts, UNIT_CUBE, "random", stream.seed,
        {"substream": stream.substream, "rng": RNG_NAME},
    )


@dataclass(frozen=True)
class MhConfig:
    """Random-walk chain tuning, in unit-cube units."""

    proposal_scale: float = 0.1
    burn_in: int = 1000
    thin: int = 10
    init: tuple | None = None  # default: cube centre

    def __post_init__(self):
        if self.proposal_scale <= 0:
            raise ValueError("proposal_scale must be positive")
        if self.burn_in < 0 or self.thin < 1:
            raise ValueError("need burn_in >= 0 and thin >= 1")


def metropolis_hastings(n, d, log_density, cfg: MhConfig | None = None,
                        stream: RandomStream | None = None):
    """Thinned post-burn-in states of a random-walk Metropolis chain.

    Proposals are isotropic Gaussian steps; anything outside the unit
    cube is rejected outright (density is zero there). A move is accepted
    when log(u) < log_density(new) - log_density(old). One uniform is
    consumed per step whether or not the proposal is in the cube, so the
    chain trajectory is a pure function of (stream, cfg).
    """
    if n < 1 or d < 1:
        raise SizeError("need n >= 1 and d >= 1")
    if stream is None:
        raise ValueError("metropolis_hastings requires a stream")
    cfg = cfg or MhConfig()
    x = np.full(d, 0.5) if cfg.init is None else np.asarray(cfg.init, dtype=float)
    if x.shape != (d,) or np.any(x < 0) or np.any(x > 1):
        raise InitError("init must be a point inside the unit cube")
    lp = float(log_density(x))
    if not math.isfinite(lp):
        raise InitError("log_density is not finite at the chain start")

    steps = cfg.burn_in + n * cfg.thin
    rng = stream.generator()
    noise = rng.standard_normal((steps, d)) * cfg.proposal_scale
    us = rng.random(steps)
    out = np.empty((n, d))
    got = 0
    accepted = 0
    in_cube = 0
    for step in range(steps):
        prop = x + noise[step]
        if np.all(prop >= 0.0) and np.all(prop <= 1.0):
            in_cube += 1
            lp_new = float(log_density(prop))
            log_u = math.log(us[step]) if us[step] > 0.0 else -math.inf
            if log_u < lp_new - lp:
                x = prop
                lp = lp_new
                accepted += 1
        k = step - cfg.burn_in + 1
        if k > 0 and k % cfg.thin == 0:
            out[got] = x
            got += 1
    params = {
        "substream": stream.substream,
        "rng": RNG_NAME,
        "proposal_scale": cfg.proposal_scale,
        "burn_in": cfg.burn_in,
        "thin": cfg.thin,
        "init": tuple(np.full(d, 0.5) if cfg.init is None else cfg.init),
        "accepted": accepted,
        "proposals_in_cube": in_cube,
        "steps": steps,
    }
    return SampleSet(out, UNIT_CUBE, "mh", stream.seed, params)


def uniform_log_density(x):
    """Constant target: every in-cube proposal is accepted."""
    return 0.0


def gaussian_log_density(mu=0.5, sigma=0.25):
    """Isotropic Gaussian target truncated to the unit cube."""

    def logp(x):
        z = (np.asarray(x) - mu) / sigma
        return -0.5 * float(z @ z)

    return logp
