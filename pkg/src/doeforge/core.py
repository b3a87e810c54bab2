"""Shared domain types: design spaces, sample sets, and deterministic streams.

Canonical domains follow each sampler family's native convention:
quasi-random and random generators emit points in the unit cube [0,1]^d
(``UNIT_CUBE``), classical designs and grids emit coded units [-1,+1]^d
(``CODED``). ``scale_to_domain`` is the single converter to user bounds.
Boundary values are valid: all domains are closed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError

#: Canonical unit cube [0, 1]^d.
UNIT_CUBE = "unit01"
#: Canonical coded cube [-1, +1]^d.
CODED = "coded"

#: BitGenerator recorded in SampleSet.params for seeded methods.
RNG_NAME = "philox4x64(numpy)"

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class DesignSpace:
    """Axis-aligned hyper-rectangle given by per-dimension (lo, hi) bounds."""

    bounds: tuple

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) < 1:
            raise DimensionError("a design space needs at least one dimension")
        for k, (lo, hi) in enumerate(bounds):
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise DomainError(f"dimension {k}: bounds must be finite")
            if not lo < hi:
                raise DomainError(f"dimension {k}: need lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "bounds", bounds)

    @property
    def dims(self) -> int:
        return len(self.bounds)

    def lows(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.bounds])

    def highs(self) -> np.ndarray:
        return np.array([hi for _, hi in self.bounds])


def _domain_bounds(domain, dims):
    """Closed per-dimension bounds of a canonical or user domain."""
    if domain == UNIT_CUBE:
        return np.zeros(dims), np.ones(dims)
    if domain == CODED:
        return -np.ones(dims), np.ones(dims)
    if isinstance(domain, DesignSpace):
        return domain.lows(), domain.highs()
    raise DomainError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class SampleSet:
    """Ordered n-by-d point matrix plus provenance.

    Row order is part of the identity (sequences are ordered). ``domain``
    is ``UNIT_CUBE``, ``CODED``, or a :class:`DesignSpace`. ``params``
    records every method-specific knob needed to regenerate the set.
    Circumscribed designs whose axial points exceed the coded cube record
    the overshoot factor as ``params["coded_extent"]``; containment and
    rescaling account for it.
    """

    points: np.ndarray
    domain: object
    method: str
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2:
            raise DomainError("points must be a 2-D array")
        n, d = pts.shape
        if n < 1 or d < 1:
            raise DomainError("need at least one point and one dimension")
        if not np.all(np.isfinite(pts)):
            raise DomainError("points must be finite")
        lo, hi = _domain_bounds(self.domain, d)
        if isinstance(self.domain, DesignSpace) and self.domain.dims != d:
            raise DimensionError(
                f"domain has {self.domain.dims} dims, points have {d}"
            )
        extent = float(dict(self.params).get("coded_extent", 1.0))
        if extent > 1.0:
            mid = (lo + hi) / 2.0
            lo = mid + (lo - mid) * extent
            hi = mid + (hi - mid) * extent
        if np.any(pts < lo) or np.any(pts > hi):
            raise DomainError("points outside the declared (closed) domain")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dims(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class RandomStream:
    """Counter-based (Philox) stream keyed by (seed, substream).

    Identical keys give identical sequences on every platform; distinct
    substreams are statistically independent. ``generator()`` returns a
    fresh generator each call, so operations taking a stream are pure.
    """

    seed: int
    substream: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array(
            [self.seed & _MASK64, self.substream & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key))

    def split(self, substream: int) -> "RandomStream":
        return RandomStream(self.seed, substream)


def make_stream(seed: int, substream: int = 0) -> RandomStream:
    """Create a reproducible stream for the given (seed, substream) key."""
    return RandomStream(int(seed), int(substream))


def scale_to_domain(s: SampleSet, target: DesignSpace) -> SampleSet:
    """Affinely map a canonical-domain sample set onto user bounds.

    [0,1] (unit cube) or [-1,1] (coded) maps per dimension onto [lo, hi];
    ordering is preserved. Mapped values are clipped to the closed target
    bounds to absorb last-ulp rounding, except for circumscribed sets
    (``coded_extent`` > 1) whose overshoot scales proportionally past the
    bounds, as their axial points do in coded units.
    """
    if s.domain not in (UNIT_CUBE, CODED):
        raise DomainError("scale_to_domain expects a canonical-domain sample set")
    if target.dims != s.dims:
        raise DimensionError(f"target has {target.dims} dims, points have {s.dims}")
    unit = s.points if s.domain == UNIT_CUBE else (s.points + 1.0) / 2.0
    lo, hi = target.lows(), target.highs()
    pts = lo + unit * (hi - lo)
    if float(s.params.get("coded_extent", 1.0)) <= 1.0:
        pts = np.clip(pts, lo, hi)
    params = dict(s.params)
    params["source_domain"] = s.domain
    return SampleSet(pts, target, s.method, s.seed, params)


def to_unit_cube(s: SampleSet) -> SampleSet:
    """Map any sample set onto [0,1]^d (identity for unit-cube sets).

    Circumscribed sets are first shrunk by their recorded extent so the
    result genuinely fits the cube.
    """
    if s.domain == UNIT_CUBE:
        return s
    lo, hi = _domain_bounds(s.domain, s.dims)
    extent = float(s.params.get("coded_extent", 1.0))
    if extent > 1.0:
        mid = (lo + hi) / 2.0
        lo = mid + (lo - mid) * extent
        hi = mid + (hi - mid) * extent
    pts = np.clip((s.points - lo) / (hi - lo), 0.0, 1.0)
    params = dict(s.params)
    params.pop("coded_extent", None)
    params["source_domain"] = "coded" if s.domain == CODED else "user"
    return SampleSet(pts, UNIT_CUBE, s.method, s.seed, params)
