"""Deterministic classical designs in coded units [-1, +1].

Factorial, fractional factorial, central composite, Box-Behnken and
Doehlert constructions, plus orthogonal arrays and the orthogonal-array
Latin hypercube. All constructions use a fixed, documented row order and
take no seed (``oa_lhs`` excepted).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import CODED, RNG_NAME, UNIT_CUBE, RandomStream, SampleSet
from .errors import (
    DimensionError,
    GeneratorError,
    LevelError,
    ParseError,
    SizeError,
)

_MAX_POINTS = 10_000_000
_LETTERS = "ABCDEFGHIJKLMNOPQRST"


def full_factorial(n, levels=2):
    """All level combinations: 2-level uses {-1,+1}, 3-level {-1,0,+1}.

    Rows are in lexicographic order (last factor varies fastest).
    """
    if n < 1:
        raise DimensionError("need n >= 1")
    if levels not in (2, 3):
        raise ValueError("levels must be 2 or 3")
    if n > 20 or levels**n > _MAX_POINTS:
        raise SizeError(f"{levels}^{n} runs exceed the design-size guard")
    vals = (-1.0, 1.0) if levels == 2 else (-1.0, 0.0, 1.0)
    pts = np.array(list(itertools.product(vals, repeat=n)))
    return SampleSet(pts, CODED, "factorial", None, {"levels": levels})


def _parse_generator(text, base_letters, defined_letters):
    s = text.replace(" ", "").upper()
    if "=" not in s:
        raise ParseError(f"generator {text!r} must look like 'D=ABC'")
    lhs, rhs = s.split("=", 1)
    if len(lhs) != 1 or not rhs:
        raise ParseError(f"generator {text!r} must define one factor")
    if lhs not in defined_letters:
        raise GeneratorError(
            f"{lhs} is not a generated factor (base factors are {base_letters})"
        )
    refs = []
    for ch in rhs:
        if ch not in base_letters:
            raise GeneratorError(
                f"generator {text!r} may reference base factors only"
            )
        if ch in refs:
            raise ParseError(f"generator {text!r} repeats factor {ch}")
        refs.append(ch)
    return lhs, refs


def fractional_factorial(n, generators):
    """Two-level 2^(n-k) fraction from defining relations like "D=ABC".

    The first n-k letters are base factors; each generator defines one of
    the remaining letters as a product of base columns. Columns appear in
    factor-letter order; rows follow the base full factorial.
    """
    if n < 1 or n > len(_LETTERS):
        raise DimensionError(f"need 1 <= n <= {len(_LETTERS)}")
    k = len(generators)
    if k >= n:
        raise GeneratorError("need fewer generators than factors")
    base = n - k
    base_letters = _LETTERS[:base]
    defined_letters = _LETTERS[base:n]
    defs = {}
    for text in generators:
        lhs, refs = _parse_generator(text, base_letters, defined_letters)
        if lhs in defs:
            raise GeneratorError(f"factor {lhs} defined twice")
        defs[lhs] = refs
    if set(defs) != set(defined_letters):
        missing = sorted(set(defined_letters) - set(defs))
        raise GeneratorError(f"missing generator(s) for {', '.join(missing)}")

    base_pts = full_factorial(base, 2).points
    cols = {ch: base_pts[:, i] for i, ch in enumerate(base_letters)}
    for ch in defined_letters:
        prod = np.ones(base_pts.shape[0])
        for ref in defs[ch]:
            prod = prod * cols[ref]
        cols[ch] = prod
    pts = np.column_stack([cols[ch] for ch in _LETTERS[:n]])
    return SampleSet(
        pts, CODED, "fractional", None, {"generators": tuple(generators)}
    )


@dataclass(frozen=True)
class CcdVariant:
    """Central-composite flavour plus its axial distance."""

    kind: str  # "ccc" | "cci" | "ccf"
    alpha: float

    def __post_init__(self):
        if self.kind not in ("ccc", "cci", "ccf"):
            raise ValueError(f"unknown CCD variant {self.kind!r}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.kind == "ccf" and self.alpha != 1.0:
            raise ValueError("the faced variant forces alpha = 1")


def rotatable_alpha(n):
    """Axial distance (2^n)^(1/4) making the design rotatable."""
    return (2.0**n) ** 0.25


def central_composite(n, variant="ccc", alpha=None):
    """Cube + axial + centre design: 2^n + 2n + 1 points.

    Circumscribed: cube at +-1, axial at +-alpha (outside the coded cube,
    recorded as ``coded_extent``). Inscribed: axial at +-1, cube shrunk
    by 1/alpha. Faced: axial on the cube faces. Row order: cube block,
    then axial pairs (-,+) per dimension, centre last.
    """
    if n < 2:
        raise DimensionError("central composite needs n >= 2")
    if isinstance(variant, CcdVariant):
        kind, alpha = variant.kind, variant.alpha
    else:
        kind = str(variant).lower()
        if alpha is None:
            alpha = 1.0 if kind == "ccf" else rotatable_alpha(n)
        CcdVariant(kind, alpha)  # validate
    cube = full_factorial(n, 2).points
    if kind == "cci":
        cube = cube / alpha
    axial_mag = {"ccc": alpha, "cci": 1.0, "ccf": 1.0}[kind]
    axial = np.zeros((2 * n, n))
    for i in range(n):
        axial[2 * i, i] = -axial_mag
        axial[2 * i + 1, i] = axial_mag
    pts = np.vstack([cube, axial, np.zeros((1, n))])
    params = {"variant": kind, "alpha": alpha}
    if kind == "ccc" and alpha > 1.0:
        params["coded_extent"] = alpha
    return SampleSet(pts, CODED, "ccd", None, params)


def box_behnken(n):
    """Edge-midpoint design: (+-1, +-1) on every factor pair, one centre.

    4*C(n,2) + 1 points; every point has at most two nonzero coordinates.
    """
    if n < 3:
        raise DimensionError("box-behnken needs n >= 3")
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((-1.0, 1.0), repeat=2):
            p = np.zeros(n)
            p[i], p[j] = si, sj
            rows.append(p)
    rows.append(np.zeros(n))
    return SampleSet(np.array(rows), CODED, "bbd", None, {})


def _simplex_vertices(n):
    """n+1 vertices of a unit-edge regular simplex, one at the origin."""
    v = np.zeros((n + 1, n))
    for k in range(1, n + 1):
        # equal dot products with earlier vertices pin the first k-1
        # coordinates; unit length pins the k-th.
        for j in range(1, k):
            s = float(v[k, : j - 1] @ v[j, : j - 1])
            v[k, j - 1] = (0.5 - s) / v[j, j - 1]
        v[k, k - 1] = math.sqrt(max(0.0, 1.0 - float(v[k] @ v[k])))
    return v


def doehlert(n):
    """Uniform shell design: centre plus all simplex vertex differences.

    The n+1 vertices of a unit-edge regular simplex (one at the origin)
    give n^2 + n ordered differences; with the centre that is n^2 + n + 1
    points, the first dimension reaching +-1 exactly. Rows: centre first,
    then differences v_i - v_j ordered lexicographically by (i, j).
    """
    if n < 2:
        raise DimensionError("doehlert needs n >= 2")
    v = _simplex_vertices(n)
    rows = [np.zeros(n)]
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                rows.append(v[i] - v[j])
    return SampleSet(np.array(rows), CODED, "doehlert", None, {})


# ---------------------------------------------------------------------------
# orthogonal arrays


@dataclass(frozen=True)
class OrthogonalArray:
    """Integer array with declared per-column level counts and strength."""

    table: np.ndarray
    levels: tuple
    strength: int

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] < 1 or t.shape[1] < 1:
            raise LevelError("table must be a non-empty 2-D integer array")
        levels = tuple(int(s) for s in self.levels)
        if len(levels) != t.shape[1]:
            raise LevelError("one level count per column required")
        if any(s < 2 for s in levels):
            raise LevelError("every column needs at least 2 levels")
        if not 1 <= self.strength <= t.shape[1]:
            raise LevelError("strength must be between 1 and the column count")
        for c, s in enumerate(levels):
            if t[:, c].min() < 0 or t[:, c].max() >= s:
                raise LevelError(f"column {c} has entries outside [0, {s})")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "levels", levels)

    @property
    def runs(self):
        return self.table.shape[0]

    @property
    def cols(self):
        return self.table.shape[1]


def oa_verify(a: OrthogonalArray, detail=False):
    """Check the strength-t balance: every t-column level combination
    appears exactly N / prod(levels) times.

    With ``detail=True`` returns (ok, first_violating_column_subset).
    """
    n = a.runs
    bad = None
    for subset in itertools.combinations(range(a.cols), a.strength):
        sizes = [a.levels[c] for c in subset]
        cells = int(np.prod(sizes))
        if n % cells != 0:
            bad = subset
            break
        want = n // cells
        flat = np.zeros(n, dtype=np.int64)
        for c, s in zip(subset, sizes):
            flat = flat * s + a.table[:, c]
        counts = np.bincount(flat, minlength=cells)
        if not np.all(counts == want):
            bad = subset
            break
    ok = bad is None
    return (ok, bad) if detail else ok


def oa_lhs(a: OrthogonalArray, stream: RandomStream):
    """Latin hypercube spread over an orthogonal array's cells.

    Each column's r = N/s occurrences of a level are replaced by a random
    permutation of the r fine strata inside that level's band, then
    jittered uniformly within the stratum; every 1/N stratum ends up with
    exactly one point while the array's strength structure is kept.
    """
    s0 = a.levels[0]
    if any(s != s0 for s in a.levels):
        raise LevelError("oa_lhs needs the same level count in every column")
    n = a.runs
    if n % s0 != 0:
        raise LevelError("run count must be divisible by the level count")
    r = n // s0
    rng = stream.generator()
    pts = np.empty((n, a.cols))
    for c in range(a.cols):
        strata = np.empty(n, dtype=np.int64)
        for lev in range(s0):
            where = np.flatnonzero(a.table[:, c] == lev)
            strata[where] = lev * r + rng.permutation(r)
        u = rng.random(n)
        u[u == 0.0] = np.nextafter(0.0, 1.0)  # keep the jitter in (0, 1)
        pts[:, c] = (strata + 1 - u) / n
    params = {
        "substream": stream.substream,
        "rng": RNG_NAME,
        "runs": n,
        "levels": s0,
        "strength": a.strength,
    }
    return SampleSet(pts, UNIT_CUBE, "oa-lhs", stream.seed, params)


def _oa_from_coded(points, strength):
    table = ((np.asarray(points) + 1) / 2).astype(np.int64)
    return OrthogonalArray(table, (2,) * table.shape[1], strength)


def builtin_arrays():
    """Catalog of shipped arrays, keyed by name.

    ``oa4_3_2_2`` is the classic 4-run, 3-column, strength-2 array; the
    8- and 16-run entries come from resolution IV/V fractional factorials.
    """
    return {
        "oa4_3_2_2": OrthogonalArray(
            [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]], (2, 2, 2), 2
        ),
        "oa8_4_2_3": _oa_from_coded(
            fractional_factorial(4, ["D=ABC"]).points, 3
        ),
        "oa16_5_2_4": _oa_from_coded(
            fractional_factorial(5, ["E=ABCD"]).points, 4
        ),
    }


def load_oa_csv(path):
    """Read an orthogonal array from CSV.

    Format: a metadata row ``#strength=t levels=s1,s2,...``, a header
    ``c1,...,cm``, then integer rows.
    """
    strength = None
    levels = None
    header = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("strength="):
                        strength = int(tok.split("=", 1)[1])
                    elif tok.startswith("levels="):
                        levels = tuple(
                            int(v) for v in tok.split("=", 1)[1].split(",")
                        )
                continue
            if header is None:
                header = [h.strip() for h in line.split(",")]
                m = len(header)
                if header != [f"c{i + 1}" for i in range(m)]:
                    raise ParseError("expected header c1,...,cm", line=ln)
                continue
            vals = line.split(",")
            if len(vals) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(vals)}", line=ln
                )
            try:
                rows.append([int(v) for v in vals])
            except ValueError as exc:
                raise ParseError(str(exc), line=ln) from None
    if strength is None or levels is None:
        raise ParseError("missing '#strength=... levels=...' metadata row")
    if header is None or not rows:
        raise ParseError("missing header or data rows")
    return OrthogonalArray(rows, levels, strength)


def save_oa_csv(a: OrthogonalArray, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"#strength={a.strength} levels={','.join(str(s) for s in a.levels)}\n"
        )
        fh.write(",".join(f"c{i + 1}" for i in range(a.cols)) + "\n")
        for row in a.table:
            fh.write(",".join(str(int(v)) for v in row) + "\n")
