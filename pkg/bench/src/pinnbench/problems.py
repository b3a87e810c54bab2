"""The five benchmark PDE problems with training data and references.

Interchange contract with the point generator: collocation CSV column
x1 is the spatial coordinate, x2 is time, already scaled to the problem
domain. N_u = 100 initial/boundary points (50 IC + 50 BC, evenly
spaced); periodic problems use 50 initial points plus 50 boundary times
with value and x-derivative matching.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace

import numpy as np

from . import references as refs

PROBLEM_NAMES = ("burgers", "schrodinger", "heat", "allen-cahn", "kdv")

N_IC = 50
N_BC = 50
EVAL_NT = 101
EVAL_NX = 256


@dataclass(frozen=True)
class PinnArchitecture:
    """tanh multilayer perceptron shape; out_dim 2 for complex fields."""

    hidden_layers: int
    width: int
    out_dim: int = 1


@dataclass(frozen=True)
class PdeProblem:
    name: str
    x_bounds: tuple
    t_final: float
    coefficients: dict
    arch: PinnArchitecture
    complex_valued: bool = False
    periodic: bool = False  # True: L_0 + L_b + L_f loss form
    ic: object = None  # x -> u0 (real) or (n,2) for complex
    bc_value: object = None  # (t, x) -> boundary value, Dirichlet problems

    def eval_grid(self):
        """Fixed evaluation grid shared across samplers and seeds."""
        t = np.linspace(0.0, self.t_final, EVAL_NT)
        lo, hi = self.x_bounds
        if self.periodic or self.name == "kdv":
            x = lo + (hi - lo) * np.arange(EVAL_NX) / EVAL_NX
        else:
            x = np.linspace(lo, hi, EVAL_NX)
        return t, x


def _burgers_ic(x):
    return -np.sin(math.pi * x)


def _heat_ic(x):
    return np.full_like(np.asarray(x, dtype=float), refs.HEAT_T0)


def _schrodinger_ic(x):
    x = np.asarray(x, dtype=float)
    return np.column_stack([2.0 / np.cosh(x), np.zeros_like(x)])


def _allen_cahn_ic(x):
    x = np.asarray(x, dtype=float)
    return x**3 * np.cos(math.pi * x)


@functools.lru_cache(maxsize=None)
def _burgers_ref():
    return refs.BurgersReference()


@functools.lru_cache(maxsize=None)
def _heat_ref():
    return refs.HeatReference()


@functools.lru_cache(maxsize=None)
def _schrodinger_ref():
    return refs.SchrodingerReference()


@functools.lru_cache(maxsize=None)
def _allen_cahn_ref():
    return refs.AllenCahnReference()


@functools.lru_cache(maxsize=None)
def _kdv_ref():
    return refs.KdvReference()


def build_problem(name) -> PdeProblem:
    """Configured problem by name; raises KeyError for unknown names."""
    if name == "burgers":
        return PdeProblem(
            name,
            (-1.0, 1.0),
            1.0,
            {"nu": refs.BURGERS_NU},
            PinnArchitecture(8, 20),
            ic=_burgers_ic,
            bc_value=lambda t, x: np.zeros_like(np.asarray(t, dtype=float)),
        )
    if name == "schrodinger":
        return PdeProblem(
            name,
            (-5.0, 5.0),
            math.pi / 2.0,
            {},
            PinnArchitecture(5, 100, out_dim=2),
            complex_valued=True,
            periodic=True,
            ic=_schrodinger_ic,
        )
    if name == "heat":
        return PdeProblem(
            name,
            (0.0, refs.HEAT_L),
            1.0,
            {"L": refs.HEAT_L, "T0": refs.HEAT_T0},
            PinnArchitecture(8, 20),
            ic=_heat_ic,
            bc_value=lambda t, x: np.where(
                np.asarray(x, dtype=float) > 0.5, 1.0, 0.0
            ),
        )
    if name == "allen-cahn":
        return PdeProblem(
            name,
            (-1.0, 1.0),
            1.0,
            {"eps": 1e-4},
            PinnArchitecture(4, 200),
            periodic=True,
            ic=_allen_cahn_ic,
        )
    if name == "kdv":
        ref = _kdv_ref()
        return PdeProblem(
            name,
            (0.0, 2.0 * math.pi),
            1.0,
            {"A": refs.KDV_AMPLITUDE},
            PinnArchitecture(7, 120),
            ic=lambda x: ref(np.zeros_like(np.asarray(x, dtype=float)), x),
            bc_value=lambda t, x: ref(t, x),
        )
    raise KeyError(f"unknown problem {name!r}")


def reference_on_grid(problem: PdeProblem):
    """Reference solution on the problem's evaluation grid.

    Real problems return a (nt, nx) real array; the complex problem
    returns complex values.
    """
    t, x = problem.eval_grid()
    if problem.name == "burgers":
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return _burgers_ref()(tt, xx)
    if problem.name == "heat":
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return _heat_ref()(tt, xx)
    if problem.name == "kdv":
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return _kdv_ref()(tt, xx)
    if problem.name == "schrodinger":
        ref = _schrodinger_ref()
        stride = ref.n_x // EVAL_NX
        return ref.u_grid[:, ::stride]
    if problem.name == "allen-cahn":
        ref = _allen_cahn_ref()
        stride = ref.n_x // EVAL_NX
        return ref.u_grid[:, ::stride]
    raise KeyError(problem.name)


@dataclass(frozen=True)
class TrainingData:
    """Initial/boundary supervision for one problem."""

    t_ic: np.ndarray
    x_ic: np.ndarray
    u_ic: np.ndarray  # (n,) real or (n, 2) channels
    # Dirichlet problems: boundary points with values
    t_bc: np.ndarray | None = None
    x_bc: np.ndarray | None = None
    u_bc: np.ndarray | None = None
    # periodic problems: boundary times (value + derivative matching)
    t_periodic: np.ndarray | None = None


def training_data(problem: PdeProblem) -> TrainingData:
    lo, hi = problem.x_bounds
    x_ic = np.linspace(lo, hi, N_IC)
    u_ic = np.asarray(problem.ic(x_ic), dtype=float)
    t_ic = np.zeros(N_IC)
    if problem.periodic:
        return TrainingData(
            t_ic, x_ic, u_ic,
            t_periodic=np.linspace(0.0, problem.t_final, N_BC),
        )
    per_side = N_BC // 2
    t_side = np.linspace(0.0, problem.t_final, per_side)
    t_bc = np.concatenate([t_side, t_side])
    x_bc = np.concatenate([np.full(per_side, lo), np.full(per_side, hi)])
    u_bc = np.asarray(problem.bc_value(t_bc, x_bc), dtype=float)
    return TrainingData(t_ic, x_ic, u_ic, t_bc=t_bc, x_bc=x_bc, u_bc=u_bc)


def with_architecture(problem: PdeProblem, hidden_layers, width) -> PdeProblem:
    return replace(
        problem,
        arch=PinnArchitecture(hidden_layers, width, problem.arch.out_dim),
    )
