"""PINN training: first-order warmup then quasi-Newton refinement.

The loss is the data misfit on initial/boundary points plus the
mean-square PDE residual at the collocation points; periodic problems
use the three-term initial/periodic-boundary/residual form with value
and x-derivative matching. Everything runs in float64 on CPU; a seed
fixes the weight initialization, so training is reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import torch

from . import residuals
from .network import PinnNet
from .problems import PdeProblem, reference_on_grid, training_data


@dataclass(frozen=True)
class TrainConfig:
    adam_steps: int = 2000
    adam_lr: float = 1e-3
    lbfgs_max_iter: int = 5000
    lbfgs_tolerance: float = 1e-9
    log_every: int = 100


@dataclass
class LossBreakdown:
    """Component losses at one logged step; total is their exact sum."""

    step: int
    components: dict

    @property
    def total(self):
        return sum(self.components.values())


@dataclass
class BenchRow:
    """One trained run's scores on the fixed evaluation grid."""

    problem: str
    sampler: str
    n_f: int
    n_u: int
    seed: int
    mse: float
    rel_l2: float
    err_median: float
    err_q1: float
    err_q3: float
    err_max: float
    diverged: bool
    wall_time: float
    final_loss: dict = field(default_factory=dict)


def load_collocation_csv(path):
    """Read a generator CSV: column x1 = space, x2 = time."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if header[:2] != ["x1", "x2"]:
            raise ValueError(f"{path}: expected header x1,x2")
        for line in fh:
            line = line.strip()
            if line:
                vals = line.split(",")
                rows.append((float(vals[0]), float(vals[1])))
    arr = np.asarray(rows)
    return arr[:, 0], arr[:, 1]  # x, t


def _data_tensors(problem, dtype=torch.float64):
    data = training_data(problem)
    out = {
        "t_ic": torch.tensor(data.t_ic, dtype=dtype),
        "x_ic": torch.tensor(data.x_ic, dtype=dtype),
        "u_ic": torch.tensor(data.u_ic, dtype=dtype),
    }
    if problem.periodic:
        out["t_p"] = torch.tensor(data.t_periodic, dtype=dtype)
    else:
        out["t_bc"] = torch.tensor(data.t_bc, dtype=dtype)
        out["x_bc"] = torch.tensor(data.x_bc, dtype=dtype)
        out["u_bc"] = torch.tensor(data.u_bc, dtype=dtype)
    return out


def _sq_mean(diff):
    """Mean over points of |diff|^2, channels summed (complex modulus)."""
    if diff.ndim > 1:
        return (diff**2).sum(-1).mean()
    return (diff**2).mean()


def _dx(y, x):
    """Per-channel x-derivative (grad over a matrix would sum channels)."""
    if y.ndim == 1:
        return torch.autograd.grad(y, x, torch.ones_like(y),
                                   create_graph=True)[0]
    cols = [
        torch.autograd.grad(y[:, c], x, torch.ones_like(y[:, c]),
                            create_graph=True)[0]
        for c in range(y.shape[1])
    ]
    return torch.stack(cols, dim=-1)


def _loss_components(problem, net, data, t_f, x_f):
    comps = {}
    if problem.periodic:
        u0 = net(data["t_ic"], data["x_ic"])
        comps["L_0"] = _sq_mean(u0 - data["u_ic"])
        lo, hi = problem.x_bounds
        t_p = data["t_p"]
        x_lo = torch.full_like(t_p, lo).requires_grad_(True)
        x_hi = torch.full_like(t_p, hi).requires_grad_(True)
        u_lo = net(t_p, x_lo)
        u_hi = net(t_p, x_hi)
        du_lo = _dx(u_lo, x_lo)
        du_hi = _dx(u_hi, x_hi)
        comps["L_b"] = _sq_mean(u_lo - u_hi) + _sq_mean(du_lo - du_hi)
    else:
        u0 = net(data["t_ic"], data["x_ic"])
        ub = net(data["t_bc"], data["x_bc"])
        misfit = torch.cat([u0 - data["u_ic"], ub - data["u_bc"]])
        comps["L_u"] = (misfit**2).mean()
    comps["L_f"] = residuals.residual_sq(problem, net, t_f, x_f)
    return comps


def evaluate(problem, net) -> dict:
    """Error statistics of the network on the fixed evaluation grid."""
    t, x = problem.eval_grid()
    tt, xx = np.meshgrid(t, x, indexing="ij")
    tg = torch.tensor(tt.ravel(), dtype=torch.float64)
    xg = torch.tensor(xx.ravel(), dtype=torch.float64)
    with torch.no_grad():
        out = net(tg, xg).numpy()
    ref = reference_on_grid(problem)
    if problem.complex_valued:
        pred = out[:, 0] + 1j * out[:, 1]
        err = np.abs(pred - ref.ravel())
        ref_norm = np.linalg.norm(np.abs(ref.ravel()))
    else:
        pred = out
        err = np.abs(pred - ref.ravel())
        ref_norm = np.linalg.norm(ref.ravel())
    q1, med, q3 = np.percentile(err, [25, 50, 75])
    return {
        "mse": float(np.mean(err**2)),
        "rel_l2": float(np.linalg.norm(err) / ref_norm),
        "err_median": float(med),
        "err_q1": float(q1),
        "err_q3": float(q3),
        "err_max": float(err.max()),
    }


def train_pinn(problem: PdeProblem, collocation, seed=0,
               cfg: TrainConfig | None = None, sampler="unknown"):
    """Train one network on a collocation set.

    ``collocation`` is a CSV path (x1 = space, x2 = time, problem units)
    or an (x, t) array pair. Returns (net, history, BenchRow).
    """
    cfg = cfg or TrainConfig()
    if isinstance(collocation, (str,)) or hasattr(collocation, "__fspath__"):
        x_f_np, t_f_np = load_collocation_csv(collocation)
    else:
        x_f_np, t_f_np = collocation
    torch.manual_seed(seed)
    net = PinnNet(problem.arch, problem.x_bounds, problem.t_final)
    data = _data_tensors(problem)
    t_f = torch.tensor(t_f_np, dtype=torch.float64).requires_grad_(True)
    x_f = torch.tensor(x_f_np, dtype=torch.float64).requires_grad_(True)

    history = []
    diverged = False
    t_start = time.perf_counter()

    def closure_factory(opt, step_box):
        def closure():
            opt.zero_grad()
            comps = _loss_components(problem, net, data, t_f, x_f)
            loss = sum(comps.values())
            loss.backward()
            step_box["comps"] = {k: float(v) for k, v in comps.items()}
            return loss
        return closure

    box = {}
    adam = torch.optim.Adam(net.parameters(), lr=cfg.adam_lr)
    adam_closure = closure_factory(adam, box)
    for step in range(cfg.adam_steps):
        loss = adam_closure()
        if not torch.isfinite(loss):
            diverged = True
            break
        adam.step()
        if step % cfg.log_every == 0:
            history.append(LossBreakdown(step, dict(box["comps"])))

    if not diverged and cfg.lbfgs_max_iter > 0:
        lbfgs = torch.optim.LBFGS(
            net.parameters(),
            max_iter=cfg.lbfgs_max_iter,
            tolerance_grad=cfg.lbfgs_tolerance,
            tolerance_change=cfg.lbfgs_tolerance,
            history_size=50,
            line_search_fn="strong_wolfe",
        )
        lbfgs_closure = closure_factory(lbfgs, box)
        lbfgs.step(lbfgs_closure)
        final = sum(box["comps"].values())
        if not math.isfinite(final):
            diverged = True

    if box:
        history.append(LossBreakdown(-1, dict(box["comps"])))
    else:  # zero-step run: record the untrained losses
        comps = _loss_components(problem, net, data, t_f, x_f)
        box["comps"] = {k: float(v) for k, v in comps.items()}
        history.append(LossBreakdown(-1, dict(box["comps"])))

    stats = evaluate(problem, net)
    row = BenchRow(
        problem=problem.name,
        sampler=sampler,
        n_f=len(t_f_np),
        n_u=len(data["t_ic"]) + (
            len(data["t_p"]) if problem.periodic else len(data["t_bc"])
        ),
        seed=seed,
        diverged=diverged,
        wall_time=time.perf_counter() - t_start,
        final_loss=dict(box["comps"]),
        **stats,
    )
    return net, history, row
