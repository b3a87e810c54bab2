"""PDE residuals by automatic differentiation.

Each residual takes a differentiable field ``u_fn(t, x)`` (network or
any torch-evaluable function), 1-D tensors t and x with grad enabled,
and returns the pointwise residual. The complex problem works on two
channels and returns (real, imag) residuals.
"""

from __future__ import annotations

import torch


def _grad(y, wrt):
    return torch.autograd.grad(
        y, wrt, torch.ones_like(y), create_graph=True
    )[0]


def burgers_residual(u_fn, t, x, nu):
    u = u_fn(t, x)
    u_t = _grad(u, t)
    u_x = _grad(u, x)
    u_xx = _grad(u_x, x)
    return u_t + u * u_x - nu * u_xx


def heat_residual(u_fn, t, x):
    u = u_fn(t, x)
    return _grad(u, t) - _grad(_grad(u, x), x)


def allen_cahn_residual(u_fn, t, x, eps=1e-4):
    u = u_fn(t, x)
    u_xx = _grad(_grad(u, x), x)
    return _grad(u, t) - eps * u_xx + 5.0 * u**3 - 5.0 * u


def kdv_residual(u_fn, t, x):
    u = u_fn(t, x)
    u_x = _grad(u, x)
    u_xxx = _grad(_grad(u_x, x), x)
    return _grad(u, t) + u * u_x + u_xxx


def schrodinger_residual(h_fn, t, x):
    """Two-channel residual of i h_t + 0.5 h_xx + |h|^2 h = 0.

    With h = u + i v the real/imaginary parts are
    -v_t + 0.5 u_xx + (u^2 + v^2) u  and  u_t + 0.5 v_xx + (u^2 + v^2) v.
    """
    h = h_fn(t, x)
    u, v = h[..., 0], h[..., 1]
    u_t = _grad(u, t)
    v_t = _grad(v, t)
    u_xx = _grad(_grad(u, x), x)
    v_xx = _grad(_grad(v, x), x)
    mag2 = u**2 + v**2
    f_re = -v_t + 0.5 * u_xx + mag2 * u
    f_im = u_t + 0.5 * v_xx + mag2 * v
    return f_re, f_im


def residual_sq(problem, u_fn, t, x):
    """Mean-square residual selector used by the training loss."""
    name = problem.name
    if name == "burgers":
        f = burgers_residual(u_fn, t, x, problem.coefficients["nu"])
    elif name == "heat":
        f = heat_residual(u_fn, t, x)
    elif name == "allen-cahn":
        f = allen_cahn_residual(u_fn, t, x, problem.coefficients["eps"])
    elif name == "kdv":
        f = kdv_residual(u_fn, t, x)
    elif name == "schrodinger":
        f_re, f_im = schrodinger_residual(u_fn, t, x)
        return (f_re**2 + f_im**2).mean()
    else:
        raise KeyError(name)
    return (f**2).mean()
