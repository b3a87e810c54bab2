"""tanh multilayer perceptron over normalized (t, x) inputs."""

from __future__ import annotations

import torch


class PinnNet(torch.nn.Module):
    """Fully connected tanh network mapping (t, x) to the field value.

    Inputs are affinely normalized to [-1, 1] per coordinate (fixed map
    from the problem domain) before the first layer; weights use Xavier
    initialization, reproducible via torch.manual_seed.
    """

    def __init__(self, arch, x_bounds, t_final, dtype=torch.float64):
        super().__init__()
        lo, hi = x_bounds
        self.register_buffer(
            "shift", torch.tensor([t_final / 2.0, (lo + hi) / 2.0], dtype=dtype)
        )
        self.register_buffer(
            "scale", torch.tensor([t_final / 2.0, (hi - lo) / 2.0], dtype=dtype)
        )
        sizes = [2] + [arch.width] * arch.hidden_layers + [arch.out_dim]
        layers = []
        for k in range(len(sizes) - 1):
            lin = torch.nn.Linear(sizes[k], sizes[k + 1], dtype=dtype)
            torch.nn.init.xavier_normal_(lin.weight)
            torch.nn.init.zeros_(lin.bias)
            layers.append(lin)
        self.layers = torch.nn.ModuleList(layers)

    def forward(self, t, x):
        z = (torch.stack([t, x], dim=-1) - self.shift) / self.scale
        for lin in self.layers[:-1]:
            z = torch.tanh(lin(z))
        out = self.layers[-1](z)
        return out.squeeze(-1) if out.shape[-1] == 1 else out
