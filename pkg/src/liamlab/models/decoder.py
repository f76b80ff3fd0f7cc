"""Feed-forward reconstruction decoder with an observation head and one
categorical action head per reconstructed agent.

Output widths grow linearly with the number of reconstructed agents: the
observation head spans their concatenated observation vectors, and each
agent (or factored action component) gets its own softmax head.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nn import Linear, ParameterStore, Tensor, softmax_rows


@dataclass
class DecoderOutput:
    obs_recon: np.ndarray
    action_probs: list[np.ndarray]


class ReconstructionDecoder:
    def __init__(
        self,
        store: ParameterStore,
        prefix: str,
        z_dim: int,
        obs_dim: int,
        action_heads: tuple[int, ...],
        hidden_dim: int,
        rng: np.random.Generator,
        dtype=np.float32,
    ):
        self.z_dim = z_dim
        self.obs_dim = obs_dim
        self.action_heads = action_heads
        self.fc1 = Linear(store, prefix + ".fc1", z_dim, hidden_dim, rng, dtype, activation="relu")
        self.fc2 = Linear(store, prefix + ".fc2", hidden_dim, hidden_dim, rng, dtype, activation="relu")
        self.obs_head = Linear(store, prefix + ".obs_head", hidden_dim, obs_dim, rng, dtype)
        self.act_heads = [
            Linear(store, f"{prefix}.act_head_{i}", hidden_dim, n, rng, dtype)
            for i, n in enumerate(action_heads)
        ]

    def forward(self, z: Tensor) -> tuple[Tensor, list[Tensor]]:
        hidden = self.fc2(self.fc1(z))
        return self.obs_head(hidden), [head(hidden) for head in self.act_heads]

    def decode(self, z: np.ndarray) -> DecoderOutput:
        """Gradient-free decode; action heads softmax-normalized."""
        single = z.ndim == 1
        z2 = z[None, :] if single else z
        obs, logits = self.forward(Tensor(z2))
        probs = [softmax_rows(l).data for l in logits]
        if single:
            return DecoderOutput(obs.data[0], [p[0] for p in probs])
        return DecoderOutput(obs.data, probs)
