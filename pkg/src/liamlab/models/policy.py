"""Actor-critic network over the augmented observation (o, z).

Actor and critic share both hidden layers; the output side is one softmax
head per action factor plus a scalar value head.
"""

from __future__ import annotations

import numpy as np

from ..nn import Linear, ParameterStore, Tensor


class PolicyCritic:
    def __init__(
        self,
        store: ParameterStore,
        prefix: str,
        input_dim: int,
        action_heads: tuple[int, ...],
        hidden_dim: int,
        rng: np.random.Generator,
        dtype=np.float32,
    ):
        self.input_dim = input_dim
        self.action_heads = action_heads
        self.fc1 = Linear(store, prefix + ".fc1", input_dim, hidden_dim, rng, dtype, activation="relu")
        self.fc2 = Linear(store, prefix + ".fc2", hidden_dim, hidden_dim, rng, dtype, activation="relu")
        self.heads = [
            Linear(store, f"{prefix}.act_head_{i}", hidden_dim, n, rng, dtype)
            for i, n in enumerate(action_heads)
        ]
        self.value_head = Linear(store, prefix + ".value", hidden_dim, 1, rng, dtype)

    def forward(self, x: Tensor) -> tuple[list[Tensor], Tensor]:
        hidden = self.fc2(self.fc1(x))
        return [head(hidden) for head in self.heads], self.value_head(hidden)
