"""Recurrent trajectory encoder: LSTM cell plus a linear/ReLU output head.

The encoder consumes one (observation, previous-action) input per
environment step and emits a feature vector whose value depends only on
the history up to that step. Hidden state starts at zero at every episode
start and advances exactly once per step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nn import LSTMCell, Linear, ParameterStore, Tensor


@dataclass
class EncoderState:
    h: np.ndarray
    c: np.ndarray
    t: int = 0


class RecurrentEncoder:
    def __init__(
        self,
        store: ParameterStore,
        prefix: str,
        input_dim: int,
        hidden_dim: int,
        out_dim: int,
        rng: np.random.Generator,
        dtype=np.float32,
    ):
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        self.out_dim = out_dim
        self.dtype = dtype
        self.lstm = LSTMCell(store, prefix + ".lstm", input_dim, hidden_dim, rng, dtype)
        self.head = Linear(store, prefix + ".head", hidden_dim, out_dim, rng, dtype, activation="relu")

    def initial_state(self, batch: int) -> EncoderState:
        zeros = np.zeros((batch, self.hidden_dim), dtype=self.dtype)
        return EncoderState(h=zeros.copy(), c=zeros.copy(), t=0)

    def step(self, x: Tensor, h: Tensor, c: Tensor) -> tuple[Tensor, Tensor, Tensor]:
        h2, c2 = self.lstm.step(x, h, c)
        return self.head(h2), h2, c2

    def step_state(self, x: np.ndarray, state: EncoderState) -> tuple[np.ndarray, EncoderState]:
        """Gradient-free stepping for action selection and probes."""
        feat, h2, c2 = self.step(Tensor(x.astype(self.dtype)), Tensor(state.h), Tensor(state.c))
        return feat.data, EncoderState(h=h2.data, c=c2.data, t=state.t + 1)
