"""Parameter storage and the two layer types the models are built from."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError, UsageError
from .tensor import Tensor, add, concat_cols, matmul, mul, relu, sigmoid, slice_cols, tanh


@dataclass
class ParamEntry:
    """One named parameter with its Adam state; arrays all share one shape."""

    tensor: Tensor
    m: np.ndarray
    v: np.ndarray
    step: int = 0


class ParameterStore:
    """Ordered collection of named parameters owned by one training loop.

    Iteration order is insertion order, which makes optimizer sweeps,
    checkpoints, and byte-level comparisons deterministic.
    """

    def __init__(self):
        self._entries: dict[str, ParamEntry] = {}

    def add(self, name: str, tensor: Tensor) -> Tensor:
        if name in self._entries:
            raise UsageError(f"duplicate parameter name '{name}'")
        tensor.requires_grad = True
        self._entries[name] = ParamEntry(
            tensor=tensor,
            m=np.zeros_like(tensor.data),
            v=np.zeros_like(tensor.data),
        )
        return tensor

    def entries(self):
        return self._entries.items()

    def names(self) -> list[str]:
        return list(self._entries)

    def entry(self, name: str) -> ParamEntry:
        return self._entries[name]

    def tensors(self) -> list[Tensor]:
        return [e.tensor for e in self._entries.values()]

    def zero_grads(self) -> None:
        for e in self._entries.values():
            e.tensor.grad = None

    def num_params(self) -> int:
        return sum(e.tensor.data.size for e in self._entries.values())

    def param_bytes(self) -> bytes:
        """Concatenated raw parameter bytes; used to audit update isolation."""
        return b"".join(
            np.ascontiguousarray(e.tensor.data).tobytes()
            for e in self._entries.values()
        )

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._entries


def uniform_init(rng: np.random.Generator, shape, bound: float, dtype) -> np.ndarray:
    return rng.uniform(-bound, bound, size=shape).astype(dtype)


class Linear:
    """Affine layer y = xW + b with an optional ReLU.

    Weights and bias are initialized uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)).
    """

    def __init__(
        self,
        store: ParameterStore,
        name: str,
        fan_in: int,
        fan_out: int,
        rng: np.random.Generator,
        dtype=np.float64,
        activation: str = "none",
    ):
        if activation not in ("none", "relu"):
            raise UsageError(f"unknown activation '{activation}'")
        bound = 1.0 / np.sqrt(fan_in)
        self.W = store.add(name + ".W", Tensor(uniform_init(rng, (fan_in, fan_out), bound, dtype)))
        self.b = store.add(name + ".b", Tensor(uniform_init(rng, (fan_out,), bound, dtype)))
        self.activation = activation

    def __call__(self, x: Tensor) -> Tensor:
        if x.data.ndim != 2 or x.data.shape[1] != self.W.data.shape[0]:
            raise DimensionError(
                f"linear: input {x.data.shape} incompatible with weight {self.W.data.shape}"
            )
        y = add(matmul(x, self.W), self.b)
        if self.activation == "relu":
            y = relu(y)
        return y


class LSTMCell:
    """Single-step LSTM cell. Gate layout along the last axis is (i, f, g, o).

    Standard equations: i, f, o are sigmoid gates, the candidate g is tanh,
    c' = f*c + i*g and h' = o*tanh(c'). The forget-gate bias starts at 1.0,
    all other parameters uniform(-1/sqrt(hidden), +1/sqrt(hidden)).
    """

    def __init__(
        self,
        store: ParameterStore,
        name: str,
        input_dim: int,
        hidden_dim: int,
        rng: np.random.Generator,
        dtype=np.float64,
    ):
        bound = 1.0 / np.sqrt(hidden_dim)
        self.hidden_dim = hidden_dim
        self.input_dim = input_dim
        self.W_ih = store.add(
            name + ".W_ih", Tensor(uniform_init(rng, (input_dim, 4 * hidden_dim), bound, dtype))
        )
        self.W_hh = store.add(
            name + ".W_hh", Tensor(uniform_init(rng, (hidden_dim, 4 * hidden_dim), bound, dtype))
        )
        b = uniform_init(rng, (4 * hidden_dim,), bound, dtype)
        b[hidden_dim : 2 * hidden_dim] = 1.0
        self.b = store.add(name + ".b", Tensor(b))

    def step(self, x: Tensor, h: Tensor, c: Tensor) -> tuple[Tensor, Tensor]:
        H = self.hidden_dim
        if x.data.ndim != 2 or x.data.shape[1] != self.input_dim:
            raise DimensionError(
                f"lstm_step: input {x.data.shape} incompatible with W_ih {self.W_ih.data.shape}"
            )
        if h.data.shape != (x.data.shape[0], H) or c.data.shape != h.data.shape:
            raise DimensionError(
                f"lstm_step: state shapes {h.data.shape}/{c.data.shape} do not match "
                f"batch {x.data.shape[0]} x hidden {H}"
            )
        gates = add(add(matmul(x, self.W_ih), matmul(h, self.W_hh)), self.b)
        i = sigmoid(slice_cols(gates, 0, H))
        f = sigmoid(slice_cols(gates, H, 2 * H))
        g = tanh(slice_cols(gates, 2 * H, 3 * H))
        o = sigmoid(slice_cols(gates, 3 * H, 4 * H))
        c_next = add(mul(f, c), mul(i, g))
        h_next = mul(o, tanh(c_next))
        return h_next, c_next


def linear_forward(x: Tensor, W: Tensor, b: Tensor, activation: str = "none") -> Tensor:
    """Functional form of the affine layer, for callers that own raw tensors."""
    if activation not in ("none", "relu"):
        raise UsageError(f"unknown activation '{activation}'")
    if x.data.ndim != 2 or x.data.shape[1] != W.data.shape[0]:
        raise DimensionError(f"linear_forward: input {x.data.shape} vs weight {W.data.shape}")
    y = add(matmul(x, W), b)
    return relu(y) if activation == "relu" else y


def one_hot(indices: np.ndarray, width: int, dtype=np.float64) -> np.ndarray:
    """Rows of one-hot vectors; a negative index yields an all-zero row."""
    idx = np.asarray(indices)
    out = np.zeros((idx.shape[0], width), dtype=dtype)
    valid = idx >= 0
    out[np.nonzero(valid)[0], idx[valid]] = 1.0
    return out


def concat_features(parts: list[np.ndarray]) -> np.ndarray:
    return np.concatenate(parts, axis=1)
