"""Reverse-mode automatic differentiation over dense numpy arrays.

A forward pass runs inside a ``Tape`` context: every primitive that touches
a gradient-carrying tensor appends one record (output, inputs, vector-Jacobian
product) to the tape, in execution order, which is automatically topological.
``backward`` replays the records once in reverse and accumulates gradients
into ``Tensor.grad``. Tapes are rebuilt on every forward pass, so truncated
recurrent training falls out naturally: anything computed outside the tape
(carried hidden state, environment observations) is a constant leaf.

Gradient buffers are never mutated in place anywhere in the package; a
vector-Jacobian product may therefore alias its upstream gradient safely.
Arithmetic runs at whatever dtype the operands carry: float64 in the test
suite, float32 in training builds.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..errors import DimensionError, NumericError, UsageError

_ACTIVE_TAPE: "Tape | None" = None


class Tensor:
    """Dense array plus an optional accumulated gradient of the same shape."""

    __slots__ = ("data", "grad", "requires_grad")

    def __init__(self, data, requires_grad: bool = False, dtype=None):
        self.data = np.asarray(data, dtype=dtype)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def detach(self) -> "Tensor":
        """Same data, no gradient path."""
        return Tensor(self.data)

    def item(self) -> float:
        return float(self.data)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"


class Tape:
    """Execution-ordered record of primitives, consumed by one backward sweep."""

    __slots__ = ("_records", "_consumed")

    def __init__(self):
        self._records: list[tuple[Tensor, tuple[Tensor, ...], Callable]] = []
        self._consumed = False

    def __enter__(self) -> "Tape":
        global _ACTIVE_TAPE
        if _ACTIVE_TAPE is not None:
            raise UsageError("a tape is already active; tapes do not nest")
        _ACTIVE_TAPE = self
        return self

    def __exit__(self, *exc) -> None:
        global _ACTIVE_TAPE
        _ACTIVE_TAPE = None

    def __len__(self) -> int:
        return len(self._records)


def backward(tape: Tape, loss: Tensor) -> None:
    """Accumulate d loss / d param into every recorded gradient-carrying tensor.

    The tape is cleared afterwards; a second sweep over the same tape is a
    usage error. Gradients accumulate across sweeps of *different* tapes,
    so callers zero them (via the optimizer) between updates.
    """
    if tape._consumed:
        raise UsageError("tape already consumed by a previous backward pass")
    if loss.data.size != 1:
        raise UsageError(f"backward needs a scalar loss, got shape {loss.shape}")
    loss.grad = np.ones_like(loss.data)
    for out, inputs, vjp in reversed(tape._records):
        g = out.grad
        if g is None:
            continue
        for tensor, grad_in in zip(inputs, vjp(g)):
            if grad_in is None or not tensor.requires_grad:
                continue
            tensor.grad = grad_in if tensor.grad is None else tensor.grad + grad_in
    tape._records.clear()
    tape._consumed = True


def _record(out: Tensor, inputs: tuple[Tensor, ...], vjp: Callable) -> Tensor:
    tape = _ACTIVE_TAPE
    if tape is not None and any(t.requires_grad for t in inputs):
        out.requires_grad = True
        tape._records.append((out, inputs, vjp))
    return out


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum `grad` down to `shape` (inverse of numpy broadcasting)."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad


# ---------------------------------------------------------------------------
# primitives
# ---------------------------------------------------------------------------

def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.data.ndim != 2 or b.data.ndim != 2 or a.data.shape[1] != b.data.shape[0]:
        raise DimensionError(f"matmul: {a.data.shape} @ {b.data.shape}")
    ad, bd = a.data, b.data
    out = Tensor(ad @ bd)
    return _record(out, (a, b), lambda g: (g @ bd.T, ad.T @ g))


def add(a: Tensor, b: Tensor) -> Tensor:
    out = Tensor(a.data + b.data)
    ash, bsh = a.data.shape, b.data.shape
    return _record(out, (a, b), lambda g: (_unbroadcast(g, ash), _unbroadcast(g, bsh)))


def sub(a: Tensor, b: Tensor) -> Tensor:
    out = Tensor(a.data - b.data)
    ash, bsh = a.data.shape, b.data.shape
    return _record(out, (a, b), lambda g: (_unbroadcast(g, ash), -_unbroadcast(g, bsh)))


def mul(a: Tensor, b: Tensor) -> Tensor:
    ad, bd = a.data, b.data
    out = Tensor(ad * bd)
    return _record(
        out,
        (a, b),
        lambda g: (_unbroadcast(g * bd, ad.shape), _unbroadcast(g * ad, bd.shape)),
    )


def div(a: Tensor, b: Tensor) -> Tensor:
    ad, bd = a.data, b.data
    out = Tensor(ad / bd)
    return _record(
        out,
        (a, b),
        lambda g: (
            _unbroadcast(g / bd, ad.shape),
            _unbroadcast(-g * ad / (bd * bd), bd.shape),
        ),
    )


def scale(a: Tensor, s: float) -> Tensor:
    out = Tensor(a.data * s)
    return _record(out, (a,), lambda g: (g * s,))


def neg(a: Tensor) -> Tensor:
    return scale(a, -1.0)


def relu(a: Tensor) -> Tensor:
    mask = a.data > 0  # subgradient at 0 is 0
    out = Tensor(a.data * mask)
    return _record(out, (a,), lambda g: (g * mask,))


def tanh(a: Tensor) -> Tensor:
    y = np.tanh(a.data)
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * (1.0 - y * y),))


def sigmoid(a: Tensor) -> Tensor:
    x = a.data
    y = np.empty_like(x)
    pos = x >= 0
    y[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    y[~pos] = ex / (1.0 + ex)
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * y * (1.0 - y),))


def exp(a: Tensor) -> Tensor:
    y = np.exp(a.data)
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * y,))


def sqrt(a: Tensor) -> Tensor:
    y = np.sqrt(a.data)
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * 0.5 / y,))


def clip(a: Tensor, lo: float | None, hi: float | None) -> Tensor:
    x = a.data
    mask = np.ones(x.shape, dtype=bool)
    if lo is not None:
        mask &= x >= lo
    if hi is not None:
        mask &= x <= hi
    out = Tensor(np.clip(x, lo, hi))
    return _record(out, (a,), lambda g: (g * mask,))


def sum_all(a: Tensor) -> Tensor:
    shape, dt = a.data.shape, a.data.dtype
    out = Tensor(np.asarray(a.data.sum(), dtype=dt))
    return _record(out, (a,), lambda g: (np.full(shape, g, dtype=dt),))


def mean_all(a: Tensor) -> Tensor:
    return scale(sum_all(a), 1.0 / a.data.size)


def sum_rows(a: Tensor) -> Tensor:
    """Row sums of a 2-d tensor, keepdims: (n, m) -> (n, 1)."""
    m = a.data.shape[1]
    out = Tensor(a.data.sum(axis=1, keepdims=True))
    return _record(out, (a,), lambda g: (np.repeat(g, m, axis=1),))


def transpose(a: Tensor) -> Tensor:
    out = Tensor(a.data.T)
    return _record(out, (a,), lambda g: (g.T,))


def concat_cols(tensors: Sequence[Tensor]) -> Tensor:
    widths = [t.data.shape[1] for t in tensors]
    out = Tensor(np.concatenate([t.data for t in tensors], axis=1))
    splits = np.cumsum(widths)[:-1]

    def vjp(g):
        return tuple(np.split(g, splits, axis=1))

    return _record(out, tuple(tensors), vjp)


def concat_rows(tensors: Sequence[Tensor]) -> Tensor:
    heights = [t.data.shape[0] for t in tensors]
    out = Tensor(np.concatenate([t.data for t in tensors], axis=0))
    splits = np.cumsum(heights)[:-1]

    def vjp(g):
        return tuple(np.split(g, splits, axis=0))

    return _record(out, tuple(tensors), vjp)


def slice_cols(a: Tensor, start: int, stop: int) -> Tensor:
    shape = a.data.shape
    out = Tensor(a.data[:, start:stop])

    def vjp(g):
        full = np.zeros(shape, dtype=g.dtype)
        full[:, start:stop] = g
        return (full,)

    return _record(out, (a,), vjp)


def softmax_rows(a: Tensor) -> Tensor:
    """Row-wise softmax with max-subtraction; rejects non-finite logits."""
    x = a.data
    if not np.isfinite(x).all():
        raise NumericError("softmax: non-finite input")
    shifted = x - x.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    y = e / e.sum(axis=1, keepdims=True)
    out = Tensor(y)

    def vjp(g):
        return ((g - (g * y).sum(axis=1, keepdims=True)) * y,)

    return _record(out, (a,), vjp)


def log_softmax_rows(a: Tensor) -> Tensor:
    x = a.data
    if not np.isfinite(x).all():
        raise NumericError("log_softmax: non-finite input")
    shifted = x - x.max(axis=1, keepdims=True)
    log_z = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    y = shifted - log_z
    out = Tensor(y)

    def vjp(g):
        return (g - np.exp(y) * g.sum(axis=1, keepdims=True),)

    return _record(out, (a,), vjp)


def take_per_row(a: Tensor, indices: np.ndarray) -> Tensor:
    """out[i] = a[i, indices[i]]; result has shape (n,)."""
    idx = np.asarray(indices)
    if idx.ndim != 1 or idx.shape[0] != a.data.shape[0]:
        raise DimensionError(
            f"take_per_row: {a.data.shape} rows vs {idx.shape} indices"
        )
    rows = np.arange(a.data.shape[0])
    out = Tensor(a.data[rows, idx])
    shape = a.data.shape

    def vjp(g):
        full = np.zeros(shape, dtype=g.dtype)
        full[rows, idx] = g
        return (full,)

    return _record(out, (a,), vjp)
