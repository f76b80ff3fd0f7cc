"""Adam with bias correction and global-gradient-norm clipping.

Both routines treat a missing gradient as zero (parameters whose loss term
was masked out still decay their moments). Gradient arrays are read, never
mutated in place; clipping replaces them with scaled copies.
"""

from __future__ import annotations

import numpy as np

from ..errors import NumericError
from .layers import ParameterStore


def adam_update(
    store: ParameterStore,
    lr: float,
    betas: tuple[float, float] = (0.9, 0.999),
    eps: float = 1e-8,
) -> None:
    """One Adam step over every entry; zeroes gradients and bumps step counters."""
    b1, b2 = betas
    for name, entry in store.entries():
        p = entry.tensor
        g = p.grad
        if g is None:
            g = np.zeros_like(p.data)
        elif not np.isfinite(g).all():
            raise NumericError(f"non-finite gradient for parameter '{name}'")
        entry.step += 1
        entry.m = b1 * entry.m + (1.0 - b1) * g
        entry.v = b2 * entry.v + (1.0 - b2) * (g * g)
        m_hat = entry.m / (1.0 - b1**entry.step)
        v_hat = entry.v / (1.0 - b2**entry.step)
        p.data = p.data - lr * m_hat / (np.sqrt(v_hat) + eps)
        p.grad = None


def clip_global_norm(store: ParameterStore, max_norm: float = 0.5) -> float:
    """Scale all gradients so their joint L2 norm is at most ``max_norm``.

    Returns the pre-clip norm. Entries without a gradient contribute zero.
    """
    total = 0.0
    for _, entry in store.entries():
        g = entry.tensor.grad
        if g is not None:
            total += float((g * g).sum())
    norm = float(np.sqrt(total))
    if norm > max_norm:
        s = max_norm / norm
        for _, entry in store.entries():
            g = entry.tensor.grad
            if g is not None:
                entry.tensor.grad = g * s
    return norm
