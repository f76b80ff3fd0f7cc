"""Advantage actor-critic loss with entropy regularization.

The scalar loss is  0.5 * mean (V - target)^2  -  mean (A * log pi(a))
-  beta * mean H(pi),  where advantages and value targets are precomputed
constants; with factored actions the log-probability is the sum over heads
and the entropy is the sum of head entropies.
"""

from __future__ import annotations

import numpy as np

from ..nn import (
    Tensor,
    add,
    log_softmax_rows,
    mul,
    neg,
    scale,
    softmax_rows,
    sub,
    sum_all,
    sum_rows,
    take_per_row,
)


def joint_log_prob(action_logits: list[Tensor], actions: np.ndarray) -> Tensor:
    """Per-row log pi(a), summed across factored heads. Shape (N,)."""
    total = None
    for head, logits in enumerate(action_logits):
        lp = take_per_row(log_softmax_rows(logits), actions[:, head])
        total = lp if total is None else add(total, lp)
    return total


def mean_entropy(action_logits: list[Tensor]) -> Tensor:
    """Mean policy entropy per row, summed across heads."""
    n = action_logits[0].data.shape[0]
    total = None
    for logits in action_logits:
        p = softmax_rows(logits)
        ent = neg(sum_rows(mul(p, log_softmax_rows(logits))))
        total = ent if total is None else add(total, ent)
    return scale(sum_all(total), 1.0 / n)


def a2c_loss(
    action_logits: list[Tensor],
    values: Tensor,
    actions: np.ndarray,
    advantages: np.ndarray,
    value_targets: np.ndarray,
    entropy_beta: float,
) -> Tensor:
    """Scalar loss over a flattened batch; advantages enter as constants."""
    n = actions.shape[0]
    dtype = values.data.dtype
    logp = joint_log_prob(action_logits, actions)
    pg = scale(sum_all(mul(logp, Tensor(advantages.astype(dtype)))), -1.0 / n)
    err = sub(values, Tensor(value_targets.astype(dtype).reshape(values.data.shape)))
    value_term = scale(sum_all(mul(err, err)), 0.5 / n)
    loss = add(value_term, pg)
    if entropy_beta:
        loss = add(loss, scale(mean_entropy(action_logits), -entropy_beta))
    return loss
