"""Training losses for the agent models.

All functions take gradient-carrying tensors plus constant numpy targets
and return a scalar tensor. Row counts are the flattened (step, env)
batch, so "mean over rows" realizes the per-step average the losses are
defined with; observation errors sum over vector dimensions.
"""

from __future__ import annotations

import numpy as np

from ..errors import NumericError, UsageError
from ..nn import (
    Tensor,
    add,
    clip,
    div,
    exp,
    log_softmax_rows,
    matmul,
    mul,
    neg,
    scale,
    sqrt,
    sub,
    sum_all,
    sum_rows,
    take_per_row,
    transpose,
)

LOG_CLAMP = -30.0

# running count of clamped log-probabilities, for training diagnostics
clamp_events = {"count": 0}


def action_nll(action_logits: list[Tensor], actions: np.ndarray) -> Tensor:
    """Mean over rows of the negative log-likelihood, summed across heads.

    Log-probabilities are clamped at -30 so a dead softmax entry cannot
    poison the batch with -inf; clamp occurrences are counted.
    """
    n = actions.shape[0]
    total = None
    for head, logits in enumerate(action_logits):
        lp = take_per_row(log_softmax_rows(logits), actions[:, head])
        clamped = int((lp.data < LOG_CLAMP).sum())
        if clamped:
            clamp_events["count"] += clamped
            lp = clip(lp, LOG_CLAMP, None)
        total = lp if total is None else add(total, lp)
    return scale(sum_all(total), -1.0 / n)


def observation_sq_error(obs_pred: Tensor, obs_target: np.ndarray) -> Tensor:
    """Mean over rows of the squared error summed over observation dims."""
    d = sub(obs_pred, Tensor(obs_target))
    return scale(sum_all(mul(d, d)), 1.0 / obs_target.shape[0])


def reconstruction_loss(
    obs_pred: Tensor,
    obs_target: np.ndarray,
    action_logits: list[Tensor],
    action_targets: np.ndarray,
    recon_obs: bool = True,
    recon_act: bool = True,
) -> Tensor:
    """Squared observation error plus action negative log-likelihood.

    The two mask flags realize the no-observation- and no-action-
    reconstruction ablations; at least one term must stay enabled.
    """
    if not recon_obs and not recon_act:
        raise UsageError("reconstruction loss needs at least one enabled target")
    loss = None
    if recon_obs:
        loss = observation_sq_error(obs_pred, obs_target)
    if recon_act:
        term = action_nll(action_logits, action_targets)
        loss = term if loss is None else add(loss, term)
    return loss


def identity_classification_loss(logits: Tensor, policy_ids: np.ndarray) -> Tensor:
    """Mean categorical cross-entropy of the true fixed-policy identity."""
    k = logits.data.shape[1]
    if policy_ids.max(initial=0) >= k:
        raise UsageError(f"policy id {int(policy_ids.max())} outside classifier width {k}")
    lp = take_per_row(log_softmax_rows(logits), policy_ids)
    return scale(sum_all(lp), -1.0 / policy_ids.shape[0])


def _normalize_rows(z: Tensor) -> Tensor:
    sq = sum_rows(mul(z, z))
    if (sq.data <= 0).any():
        raise NumericError("zero-norm embedding in contrastive loss")
    return div(z, sqrt(sq))


def infonce_loss(
    controlled_steps: list[Tensor], modelled_steps: list[Tensor], temperature: float = 0.1
) -> Tensor:
    """Contrastive matching of controlled- and modelled-side embeddings.

    At each step, the M rows are embeddings of M concurrent episodes; row m
    of the controlled side must identify row m of the modelled side among
    all M candidates by cosine similarity. Cross-entropy is averaged over
    the M episodes and summed over steps.
    """
    total = None
    for z1, z2 in zip(controlled_steps, modelled_steps):
        m = z1.data.shape[0]
        sims = scale(matmul(_normalize_rows(z1), transpose(_normalize_rows(z2))), 1.0 / temperature)
        lp = take_per_row(log_softmax_rows(sims), np.arange(m))
        term = scale(sum_all(lp), -1.0 / m)
        total = term if total is None else add(total, term)
    return total


def gaussian_kl(mu_q: Tensor, logv_q: Tensor, mu_p: Tensor, logv_p: Tensor) -> Tensor:
    """KL(q || p) for diagonal Gaussians: summed over dims, meaned over rows."""
    n = mu_q.data.shape[0]
    diff = sub(mu_q, mu_p)
    inner = add(
        add(sub(logv_p, logv_q), exp(sub(logv_q, logv_p))),
        mul(mul(diff, diff), exp(neg(logv_p))),
    )
    per_dim = scale(add(inner, Tensor(np.asarray(-1.0, dtype=mu_q.data.dtype))), 0.5)
    return scale(sum_all(per_dim), 1.0 / n)


LOGV_CLAMP = 10.0


def clamp_log_variance(logv: Tensor) -> Tensor:
    """Keep log-variances inside [-10, 10]; count clamps for diagnostics."""
    clamped = int(((logv.data < -LOGV_CLAMP) | (logv.data > LOGV_CLAMP)).sum())
    if clamped:
        clamp_events["count"] += clamped
        return clip(logv, -LOGV_CLAMP, LOGV_CLAMP)
    return logv
