"""Generalised advantage estimation over rollout segments.

Arrays are (T,) or (T, E) with one bootstrap value per environment closing
the segment. Episode boundaries inside the segment cut both the TD target
and the advantage recursion.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError


def gae_advantages(
    rewards: np.ndarray,
    values: np.ndarray,
    dones: np.ndarray,
    bootstrap_value: np.ndarray | float,
    gamma: float,
    lam: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Exponentially weighted advantage sums and their value targets.

    delta_t = r_t + gamma * V_{t+1} * (1 - done_t) - V_t, with V_T taken
    from ``bootstrap_value``; A_t = delta_t + gamma * lam * (1 - done_t) *
    A_{t+1}. Returns (advantages, advantages + values).
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    dones = np.asarray(dones, dtype=bool)
    squeeze = rewards.ndim == 1
    if squeeze:
        rewards = rewards[:, None]
        values = values[:, None]
        dones = dones[:, None]
    bootstrap = np.broadcast_to(
        np.asarray(bootstrap_value, dtype=np.float64), rewards.shape[1:]
    )
    if values.shape != rewards.shape or dones.shape != rewards.shape:
        raise DimensionError(
            f"gae: rewards {rewards.shape}, values {values.shape}, dones {dones.shape} "
            "must share one shape"
        )
    T = rewards.shape[0]
    advantages = np.zeros_like(rewards)
    carry = np.zeros(rewards.shape[1:])
    v_next = bootstrap
    for t in range(T - 1, -1, -1):
        live = 1.0 - dones[t]
        delta = rewards[t] + gamma * v_next * live - values[t]
        carry = delta + gamma * lam * live * carry
        advantages[t] = carry
        v_next = values[t]
    returns = advantages + values
    if squeeze:
        return advantages[:, 0], returns[:, 0]
    return advantages, returns
