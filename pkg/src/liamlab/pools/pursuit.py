"""Heuristic fixed policies for the pursuit environment.

One fixed policy assigns each of the three predators a chase rule:

    i    chase the prey
    ii   chase the designated predator (global id 1); the designated
         predator itself falls back to the prey
    iii  chase the closest agent of any kind
    iv   chase the closest other predator

A predator steers toward its target along the axis with the larger
remaining distance (ties: vertical first). The pool is built by sampling
distinct rule triples.
"""

from __future__ import annotations

import numpy as np

from ..envs.pursuit import N_PREDATORS
from .base import FixedPolicy, FixedPolicyPool
from .speaker_listener import navigate

RULES = ("i", "ii", "iii", "iv")
PREDATOR_OBS_DIM = 16
DESIGNATED_PREDATOR = 1


def _rel_vectors(obs: np.ndarray, agent_id: int) -> dict[int, np.ndarray]:
    """Relative position of every other agent, keyed by global agent id."""
    others = [j for j in range(1, N_PREDATORS + 1) if j != agent_id]
    rel = {0: obs[12:14]}
    for slot, gid in enumerate(others):
        rel[gid] = obs[8 + 2 * slot : 10 + 2 * slot]
    return rel


def pp_heuristic_target(rule: str, obs: np.ndarray, agent_id: int) -> int:
    """Global id of the agent this predator should chase (0 is the prey)."""
    if rule not in RULES:
        raise ValueError(f"unknown pursuit rule '{rule}'")
    rel = _rel_vectors(obs, agent_id)
    if rule == "i":
        return 0
    if rule == "ii":
        return 0 if agent_id == DESIGNATED_PREDATOR else DESIGNATED_PREDATOR
    candidates = sorted(rel) if rule == "iii" else sorted(k for k in rel if k != 0)
    dists = [float(np.linalg.norm(rel[k])) for k in candidates]
    return candidates[int(np.argmin(dists))]


def _make_act_fn(rules: tuple[str, str, str]):
    def act(joint_obs: np.ndarray, rng: np.random.Generator) -> tuple[int, ...]:
        actions = []
        for slot in range(N_PREDATORS):
            agent_id = slot + 1
            obs = joint_obs[slot * PREDATOR_OBS_DIM : (slot + 1) * PREDATOR_OBS_DIM]
            target = pp_heuristic_target(rules[slot], obs, agent_id)
            delta = _rel_vectors(obs, agent_id)[target]
            actions.append(navigate(delta, deadzone=0.0, prefer_x=False))
        return tuple(actions)

    return act


def build_pp_pool(mode: str, size: int, seed: int) -> FixedPolicyPool:
    rng = np.random.default_rng(seed)
    n_combos = len(RULES) ** N_PREDATORS
    chosen = rng.choice(n_combos, size=min(size, n_combos), replace=False)
    policies = []
    for pid, combo in enumerate(chosen):
        idx = int(combo)
        rules = tuple(RULES[(idx // len(RULES) ** p) % len(RULES)] for p in range(N_PREDATORS))
        policies.append(
            FixedPolicy(
                id=pid,
                kind="pursuit_heuristic_triple",
                description=f"rules {rules}",
                obs_dim=N_PREDATORS * PREDATOR_OBS_DIM,
                act_fn=_make_act_fn(rules),
                params={"rules": list(rules)},
            )
        )
    return FixedPolicyPool(env_kind="pp", mode=mode, seed=seed, policies=policies)
