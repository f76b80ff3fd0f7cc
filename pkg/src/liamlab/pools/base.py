"""Fixed policy pools for the modelled agents.

A pool holds K pre-built joint policies for the modelled agent(s). One is
sampled uniformly at each episode start and stays fixed for the episode;
its identity is recorded in episode metadata for probes but never appears
in anything the learner consumes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import DimensionError, UsageError


@dataclass
class FixedPolicy:
    """One joint modelled-agent policy: full-state joint observation -> joint action."""

    id: int
    kind: str
    description: str
    obs_dim: int
    act_fn: Callable[[np.ndarray, np.random.Generator], tuple[int, ...]]
    params: dict = field(default_factory=dict)

    def act(self, modelled_obs: np.ndarray, rng: np.random.Generator) -> tuple[int, ...]:
        if modelled_obs.shape != (self.obs_dim,):
            raise DimensionError(
                f"policy {self.id}: observation shape {modelled_obs.shape} != ({self.obs_dim},)"
            )
        return self.act_fn(modelled_obs, rng)


@dataclass
class FixedPolicyPool:
    env_kind: str
    mode: str
    seed: int
    policies: list[FixedPolicy]

    @property
    def size(self) -> int:
        return len(self.policies)

    def sample(self, rng: np.random.Generator) -> FixedPolicy:
        if not self.policies:
            raise UsageError("cannot sample from an empty policy pool")
        return self.policies[int(rng.integers(self.size))]

    def manifest(self) -> dict:
        return {
            "env_kind": self.env_kind,
            "mode": self.mode,
            "seed": self.seed,
            "size": self.size,
            "policies": [
                {"id": p.id, "kind": p.kind, "description": p.description, "params": p.params}
                for p in self.policies
            ],
        }

    def write_manifest(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.manifest(), fh, indent=2, sort_keys=False)
            fh.write("\n")


def sample_policy(pool: FixedPolicyPool, rng: np.random.Generator) -> FixedPolicy:
    return pool.sample(rng)


def policy_act(
    policy: FixedPolicy, modelled_obs: np.ndarray, rng: np.random.Generator
) -> tuple[int, ...]:
    return policy.act(modelled_obs, rng)
