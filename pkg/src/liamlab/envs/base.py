"""Common environment interface.

Observation vectors are flat float arrays with a named-slice layout that is
part of each environment's contract: the agent-model decoder reconstructs
these vectors, so field order, widths, and normalization are documented per
environment and covered by tests. Entities outside an agent's view are
zero-filled and accompanied by a visibility flag inside their slice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DimensionError, UsageError


@dataclass(frozen=True)
class ObservationLayout:
    """Ordered named slices of a flat observation vector."""

    fields: tuple[tuple[str, int], ...]

    @property
    def total(self) -> int:
        return sum(width for _, width in self.fields)

    def slice_of(self, name: str) -> slice:
        start = 0
        for fname, width in self.fields:
            if fname == name:
                return slice(start, start + width)
            start += width
        raise KeyError(name)

    def names(self) -> list[str]:
        return [name for name, _ in self.fields]


@dataclass
class StepResult:
    observations: list[np.ndarray]
    rewards: np.ndarray
    done: bool
    info: dict = field(default_factory=dict)


class MultiAgentEnv:
    """Base class: agent 0 is the controlled agent, the rest are modelled.

    Subclasses implement ``_reset``/``_step`` and the layout/action-space
    accessors; this class owns seeding, the step counter, and the horizon.
    """

    n_agents: int = 2
    horizon: int = 50
    controlled_agent: int = 0

    def __init__(self, seed: int | None = None):
        self._rng = np.random.default_rng(seed)
        self._t = 0
        self._done = True

    # -- per-environment surface -------------------------------------------
    def action_heads(self, agent: int) -> tuple[int, ...]:
        raise NotImplementedError

    def observation_layout(self, agent: int) -> ObservationLayout:
        raise NotImplementedError

    def _reset(self) -> list[np.ndarray]:
        raise NotImplementedError

    def _step(self, actions: list[tuple[int, ...]]) -> StepResult:
        raise NotImplementedError

    # -- shared driver ------------------------------------------------------
    def reset(self, seed: int | None = None) -> list[np.ndarray]:
        if seed is not None:
            self._rng = np.random.default_rng(seed)
        self._t = 0
        self._done = False
        obs = self._reset()
        self._check_layouts(obs)
        return obs

    def step(self, actions: Sequence) -> StepResult:
        if self._done:
            raise UsageError("step() after episode end; call reset() first")
        normalized = [self._normalize_action(a, agent) for agent, a in enumerate(actions)]
        if len(normalized) != self.n_agents:
            raise DimensionError(f"expected {self.n_agents} actions, got {len(normalized)}")
        result = self._step(normalized)
        self._t += 1
        if self._t >= self.horizon:
            result.done = True
        self._done = result.done
        self._check_layouts(result.observations)
        return result

    @property
    def t(self) -> int:
        return self._t

    def _normalize_action(self, action, agent: int) -> tuple[int, ...]:
        heads = self.action_heads(agent)
        parts = (int(action),) if np.isscalar(action) else tuple(int(a) for a in action)
        if len(parts) != len(heads):
            raise DimensionError(
                f"agent {agent}: action {parts} has {len(parts)} components, "
                f"expected {len(heads)}"
            )
        for value, width in zip(parts, heads):
            if not 0 <= value < width:
                raise DimensionError(f"agent {agent}: action component {value} outside [0, {width})")
        return parts

    def _check_layouts(self, observations: list[np.ndarray]) -> None:
        for agent, obs in enumerate(observations):
            expected = self.observation_layout(agent).total
            if obs.shape != (expected,):
                raise DimensionError(
                    f"agent {agent}: observation shape {obs.shape} != layout length {expected}"
                )

    # -- derived helpers ----------------------------------------------------
    @property
    def modelled_agents(self) -> list[int]:
        return [i for i in range(self.n_agents) if i != self.controlled_agent]

    @property
    def controlled_obs_dim(self) -> int:
        return self.observation_layout(self.controlled_agent).total

    @property
    def modelled_obs_dim(self) -> int:
        return sum(self.observation_layout(i).total for i in self.modelled_agents)

    @property
    def controlled_action_heads(self) -> tuple[int, ...]:
        return self.action_heads(self.controlled_agent)

    @property
    def modelled_action_heads(self) -> tuple[int, ...]:
        heads: list[int] = []
        for i in self.modelled_agents:
            heads.extend(self.action_heads(i))
        return tuple(heads)

    def joint_modelled_obs(self, observations: list[np.ndarray]) -> np.ndarray:
        return np.concatenate([observations[i] for i in self.modelled_agents])


def export_trajectories(
    env: MultiAgentEnv,
    act_fns: list[Callable],
    episodes: int,
    path,
    rng: np.random.Generator,
) -> int:
    """Roll episodes and write one JSON Lines record per step.

    ``act_fns[i]`` maps (observation, rng) to agent i's action. Record shape:
    {episode, t, obs: [per-agent lists], actions, rewards, done}. Returns the
    number of records written.
    """
    written = 0
    with open(path, "w", encoding="utf-8") as fh:
        for episode in range(episodes):
            obs = env.reset()
            done = False
            t = 0
            while not done:
                actions = [fn(obs[i], rng) for i, fn in enumerate(act_fns)]
                result = env.step(actions)
                record = {
                    "episode": episode,
                    "t": t,
                    "obs": [o.tolist() for o in obs],
                    "actions": [list(a) if isinstance(a, tuple) else int(a) for a in actions],
                    "rewards": result.rewards.tolist(),
                    "done": result.done,
                }
                fh.write(json.dumps(record) + "\n")
                written += 1
                obs = result.observations
                done = result.done
                t += 1
    return written
