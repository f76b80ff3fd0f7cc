"""Level-based foraging on a square grid.

Agents and foods carry levels. A group of agents standing on cells
4-adjacent to a food and choosing LOAD collects it if the sum of their
levels is at least the food's level. The reward for a collected food is
its level, split across the loaders in proportion to their levels and
normalized by the total level of all foods spawned in the episode, so
full collection yields a cumulative team reward of exactly 1.

The controlled agent sees entities up to ``view_radius`` grid cells away
(Chebyshev distance); the other, modelled agents see the whole grid. A
collected food is absent for everyone: its slice zeroes out and its flag
drops to 0.

Observation layout (same shape for every agent; G = grid_size):

    self              3   own (row, col) / (G - 1) and own level / 4
    agent_<i>         4   per other agent, id order: [visible flag,
                          d_row / (G - 1), d_col / (G - 1), level / 4]
    food_<j>          4   per food slot, spawn order: [present-and-visible
                          flag, d_row / (G - 1), d_col / (G - 1), level / 4]

Actions: 0 = up (-row), 1 = down (+row), 2 = left (-col), 3 = right
(+col), 4 = load. There is no no-op; a blocked move acts as one.

Movement conflicts resolve deterministically: a move commits only if the
target cell is inside the grid, holds no uncollected food, is nobody's
pre-step position, and was not claimed by a lower-indexed agent this step.
Loads are processed in food-index order; each agent joins at most one
load group per step.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from .base import MultiAgentEnv, ObservationLayout, StepResult

MOVES = np.array([[-1, 0], [1, 0], [0, -1], [0, 1]])
LOAD = 4
LEVEL_SCALE = 4.0


def load_reward_shares(
    food_level: int, loader_levels: list[int], total_food_level: int
) -> list[float]:
    """Per-loader reward for one collected food (proportional level split)."""
    level_sum = sum(loader_levels)
    return [food_level * (lv / level_sum) / total_food_level for lv in loader_levels]


class ForagingEnv(MultiAgentEnv):
    n_agents = 2

    def __init__(
        self,
        seed: int | None = None,
        grid_size: int = 20,
        n_foods: int = 4,
        view_radius: int = 4,
        horizon: int = 50,
        max_agent_level: int = 3,
    ):
        super().__init__(seed)
        if grid_size * grid_size < self.n_agents + n_foods:
            raise ConfigError(
                f"grid {grid_size}x{grid_size} too small for "
                f"{self.n_agents} agents + {n_foods} foods"
            )
        if grid_size < 2:
            raise ConfigError("grid_size must be at least 2")
        self.grid_size = grid_size
        self.n_foods = n_foods
        self.view_radius = view_radius
        self.horizon = horizon
        self.max_agent_level = max_agent_level
        self.agent_pos = np.zeros((self.n_agents, 2), dtype=int)
        self.agent_levels = np.ones(self.n_agents, dtype=int)
        self.food_pos = np.zeros((n_foods, 2), dtype=int)
        self.food_levels = np.ones(n_foods, dtype=int)
        self.food_present = np.ones(n_foods, dtype=bool)
        self.total_food_level = 1

    def action_heads(self, agent: int) -> tuple[int, ...]:
        return (5,)

    def observation_layout(self, agent: int) -> ObservationLayout:
        fields = [("self", 3)]
        fields += [(f"agent_{i}", 4) for i in range(self.n_agents) if i != agent]
        fields += [(f"food_{j}", 4) for j in range(self.n_foods)]
        return ObservationLayout(fields=tuple(fields))

    def _reset(self) -> list[np.ndarray]:
        n_cells = self.grid_size * self.grid_size
        cells = self._rng.choice(n_cells, size=self.n_agents + self.n_foods, replace=False)
        coords = np.stack([cells // self.grid_size, cells % self.grid_size], axis=1)
        self.agent_pos = coords[: self.n_agents].copy()
        self.food_pos = coords[self.n_agents :].copy()
        self.agent_levels = self._rng.integers(1, self.max_agent_level + 1, size=self.n_agents)
        max_food = min(4, int(self.agent_levels.sum()))
        self.food_levels = self._rng.integers(1, max_food + 1, size=self.n_foods)
        self.food_present = np.ones(self.n_foods, dtype=bool)
        self.total_food_level = int(self.food_levels.sum())
        return [self._observe(i) for i in range(self.n_agents)]

    def _step(self, actions: list[tuple[int, ...]]) -> StepResult:
        moves = [a[0] for a in actions]
        self._resolve_moves(moves)
        rewards, loads = self._resolve_loads(moves)
        done = not self.food_present.any()
        return StepResult(
            observations=[self._observe(i) for i in range(self.n_agents)],
            rewards=rewards,
            done=done,
            info={"loads": loads},
        )

    def _resolve_moves(self, moves: list[int]) -> None:
        old_pos = self.agent_pos.copy()
        claimed: set[tuple[int, int]] = set()
        new_pos = old_pos.copy()
        for i, move in enumerate(moves):
            if move == LOAD:
                continue
            target = old_pos[i] + MOVES[move]
            cell = (int(target[0]), int(target[1]))
            blocked = (
                not (0 <= cell[0] < self.grid_size and 0 <= cell[1] < self.grid_size)
                or any(
                    self.food_present[j] and (self.food_pos[j] == target).all()
                    for j in range(self.n_foods)
                )
                or any((old_pos[j] == target).all() for j in range(self.n_agents) if j != i)
                or cell in claimed
            )
            if not blocked:
                new_pos[i] = target
                claimed.add(cell)
        self.agent_pos = new_pos

    def _resolve_loads(self, moves: list[int]) -> tuple[np.ndarray, list]:
        rewards = np.zeros(self.n_agents)
        loaders = [i for i, m in enumerate(moves) if m == LOAD]
        used: set[int] = set()
        loads = []
        for j in range(self.n_foods):
            if not self.food_present[j]:
                continue
            group = [
                i
                for i in loaders
                if i not in used
                and abs(self.agent_pos[i] - self.food_pos[j]).sum() == 1
            ]
            if not group:
                continue
            group_levels = [int(self.agent_levels[i]) for i in group]
            if sum(group_levels) < self.food_levels[j]:
                continue
            shares = load_reward_shares(
                int(self.food_levels[j]), group_levels, self.total_food_level
            )
            for i, share in zip(group, shares):
                rewards[i] += share
                used.add(i)
            self.food_present[j] = False
            loads.append((j, tuple(group)))
        return rewards, loads

    def _observe(self, agent: int) -> np.ndarray:
        full_view = agent != self.controlled_agent
        scale = self.grid_size - 1
        own = self.agent_pos[agent]
        parts = [
            np.array(
                [own[0] / scale, own[1] / scale, self.agent_levels[agent] / LEVEL_SCALE]
            )
        ]
        for i in range(self.n_agents):
            if i == agent:
                continue
            visible = full_view or self._in_view(agent, self.agent_pos[i])
            if visible:
                d = self.agent_pos[i] - own
                parts.append(
                    np.array([1.0, d[0] / scale, d[1] / scale, self.agent_levels[i] / LEVEL_SCALE])
                )
            else:
                parts.append(np.zeros(4))
        for j in range(self.n_foods):
            visible = self.food_present[j] and (full_view or self._in_view(agent, self.food_pos[j]))
            if visible:
                d = self.food_pos[j] - own
                parts.append(
                    np.array([1.0, d[0] / scale, d[1] / scale, self.food_levels[j] / LEVEL_SCALE])
                )
            else:
                parts.append(np.zeros(4))
        return np.concatenate(parts)

    def _in_view(self, agent: int, cell: np.ndarray) -> bool:
        return int(abs(self.agent_pos[agent] - cell).max()) <= self.view_radius
