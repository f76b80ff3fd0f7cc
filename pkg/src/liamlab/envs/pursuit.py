"""Predator-prey pursuit with particle kinematics and two fixed obstacles.

Agent 0 is the prey (the controlled agent); agents 1..3 are predators
(the modelled agents). All four navigate with {stay, -x, +x, -y, +y}
forces under the same damped double integrator as the speaker-listener
environment, with per-role acceleration and speed caps (prey is faster).
Positions are clamped to the [-1, 1] box and projected out of obstacle
discs after integration.

A predator touches the prey when their centre distance is at most the sum
of their body radii. At every step the set of touching predators is the
capture set: one toucher means the prey escaped a lone predator (predators
-1, prey +1); two or more mean a coordinated capture (predators +1, prey
-1); otherwise all rewards are 0. The episode runs to the fixed horizon.

The prey sees obstacles and predators only within ``receptive_radius`` of
its centre; predators see everything.

Prey observation layout (25 values):

    self_velocity  2    self_position  2
    obstacle_<k>   3    [visible flag, dx, dy] for k = 0, 1
    predator_<i>   5    [visible flag, dx, dy, dvx, dvy] for i = 1..3

Predator observation layout (16 values each):

    self_velocity  2    self_position  2
    obstacle_<k>   2    [dx, dy] for k = 0, 1
    predator_<j>   2    [dx, dy] per other predator, id order
    prey_rel       2    prey_rel_velocity  2
"""

from __future__ import annotations

import numpy as np

from .base import MultiAgentEnv, ObservationLayout, StepResult
from .speaker_listener import DAMPING, DT, MOVE_FORCES

N_PREDATORS = 3
N_OBSTACLES = 2
OBSTACLE_RADIUS = 0.2
PREY_RADIUS = 0.05
PREDATOR_RADIUS = 0.075
PREY_ACCEL = 4.0
PREDATOR_ACCEL = 3.0
PREY_MAX_SPEED = 1.3
PREDATOR_MAX_SPEED = 1.0
CAPTURE_RADIUS = PREY_RADIUS + PREDATOR_RADIUS

_PREY_LAYOUT = ObservationLayout(
    fields=(
        ("self_velocity", 2),
        ("self_position", 2),
        *[(f"obstacle_{k}", 3) for k in range(N_OBSTACLES)],
        *[(f"predator_{i}", 5) for i in range(1, N_PREDATORS + 1)],
    )
)


def capture_reward(capture_set_size: int) -> tuple[float, float]:
    """(per-predator reward, prey reward) for a step's capture-set size."""
    if capture_set_size == 0:
        return 0.0, 0.0
    if capture_set_size == 1:
        return -1.0, 1.0
    return 1.0, -1.0


class PursuitEnv(MultiAgentEnv):
    n_agents = 1 + N_PREDATORS

    def __init__(
        self,
        seed: int | None = None,
        horizon: int = 50,
        receptive_radius: float = 1.0,
    ):
        super().__init__(seed)
        self.horizon = horizon
        self.receptive_radius = receptive_radius
        self.positions = np.zeros((self.n_agents, 2))
        self.velocities = np.zeros((self.n_agents, 2))
        self.obstacles = np.zeros((N_OBSTACLES, 2))

    def action_heads(self, agent: int) -> tuple[int, ...]:
        return (len(MOVE_FORCES),)

    def observation_layout(self, agent: int) -> ObservationLayout:
        if agent == self.controlled_agent:
            return _PREY_LAYOUT
        others = [j for j in range(1, N_PREDATORS + 1) if j != agent]
        return ObservationLayout(
            fields=(
                ("self_velocity", 2),
                ("self_position", 2),
                *[(f"obstacle_{k}", 2) for k in range(N_OBSTACLES)],
                *[(f"predator_{j}", 2) for j in others],
                ("prey_rel", 2),
                ("prey_rel_velocity", 2),
            )
        )

    def _reset(self) -> list[np.ndarray]:
        self.obstacles = self._rng.uniform(-0.5, 0.5, size=(N_OBSTACLES, 2))
        self.velocities = np.zeros((self.n_agents, 2))
        radii = self._body_radii()
        for i in range(self.n_agents):
            while True:
                p = self._rng.uniform(-1.0, 1.0, size=2)
                clear = all(
                    np.linalg.norm(p - ob) > OBSTACLE_RADIUS + radii[i] for ob in self.obstacles
                )
                if clear:
                    self.positions[i] = p
                    break
        return [self._observe(i) for i in range(self.n_agents)]

    def _step(self, actions: list[tuple[int, ...]]) -> StepResult:
        radii = self._body_radii()
        for i, (move,) in enumerate(actions):
            accel = PREY_ACCEL if i == 0 else PREDATOR_ACCEL
            max_speed = PREY_MAX_SPEED if i == 0 else PREDATOR_MAX_SPEED
            v = self.velocities[i] * (1.0 - DAMPING) + MOVE_FORCES[move] * accel * DT
            speed = float(np.linalg.norm(v))
            if speed > max_speed:
                v = v * (max_speed / speed)
            self.velocities[i] = v
            p = self.positions[i] + v * DT
            p = self._project_out_of_obstacles(p, radii[i])
            self.positions[i] = np.clip(p, -1.0, 1.0)

        capture_set = sum(
            1
            for i in range(1, self.n_agents)
            if np.linalg.norm(self.positions[i] - self.positions[0]) <= CAPTURE_RADIUS
        )
        pred_r, prey_r = capture_reward(capture_set)
        rewards = np.array([prey_r] + [pred_r] * N_PREDATORS)
        return StepResult(
            observations=[self._observe(i) for i in range(self.n_agents)],
            rewards=rewards,
            done=False,
            info={"capture_set_size": capture_set},
        )

    def _body_radii(self) -> list[float]:
        return [PREY_RADIUS] + [PREDATOR_RADIUS] * N_PREDATORS

    def _project_out_of_obstacles(self, p: np.ndarray, radius: float) -> np.ndarray:
        for ob in self.obstacles:
            d = p - ob
            dist = float(np.linalg.norm(d))
            min_dist = OBSTACLE_RADIUS + radius
            if dist < min_dist:
                direction = d / dist if dist > 0 else np.array([1.0, 0.0])
                p = ob + direction * min_dist
        return p

    def _observe(self, agent: int) -> np.ndarray:
        if agent == self.controlled_agent:
            return self._observe_prey()
        return self._observe_predator(agent)

    def _observe_prey(self) -> np.ndarray:
        p = self.positions[0]
        parts = [self.velocities[0], p]
        for ob in self.obstacles:
            if np.linalg.norm(ob - p) <= self.receptive_radius:
                parts.append(np.concatenate([[1.0], ob - p]))
            else:
                parts.append(np.zeros(3))
        for i in range(1, self.n_agents):
            if np.linalg.norm(self.positions[i] - p) <= self.receptive_radius:
                parts.append(
                    np.concatenate(
                        [[1.0], self.positions[i] - p, self.velocities[i] - self.velocities[0]]
                    )
                )
            else:
                parts.append(np.zeros(5))
        return np.concatenate(parts)

    def _observe_predator(self, agent: int) -> np.ndarray:
        p = self.positions[agent]
        parts = [self.velocities[agent], p]
        for ob in self.obstacles:
            parts.append(ob - p)
        for j in range(1, self.n_agents):
            if j != agent:
                parts.append(self.positions[j] - p)
        parts.append(self.positions[0] - p)
        parts.append(self.velocities[0] - self.velocities[agent])
        return np.concatenate(parts)
