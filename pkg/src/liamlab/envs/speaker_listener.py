"""Double speaker-listener: two particle agents, three coloured landmarks.

Both agents simultaneously speak and listen. Each agent has a colour it
cannot perceive (the other agent can) and is rewarded for standing on the
landmark of its own colour, so it must decode the partner's messages while
emitting messages of its own. Landmark index doubles as colour index:
landmark 0 is red, 1 green, 2 blue.

Observation layout (identical for both agents, 18 values):

    self_velocity     2   own velocity (vx, vy)
    landmark_rel      6   landmark_i position minus own position, i = 0..2
    other_rel         2   other agent's position minus own position
    received_message  5   other agent's message one-hot from the previous
                          step; zeros at t = 0
    other_colour      3   other agent's colour one-hot

Everything is always visible except one's own colour, so this layout has
no visibility flags.

Actions are factored: movement in {stay, -x, +x, -y, +y} and a message
choice in {0..4}. Kinematics are a damped double integrator applied per
step: v <- v * (1 - damping); v += force * dt; p += v * dt, with dt = 0.1,
damping 0.25, and unit force along the chosen axis.
"""

from __future__ import annotations

import numpy as np

from .base import MultiAgentEnv, ObservationLayout, StepResult

N_COLOURS = 3
N_MESSAGES = 5
MOVE_FORCES = np.array(
    [[0.0, 0.0], [-1.0, 0.0], [1.0, 0.0], [0.0, -1.0], [0.0, 1.0]]
)
DT = 0.1
DAMPING = 0.25

_LAYOUT = ObservationLayout(
    fields=(
        ("self_velocity", 2),
        ("landmark_rel", 2 * N_COLOURS),
        ("other_rel", 2),
        ("received_message", N_MESSAGES),
        ("other_colour", N_COLOURS),
    )
)


def distance_reward(
    agent_positions: np.ndarray, agent_colours: np.ndarray, landmark_positions: np.ndarray
) -> float:
    """Shared reward: negative mean distance of each agent to its own-colour landmark."""
    dists = [
        float(np.linalg.norm(agent_positions[i] - landmark_positions[agent_colours[i]]))
        for i in range(len(agent_colours))
    ]
    return -float(np.mean(dists))


class DoubleSpeakerListenerEnv(MultiAgentEnv):
    n_agents = 2

    def __init__(self, seed: int | None = None, horizon: int = 25):
        super().__init__(seed)
        self.horizon = horizon
        self.positions = np.zeros((2, 2))
        self.velocities = np.zeros((2, 2))
        self.colours = np.zeros(2, dtype=int)
        self.landmarks = np.zeros((N_COLOURS, 2))
        self.last_messages = np.full(2, -1, dtype=int)

    def action_heads(self, agent: int) -> tuple[int, ...]:
        return (len(MOVE_FORCES), N_MESSAGES)

    def observation_layout(self, agent: int) -> ObservationLayout:
        return _LAYOUT

    def _reset(self) -> list[np.ndarray]:
        self.positions = self._rng.uniform(-1.0, 1.0, size=(2, 2))
        self.velocities = np.zeros((2, 2))
        self.landmarks = self._rng.uniform(-1.0, 1.0, size=(N_COLOURS, 2))
        self.colours = self._rng.integers(0, N_COLOURS, size=2)
        self.last_messages = np.full(2, -1, dtype=int)
        return [self._observe(i) for i in range(2)]

    def _step(self, actions: list[tuple[int, ...]]) -> StepResult:
        for i, (move, _msg) in enumerate(actions):
            v = self.velocities[i] * (1.0 - DAMPING) + MOVE_FORCES[move] * DT
            self.velocities[i] = v
            self.positions[i] = self.positions[i] + v * DT
        self.last_messages = np.array([msg for _move, msg in actions], dtype=int)
        reward = distance_reward(self.positions, self.colours, self.landmarks)
        return StepResult(
            observations=[self._observe(i) for i in range(2)],
            rewards=np.array([reward, reward]),
            done=False,
            info={},
        )

    def _observe(self, agent: int) -> np.ndarray:
        other = 1 - agent
        msg = np.zeros(N_MESSAGES)
        if self.last_messages[other] >= 0:
            msg[self.last_messages[other]] = 1.0
        colour = np.zeros(N_COLOURS)
        colour[self.colours[other]] = 1.0
        return np.concatenate(
            [
                self.velocities[agent],
                (self.landmarks - self.positions[agent]).ravel(),
                self.positions[other] - self.positions[agent],
                msg,
                colour,
            ]
        )
