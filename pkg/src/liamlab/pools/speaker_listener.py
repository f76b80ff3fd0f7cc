"""Fixed policies for the double speaker-listener environment.

Each policy pairs a constant colour->message map with a scripted navigator.
The map is an injection from the three colours into the five one-hot
messages; distinct policies use distinct maps, so the same colour is
announced with different messages by different policies. The navigator
decodes the message it received (through its own map's inverse) into a
landmark colour and steers toward that landmark; undecodable or absent
messages make it hold still.

In paired mode K maps are each tied to the default navigator. Cartesian
mode crosses 10 maps with 10 navigator parameter variants (deadzone x
preferred axis) into 100 policies.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from ..envs.speaker_listener import _LAYOUT, N_COLOURS, N_MESSAGES
from .base import FixedPolicy, FixedPolicyPool

_MSG_SLICE = _LAYOUT.slice_of("received_message")
_COLOUR_SLICE = _LAYOUT.slice_of("other_colour")
_LANDMARK_SLICE = _LAYOUT.slice_of("landmark_rel")

NAVIGATOR_DEADZONES = (0.02, 0.05, 0.08, 0.12, 0.15)
DEFAULT_DEADZONE = 0.05


def all_message_maps() -> list[tuple[int, ...]]:
    """Every injection of the 3 colours into the 5 messages, in a fixed order."""
    return list(permutations(range(N_MESSAGES), N_COLOURS))


def navigate(delta: np.ndarray, deadzone: float, prefer_x: bool) -> int:
    """Discretize a relative target vector into one of the 5 movement actions."""
    dx, dy = float(delta[0]), float(delta[1])
    if max(abs(dx), abs(dy)) <= deadzone:
        return 0
    if abs(dx) > abs(dy) or (abs(dx) == abs(dy) and prefer_x):
        return 2 if dx > 0 else 1
    return 4 if dy > 0 else 3


def _make_act_fn(message_map: tuple[int, ...], deadzone: float, prefer_x: bool):
    inverse = {msg: colour for colour, msg in enumerate(message_map)}

    def act(obs: np.ndarray, rng: np.random.Generator) -> tuple[int, int]:
        partner_colour = int(np.argmax(obs[_COLOUR_SLICE]))
        message = message_map[partner_colour]
        received = obs[_MSG_SLICE]
        move = 0
        if received.any():
            colour = inverse.get(int(np.argmax(received)))
            if colour is not None:
                delta = obs[_LANDMARK_SLICE][2 * colour : 2 * colour + 2]
                move = navigate(delta, deadzone, prefer_x)
        return move, message

    return act


def build_dsl_pool(mode: str, size: int, seed: int) -> FixedPolicyPool:
    rng = np.random.default_rng(seed)
    maps = all_message_maps()
    policies: list[FixedPolicy] = []
    if mode == "paired":
        chosen = rng.choice(len(maps), size=size, replace=False)
        for pid, map_idx in enumerate(chosen):
            message_map = maps[int(map_idx)]
            policies.append(
                FixedPolicy(
                    id=pid,
                    kind="message_map",
                    description=f"map {message_map}, deadzone {DEFAULT_DEADZONE}",
                    obs_dim=_LAYOUT.total,
                    act_fn=_make_act_fn(message_map, DEFAULT_DEADZONE, prefer_x=True),
                    params={
                        "message_map": list(message_map),
                        "deadzone": DEFAULT_DEADZONE,
                        "prefer_x": True,
                    },
                )
            )
    else:  # cartesian: 10 maps x 10 navigators
        chosen = rng.choice(len(maps), size=10, replace=False)
        navigators = [(dz, px) for dz in NAVIGATOR_DEADZONES for px in (True, False)]
        pid = 0
        for map_idx in chosen:
            message_map = maps[int(map_idx)]
            for deadzone, prefer_x in navigators:
                policies.append(
                    FixedPolicy(
                        id=pid,
                        kind="message_map_x_navigator",
                        description=f"map {message_map}, deadzone {deadzone}, "
                        f"{'x' if prefer_x else 'y'}-first",
                        obs_dim=_LAYOUT.total,
                        act_fn=_make_act_fn(message_map, deadzone, prefer_x),
                        params={
                            "message_map": list(message_map),
                            "deadzone": deadzone,
                            "prefer_x": prefer_x,
                        },
                    )
                )
                pid += 1
    return FixedPolicyPool(env_kind="dsl", mode=mode, seed=seed, policies=policies)
