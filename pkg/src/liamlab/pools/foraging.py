"""Heuristic fixed policies for level-based foraging.

Four target-selection rules, each reading the modelled agent's full-state
observation:

    i    nearest food (manhattan distance)
    ii   food nearest to the centre of the visible players
    iii  nearest food whose level is at most the agent's own level
    iv   food with the smallest summed distance to all visible players,
         among foods loadable by the visible players' combined level

A rule whose filter leaves no food falls back to rule i. Ties break on the
food's absolute (row, col), lexicographically smallest first. Movement
reduces the axis with the larger remaining distance first (ties: vertical
first), detours along the other axis when the preferred step is blocked by
a wall, a food, or a visible agent, and issues LOAD when 4-adjacent to the
target. The pool reaches its size with epsilon-greedy jitter and
self-limited visibility-radius variants of the base rules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..envs.foraging import LEVEL_SCALE
from .base import FixedPolicy, FixedPolicyPool

RULES = ("i", "ii", "iii", "iv")
UP, DOWN, LEFT, RIGHT, LOAD = 0, 1, 2, 3, 4


@dataclass
class ParsedView:
    self_pos: np.ndarray  # grid cells
    self_level: int
    others: list[tuple[bool, np.ndarray, int]]  # (visible, cell, level)
    foods: list[tuple[bool, np.ndarray, int]]  # (present, cell, level)


def parse_view(obs: np.ndarray, cell_scale: int) -> ParsedView:
    """Recover grid-cell positions and levels from a normalized observation."""
    self_pos = np.rint(obs[0:2] * cell_scale).astype(int)
    self_level = int(round(obs[2] * LEVEL_SCALE))
    n_entities = (len(obs) - 3) // 4
    others = []
    foods = []
    # exactly one other agent precedes the food slots in this environment
    for k in range(n_entities):
        base = 3 + 4 * k
        flag = obs[base] > 0.5
        cell = self_pos + np.rint(obs[base + 1 : base + 3] * cell_scale).astype(int)
        level = int(round(obs[base + 3] * LEVEL_SCALE))
        if k == 0:
            others.append((flag, cell, level))
        else:
            foods.append((flag, cell, level))
    return ParsedView(self_pos, self_level, others, foods)


def _visible_players(view: ParsedView, radius: int | None) -> list[tuple[np.ndarray, int]]:
    players = [(view.self_pos, view.self_level)]
    for visible, cell, level in view.others:
        if not visible:
            continue
        if radius is not None and int(np.abs(cell - view.self_pos).max()) > radius:
            continue
        players.append((cell, level))
    return players


def lbf_heuristic_target(rule: str, view: ParsedView, radius: int | None = None) -> int | None:
    """Pick the target food index for a rule; None when no food remains."""
    present = [(j, cell, level) for j, (ok, cell, level) in enumerate(view.foods) if ok]
    if not present:
        return None
    players = _visible_players(view, radius)

    def nearest(cands):
        return min(
            cands,
            key=lambda jcl: (
                int(np.abs(jcl[1] - view.self_pos).sum()),
                int(jcl[1][0]),
                int(jcl[1][1]),
            ),
        )[0]

    if rule == "i":
        return nearest(present)
    if rule == "ii":
        centre = np.mean([p for p, _ in players], axis=0)
        return min(
            present,
            key=lambda jcl: (float(np.abs(jcl[1] - centre).sum()), int(jcl[1][0]), int(jcl[1][1])),
        )[0]
    if rule == "iii":
        compatible = [c for c in present if c[2] <= view.self_level]
        return nearest(compatible) if compatible else lbf_heuristic_target("i", view)
    if rule == "iv":
        level_sum = sum(level for _, level in players)
        loadable = [c for c in present if c[2] <= level_sum]
        if not loadable:
            return lbf_heuristic_target("i", view)
        return min(
            loadable,
            key=lambda jcl: (
                sum(int(np.abs(jcl[1] - p).sum()) for p, _ in players),
                int(jcl[1][0]),
                int(jcl[1][1]),
            ),
        )[0]
    raise ValueError(f"unknown foraging rule '{rule}'")


def _move_toward(view: ParsedView, target_cell: np.ndarray, grid_size: int) -> int:
    d = target_cell - view.self_pos
    if int(np.abs(d).sum()) == 1:
        return LOAD
    blocked_cells = {tuple(cell) for ok, cell, _ in view.foods if ok}
    blocked_cells |= {tuple(cell) for ok, cell, _ in view.others if ok}
    axes = [0, 1] if abs(d[0]) >= abs(d[1]) else [1, 0]
    fallback = None
    for axis in axes:
        if d[axis] == 0:
            continue
        step = np.zeros(2, dtype=int)
        step[axis] = 1 if d[axis] > 0 else -1
        action = (DOWN if step[0] > 0 else UP) if axis == 0 else (RIGHT if step[1] > 0 else LEFT)
        if fallback is None:
            fallback = action
        nxt = view.self_pos + step
        if not (0 <= nxt[0] < grid_size and 0 <= nxt[1] < grid_size):
            continue
        if tuple(nxt) in blocked_cells:
            continue
        return action
    return fallback if fallback is not None else LOAD


def _make_act_fn(rule: str, epsilon: float, radius: int | None, grid_size: int):
    cell_scale = grid_size - 1

    def act(obs: np.ndarray, rng: np.random.Generator) -> tuple[int]:
        if epsilon > 0 and rng.random() < epsilon:
            return (int(rng.integers(5)),)
        view = parse_view(obs, cell_scale)
        target = lbf_heuristic_target(rule, view, radius)
        if target is None:
            return (LOAD,)
        cell = view.foods[target][1]
        return (_move_toward(view, cell, grid_size),)

    return act


def build_lbf_pool(
    mode: str, size: int, seed: int, grid_size: int = 20, n_foods: int = 4
) -> FixedPolicyPool:
    variants: list[tuple[str, float, int | None]] = []
    variants += [(rule, 0.0, None) for rule in RULES]
    variants += [(rule, 0.1, None) for rule in RULES]
    variants += [("ii", 0.0, 4), ("iv", 0.0, 4)]
    eps = 0.2
    while len(variants) < size:
        variants += [(rule, eps, None) for rule in RULES]
        eps += 0.1
    obs_dim = 3 + 4 * 1 + 4 * n_foods
    policies = []
    for pid, (rule, epsilon, radius) in enumerate(variants[:size]):
        extras = f", eps {epsilon}" if epsilon else ""
        extras += f", radius {radius}" if radius is not None else ""
        policies.append(
            FixedPolicy(
                id=pid,
                kind="foraging_heuristic",
                description=f"rule {rule}{extras}",
                obs_dim=obs_dim,
                act_fn=_make_act_fn(rule, epsilon, radius, grid_size),
                params={"rule": rule, "epsilon": epsilon, "radius": radius},
            )
        )
    return FixedPolicyPool(env_kind="lbf", mode=mode, seed=seed, policies=policies)
