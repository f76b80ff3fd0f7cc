from ..errors import ConfigError
from .base import MultiAgentEnv, ObservationLayout, StepResult, export_trajectories
from .foraging import ForagingEnv, load_reward_shares
from .pursuit import PursuitEnv, capture_reward
from .speaker_listener import DoubleSpeakerListenerEnv, distance_reward

ENV_KINDS = ("dsl", "lbf", "pp")


def make_env(kind: str, seed: int | None = None, **params) -> MultiAgentEnv:
    """Build an environment by kind: dsl, lbf, or pp."""
    if kind == "dsl":
        return DoubleSpeakerListenerEnv(seed=seed, **params)
    if kind == "lbf":
        return ForagingEnv(seed=seed, **params)
    if kind == "pp":
        return PursuitEnv(seed=seed, **params)
    raise ConfigError(f"unknown environment kind '{kind}' (expected one of {ENV_KINDS})")


__all__ = [
    "ENV_KINDS",
    "DoubleSpeakerListenerEnv",
    "ForagingEnv",
    "MultiAgentEnv",
    "ObservationLayout",
    "PursuitEnv",
    "StepResult",
    "capture_reward",
    "distance_reward",
    "export_trajectories",
    "load_reward_shares",
    "make_env",
]
