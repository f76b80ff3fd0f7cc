from ..errors import ConfigError
from .base import FixedPolicy, FixedPolicyPool, policy_act, sample_policy
from .foraging import build_lbf_pool, lbf_heuristic_target, parse_view
from .pursuit import build_pp_pool, pp_heuristic_target
from .speaker_listener import all_message_maps, build_dsl_pool, navigate

POOL_MODES = ("paired", "cartesian")


def build_pool(env_kind: str, mode: str = "paired", size: int = 10, seed: int = 0, **env_info):
    """Construct the fixed modelled-agent policy pool for an environment kind."""
    if mode not in POOL_MODES:
        raise ConfigError(f"unknown pool mode '{mode}' (expected one of {POOL_MODES})")
    if env_kind == "dsl":
        return build_dsl_pool(mode, size, seed)
    if env_kind == "lbf":
        return build_lbf_pool(mode, size, seed, **env_info)
    if env_kind == "pp":
        return build_pp_pool(mode, size, seed)
    raise ConfigError(f"unsupported environment kind '{env_kind}' for pool construction")


__all__ = [
    "POOL_MODES",
    "FixedPolicy",
    "FixedPolicyPool",
    "all_message_maps",
    "build_dsl_pool",
    "build_lbf_pool",
    "build_pool",
    "build_pp_pool",
    "lbf_heuristic_target",
    "navigate",
    "parse_view",
    "policy_act",
    "pp_heuristic_target",
    "sample_policy",
]
