"""Run configuration: dataclasses, INI-file loading, validation.

Config files are key = value sections ([run], [training], [env]); unknown
sections or keys are rejected outright, and command-line flags override
file values. Defaults follow the published hyperparameters: Adam with
learning rates 3e-4 (RL) and 7e-4 (encoder-decoder), gradient clip 0.5,
GAE lambda 0.95, 10 parallel environments, 128-wide hidden layers, and an
entropy weight of 1e-2 except 1e-3 for foraging.
"""

from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from ..envs import ENV_KINDS
from ..errors import ConfigError
from ..models import VariantSpec
from ..pools import POOL_MODES

DEFAULT_ENTROPY_BETA = {"dsl": 1e-2, "pp": 1e-2, "lbf": 1e-3}
DEFAULT_TOTAL_STEPS = {"dsl": 1_000_000, "lbf": 500_000, "pp": 500_000}

ENV_PARAM_KEYS = {
    "dsl": ("horizon",),
    "lbf": ("horizon", "grid_size", "n_foods", "view_radius", "max_agent_level"),
    "pp": ("horizon", "receptive_radius"),
}


@dataclass
class TrainingConfig:
    total_steps: int | None = None  # env-dependent default when None
    num_envs: int = 10
    update_frequency: int = 10
    gamma: float = 0.99
    gae_lambda: float = 0.95
    entropy_beta: float | None = None  # env-dependent default when None
    lr_rl: float = 3e-4
    lr_ed: float = 7e-4
    clip_norm: float = 0.5
    hidden_dim: int = 128
    embed_dim: int = 128
    vae_latent_dim: int = 64
    eval_every_episodes: int = 100
    eval_episodes: int = 30
    advantage_norm: bool = False
    temperature: float = 0.1
    precision: str = "float32"


@dataclass
class RunConfig:
    env_kind: str = ""
    variant: str = "liam"
    seed: int = 0
    out_dir: str | None = None
    deterministic: bool = True
    pool_mode: str = "paired"
    pool_size: int = 10
    encoder_inputs: tuple[str, ...] = ("obs", "act")
    decoder_targets: tuple[str, ...] = ("obs", "act")
    env_params: dict = field(default_factory=dict)
    training: TrainingConfig = field(default_factory=TrainingConfig)

    # -- resolved values -----------------------------------------------------
    def entropy_beta(self) -> float:
        if self.training.entropy_beta is not None:
            return self.training.entropy_beta
        return DEFAULT_ENTROPY_BETA[self.env_kind]

    def total_steps(self) -> int:
        if self.training.total_steps is not None:
            return self.training.total_steps
        return DEFAULT_TOTAL_STEPS[self.env_kind]

    def variant_spec(self) -> VariantSpec:
        return VariantSpec.parse(self.variant, self.encoder_inputs, self.decoder_targets)

    def dtype(self):
        return np.float32 if self.training.precision == "float32" else np.float64

    # -- validation ------------------------------------------------------------
    def validate(self) -> "RunConfig":
        if not self.env_kind:
            raise ConfigError("missing required key 'env'")
        if self.env_kind not in ENV_KINDS:
            raise ConfigError(f"env '{self.env_kind}' not one of {ENV_KINDS}")
        self.variant_spec()  # raises on unknown variant
        if self.pool_mode not in POOL_MODES:
            raise ConfigError(f"pool_mode '{self.pool_mode}' not one of {POOL_MODES}")
        if self.pool_size < 1:
            raise ConfigError("pool_size must be >= 1")
        t = self.training
        checks = [
            (0.0 < t.gamma < 1.0, "gamma must lie in (0, 1)"),
            (0.0 <= t.gae_lambda <= 1.0, "gae_lambda must lie in [0, 1]"),
            (
                t.entropy_beta is None or t.entropy_beta >= 0.0,
                "entropy_beta must be >= 0",
            ),
            (t.lr_rl > 0.0, "lr_rl must be > 0"),
            (t.lr_ed > 0.0, "lr_ed must be > 0"),
            (t.clip_norm > 0.0, "clip_norm must be > 0"),
            (t.num_envs >= 1, "envs must be >= 1"),
            (t.update_frequency >= 1, "update_freq must be >= 1"),
            (t.total_steps is None or t.total_steps >= 1, "steps must be >= 1"),
            (t.eval_episodes >= 1, "eval_episodes must be >= 1"),
            (t.eval_every_episodes >= 0, "eval_every_episodes must be >= 0"),
            (t.temperature > 0.0, "temperature must be > 0"),
            (t.hidden_dim >= 1, "hidden must be >= 1"),
            (t.embed_dim >= 1, "embed_dim must be >= 1"),
            (t.vae_latent_dim >= 1, "vae_latent must be >= 1"),
            (t.precision in ("float32", "float64"), "precision must be float32 or float64"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        allowed = ENV_PARAM_KEYS[self.env_kind]
        for key in self.env_params:
            if key not in allowed:
                raise ConfigError(f"unknown env key '{key}' for {self.env_kind}")
        return self

    # -- serialization -----------------------------------------------------------
    def to_dict(self) -> dict:
        out = asdict(self)
        out["encoder_inputs"] = list(self.encoder_inputs)
        out["decoder_targets"] = list(self.decoder_targets)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        training = TrainingConfig(**data.pop("training"))
        data["encoder_inputs"] = tuple(data["encoder_inputs"])
        data["decoder_targets"] = tuple(data["decoder_targets"])
        return cls(training=training, **data)

    def to_ini(self) -> str:
        t = self.training
        lines = ["[run]"]
        lines.append(f"env = {self.env_kind}")
        lines.append(f"variant = {self.variant}")
        lines.append(f"seed = {self.seed}")
        if self.out_dir is not None:
            lines.append(f"out = {self.out_dir}")
        lines.append(f"deterministic = {str(self.deterministic).lower()}")
        lines.append(f"pool_mode = {self.pool_mode}")
        lines.append(f"pool_size = {self.pool_size}")
        lines.append(f"steps = {self.total_steps()}")
        lines.append(f"encoder_inputs = {','.join(self.encoder_inputs)}")
        lines.append(f"decoder_targets = {','.join(self.decoder_targets)}")
        lines.append("")
        lines.append("[training]")
        lines.append(f"lr_rl = {t.lr_rl}")
        lines.append(f"lr_ed = {t.lr_ed}")
        lines.append(f"entropy_beta = {self.entropy_beta()}")
        lines.append(f"gamma = {t.gamma}")
        lines.append(f"gae_lambda = {t.gae_lambda}")
        lines.append(f"envs = {t.num_envs}")
        lines.append(f"update_freq = {t.update_frequency}")
        lines.append(f"clip_norm = {t.clip_norm}")
        lines.append(f"hidden = {t.hidden_dim}")
        lines.append(f"embed_dim = {t.embed_dim}")
        lines.append(f"vae_latent = {t.vae_latent_dim}")
        lines.append(f"eval_every_episodes = {t.eval_every_episodes}")
        lines.append(f"eval_episodes = {t.eval_episodes}")
        lines.append(f"advantage_norm = {str(t.advantage_norm).lower()}")
        lines.append(f"temperature = {t.temperature}")
        lines.append(f"precision = {t.precision}")
        if self.env_params:
            lines.append("")
            lines.append("[env]")
            for key, value in self.env_params.items():
                lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"


_RUN_KEYS = {
    "env": ("env_kind", str),
    "variant": ("variant", str),
    "seed": ("seed", int),
    "out": ("out_dir", str),
    "deterministic": ("deterministic", "bool"),
    "pool_mode": ("pool_mode", str),
    "pool_size": ("pool_size", int),
    "steps": ("training.total_steps", int),
    "encoder_inputs": ("encoder_inputs", "strlist"),
    "decoder_targets": ("decoder_targets", "strlist"),
}

_TRAINING_KEYS = {
    "lr_rl": ("lr_rl", float),
    "lr_ed": ("lr_ed", float),
    "entropy_beta": ("entropy_beta", float),
    "gamma": ("gamma", float),
    "gae_lambda": ("gae_lambda", float),
    "envs": ("num_envs", int),
    "update_freq": ("update_frequency", int),
    "clip_norm": ("clip_norm", float),
    "hidden": ("hidden_dim", int),
    "embed_dim": ("embed_dim", int),
    "vae_latent": ("vae_latent_dim", int),
    "eval_every_episodes": ("eval_every_episodes", int),
    "eval_episodes": ("eval_episodes", int),
    "advantage_norm": ("advantage_norm", "bool"),
    "temperature": ("temperature", float),
    "precision": ("precision", str),
    "steps": ("total_steps", int),
}

_ENV_VALUE_TYPES = {
    "horizon": int,
    "grid_size": int,
    "n_foods": int,
    "view_radius": int,
    "max_agent_level": int,
    "receptive_radius": float,
}


def _convert(key: str, raw: str, kind):
    raw = raw.strip()
    if kind == "bool":
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ConfigError(f"key '{key}': expected a boolean, got '{raw}'")
    if kind == "strlist":
        return tuple(part.strip() for part in raw.split(",") if part.strip())
    try:
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"key '{key}': cannot parse '{raw}' as {kind.__name__}") from exc


def load_config(path) -> RunConfig:
    """Parse and validate a config file; returns a RunConfig."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    cfg = RunConfig()
    for section in parser.sections():
        if section not in ("run", "training", "env"):
            raise ConfigError(f"unknown config section '[{section}]'")
    if parser.has_section("run"):
        for key, raw in parser.items("run"):
            if key not in _RUN_KEYS:
                raise ConfigError(f"unknown key '{key}' in [run]")
            target, kind = _RUN_KEYS[key]
            value = _convert(key, raw, kind)
            if key == "env" and not value:
                raise ConfigError("key 'env' must not be empty")
            _assign(cfg, target, value)
    if parser.has_section("training"):
        for key, raw in parser.items("training"):
            if key not in _TRAINING_KEYS:
                raise ConfigError(f"unknown key '{key}' in [training]")
            target, kind = _TRAINING_KEYS[key]
            setattr(cfg.training, target, _convert(key, raw, kind))
    if parser.has_section("env"):
        for key, raw in parser.items("env"):
            if key not in _ENV_VALUE_TYPES:
                raise ConfigError(f"unknown key '{key}' in [env]")
            cfg.env_params[key] = _convert(key, raw, _ENV_VALUE_TYPES[key])
    return cfg.validate()


def _assign(cfg: RunConfig, target: str, value) -> None:
    if target.startswith("training."):
        setattr(cfg.training, target.split(".", 1)[1], value)
    else:
        setattr(cfg, target, value)


def apply_overrides(cfg: RunConfig, overrides: dict) -> RunConfig:
    """Apply CLI-style overrides (config-file key names) on top of a config."""
    merged = replace(cfg, training=replace(cfg.training), env_params=dict(cfg.env_params))
    for key, value in overrides.items():
        if value is None:
            continue
        if key in _RUN_KEYS:
            _assign(merged, _RUN_KEYS[key][0], value)
        elif key in _TRAINING_KEYS:
            setattr(merged.training, _TRAINING_KEYS[key][0], value)
        elif key in _ENV_VALUE_TYPES:
            merged.env_params[key] = value
        else:
            raise ConfigError(f"unknown override '{key}'")
    return merged.validate()
