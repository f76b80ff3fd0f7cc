"""Model variants: the main encoder-decoder, its baselines, and ablations.

Variant summary (z is the embedding handed to the policy; it is always a
constant input to the RL loss except for nam):

    liam        encoder on (own obs, own prev action); decoder reconstructs
                the modelled agents' observation and action
    fiam        encoder on the modelled agents' (obs, prev action); same
                decoder; execution-time upper baseline
    nam         encoder only, trained by the RL gradient; no decoder
    cbam        encoder plus a fixed-policy-identity classifier; the policy
                consumes the softmaxed identity estimate
    carl        two encoders (controlled and modelled side) trained
                contrastively; only the controlled side runs at execution
    liam_vae    encoder emits a Gaussian posterior; decoder reconstructs
                from a sampled latent; the policy consumes the mean
    liam_local  decoder reconstructs the controlled agent's own next
                observation and action instead of the modelled agents'

Input ablations (encoder_obs / encoder_act) zero out the corresponding
slice of the encoder input; target ablations (recon_obs / recon_act) mask
loss terms. Masked inputs keep their width so parameter shapes match the
full model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, UsageError
from ..nn import Linear, ParameterStore, Tensor, one_hot, slice_cols, softmax_rows
from .decoder import DecoderOutput, ReconstructionDecoder
from .encoder import EncoderState, RecurrentEncoder
from .policy import PolicyCritic

VARIANT_NAMES = ("liam", "fiam", "nam", "cbam", "carl", "liam_vae", "liam_local")

# aliases: configuration shorthand for the input/target ablations
ABLATION_ALIASES = {
    "liam_no_act": {"encoder_act": False},
    "liam_no_obs": {"encoder_obs": False},
    "liam_no_act_recon": {"recon_act": False},
    "liam_no_obs_recon": {"recon_obs": False},
}


@dataclass(frozen=True)
class VariantSpec:
    """Which variant to build and which inputs/targets stay enabled."""

    name: str
    label: str
    encoder_obs: bool = True
    encoder_act: bool = True
    recon_obs: bool = True
    recon_act: bool = True

    @classmethod
    def parse(
        cls,
        variant: str,
        encoder_inputs: tuple[str, ...] = ("obs", "act"),
        decoder_targets: tuple[str, ...] = ("obs", "act"),
    ) -> "VariantSpec":
        label = variant.replace("-", "_").lower()
        name = label
        flags = {}
        if label in ABLATION_ALIASES:
            name = "liam"
            flags = dict(ABLATION_ALIASES[label])
        if name not in VARIANT_NAMES:
            raise ConfigError(f"unknown variant '{variant}'")
        flags.setdefault("encoder_obs", "obs" in encoder_inputs)
        flags.setdefault("encoder_act", "act" in encoder_inputs)
        flags.setdefault("recon_obs", "obs" in decoder_targets)
        flags.setdefault("recon_act", "act" in decoder_targets)
        spec = cls(name=name, label=label, **flags)
        if not (spec.encoder_obs or spec.encoder_act):
            raise ConfigError("at least one encoder input must stay enabled")
        if spec.uses_decoder and not (spec.recon_obs or spec.recon_act):
            raise ConfigError("at least one decoder target must stay enabled")
        return spec

    @property
    def uses_decoder(self) -> bool:
        return self.name in ("liam", "fiam", "liam_vae", "liam_local")

    @property
    def reconstructs_modelled(self) -> bool:
        return self.name in ("liam", "fiam", "liam_vae")

    @property
    def has_ed_step(self) -> bool:
        return self.name != "nam"

    @property
    def rl_trains_encoder(self) -> bool:
        return self.name == "nam"


@dataclass(frozen=True)
class ModelDims:
    """Environment dimensions the networks are sized from."""

    obs_dim: int
    action_heads: tuple[int, ...]
    modelled_obs_dim: int
    modelled_action_heads: tuple[int, ...]

    @classmethod
    def from_env(cls, env) -> "ModelDims":
        return cls(
            obs_dim=env.controlled_obs_dim,
            action_heads=env.controlled_action_heads,
            modelled_obs_dim=env.modelled_obs_dim,
            modelled_action_heads=env.modelled_action_heads,
        )


class AgentModel:
    """All networks for one run, split across two parameter stores.

    ``ed_store`` holds whatever the auxiliary (encoder-decoder) step trains;
    ``rl_store`` holds what the RL step trains. The split is structural, so
    an RL update cannot touch encoder or decoder parameters (and vice
    versa); for nam the encoder lives in ``rl_store`` instead because the
    RL gradient is its only training signal.
    """

    def __init__(
        self,
        dims: ModelDims,
        variant: VariantSpec,
        pool_size: int,
        seed: int = 0,
        hidden_dim: int = 128,
        embed_dim: int = 128,
        vae_latent_dim: int = 64,
        dtype=np.float32,
    ):
        self.dims = dims
        self.variant = variant
        self.pool_size = pool_size
        self.hidden_dim = hidden_dim
        self.embed_dim = embed_dim
        self.vae_latent_dim = vae_latent_dim
        self.dtype = dtype

        rng = np.random.default_rng(seed)
        self.ed_store = ParameterStore()
        self.rl_store = ParameterStore()
        enc_store = self.rl_store if variant.rl_trains_encoder else self.ed_store

        self._controlled_onehot = sum(dims.action_heads)
        self._modelled_onehot = sum(dims.modelled_action_heads)
        if variant.name == "fiam":
            enc_in = dims.modelled_obs_dim + self._modelled_onehot
        else:
            enc_in = dims.obs_dim + self._controlled_onehot
        self.encoder = RecurrentEncoder(enc_store, "encoder", enc_in, hidden_dim, embed_dim, rng, dtype)

        self.decoder: ReconstructionDecoder | None = None
        self.classifier: Linear | None = None
        self.encoder2: RecurrentEncoder | None = None
        self.stats_head: Linear | None = None

        if variant.name in ("liam", "fiam"):
            self.decoder = ReconstructionDecoder(
                self.ed_store, "decoder", embed_dim, dims.modelled_obs_dim,
                dims.modelled_action_heads, hidden_dim, rng, dtype,
            )
        elif variant.name == "liam_local":
            self.decoder = ReconstructionDecoder(
                self.ed_store, "decoder", embed_dim, dims.obs_dim,
                dims.action_heads, hidden_dim, rng, dtype,
            )
        elif variant.name == "liam_vae":
            self.stats_head = Linear(
                self.ed_store, "stats_head", embed_dim, 2 * vae_latent_dim, rng, dtype
            )
            self.decoder = ReconstructionDecoder(
                self.ed_store, "decoder", vae_latent_dim, dims.modelled_obs_dim,
                dims.modelled_action_heads, hidden_dim, rng, dtype,
            )
        elif variant.name == "cbam":
            self.classifier = Linear(self.ed_store, "classifier", embed_dim, pool_size, rng, dtype)
        elif variant.name == "carl":
            enc2_in = dims.modelled_obs_dim + self._modelled_onehot
            self.encoder2 = RecurrentEncoder(
                self.ed_store, "encoder2", enc2_in, hidden_dim, embed_dim, rng, dtype
            )

        self.policy = PolicyCritic(
            self.rl_store, "policy", dims.obs_dim + self.policy_embed_dim,
            dims.action_heads, hidden_dim, rng, dtype,
        )

    # -- dimensions ---------------------------------------------------------
    @property
    def policy_embed_dim(self) -> int:
        if self.variant.name == "cbam":
            return self.pool_size
        if self.variant.name == "liam_vae":
            return self.vae_latent_dim
        return self.embed_dim

    @property
    def encoder_feed(self) -> str:
        """Which trajectory the main encoder consumes."""
        return "modelled" if self.variant.name == "fiam" else "controlled"

    def stores(self) -> dict[str, ParameterStore]:
        return {"ed": self.ed_store, "rl": self.rl_store}

    # -- encoder input assembly ----------------------------------------------
    def build_encoder_input(self, obs: np.ndarray, prev_actions: np.ndarray) -> np.ndarray:
        """Concatenate (observation, previous-action one-hots), applying the
        input ablation masks. ``prev_actions`` is an int array (batch, heads)
        where -1 marks an episode start and yields a zero one-hot row."""
        heads = (
            self.dims.modelled_action_heads
            if self.encoder_feed == "modelled"
            else self.dims.action_heads
        )
        obs_part = obs.astype(self.dtype)
        if not self.variant.encoder_obs:
            obs_part = np.zeros_like(obs_part)
        act_parts = [
            one_hot(prev_actions[:, i], n, dtype=self.dtype) for i, n in enumerate(heads)
        ]
        act_part = np.concatenate(act_parts, axis=1) if act_parts else np.zeros((obs.shape[0], 0))
        if not self.variant.encoder_act:
            act_part = np.zeros_like(act_part)
        return np.concatenate([obs_part, act_part], axis=1)

    def build_encoder2_input(self, modelled_obs: np.ndarray, modelled_prev: np.ndarray) -> np.ndarray:
        """Modelled-side input for the contrastive second encoder (no masks)."""
        parts = [modelled_obs.astype(self.dtype)] + [
            one_hot(modelled_prev[:, i], n, dtype=self.dtype)
            for i, n in enumerate(self.dims.modelled_action_heads)
        ]
        return np.concatenate(parts, axis=1)

    # -- gradient-free surfaces for acting and probes ------------------------
    def initial_encoder_state(self, batch: int) -> EncoderState:
        return self.encoder.initial_state(batch)

    def encode_step(
        self, state: EncoderState, obs: np.ndarray, prev_actions: np.ndarray
    ) -> tuple[np.ndarray, EncoderState]:
        """One embedding step; returns the policy-facing embedding."""
        x = self.build_encoder_input(obs, prev_actions)
        feat, state = self.encoder.step_state(x, state)
        return self.policy_embedding_np(feat), state

    def policy_embedding_np(self, feat: np.ndarray) -> np.ndarray:
        return self.policy_embedding(Tensor(feat)).data

    def policy_embedding(self, feat: Tensor) -> Tensor:
        """Variant-specific mapping from encoder features to the policy input."""
        if self.variant.name == "cbam":
            return softmax_rows(self.classifier(feat))
        if self.variant.name == "liam_vae":
            mu, _ = self.posterior_stats(feat)
            return mu
        return feat

    def posterior_stats(self, feat: Tensor) -> tuple[Tensor, Tensor]:
        if self.stats_head is None:
            raise UsageError(f"variant '{self.variant.label}' has no posterior statistics")
        stats = self.stats_head(feat)
        L = self.vae_latent_dim
        return slice_cols(stats, 0, L), slice_cols(stats, L, 2 * L)

    def policy_forward_np(self, obs: np.ndarray, z: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        x = np.concatenate([obs.astype(self.dtype), z.astype(self.dtype)], axis=1)
        logits, value = self.policy.forward(Tensor(x))
        return [softmax_rows(l).data for l in logits], value.data[:, 0]

    def decode(self, z: np.ndarray) -> DecoderOutput:
        if self.decoder is None:
            raise UsageError(f"variant '{self.variant.label}' has no decoder")
        return self.decoder.decode(z.astype(self.dtype))
