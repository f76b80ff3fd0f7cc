from .decoder import DecoderOutput, ReconstructionDecoder
from .encoder import EncoderState, RecurrentEncoder
from .losses import (
    action_nll,
    clamp_log_variance,
    gaussian_kl,
    identity_classification_loss,
    infonce_loss,
    observation_sq_error,
    reconstruction_loss,
)
from .policy import PolicyCritic
from .variants import VARIANT_NAMES, AgentModel, ModelDims, VariantSpec

__all__ = [
    "VARIANT_NAMES",
    "AgentModel",
    "DecoderOutput",
    "EncoderState",
    "ModelDims",
    "PolicyCritic",
    "ReconstructionDecoder",
    "RecurrentEncoder",
    "VariantSpec",
    "action_nll",
    "clamp_log_variance",
    "gaussian_kl",
    "identity_classification_loss",
    "infonce_loss",
    "observation_sq_error",
    "reconstruction_loss",
]
