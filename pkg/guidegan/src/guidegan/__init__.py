"""Trainer for low-resolution blending generators and guide PNG export."""

from .checkpoint import load_critic, load_generator, save_checkpoint
from .data import FolderPairs, SyntheticPairs, make_training_pair
from .errors import (
    BadCheckpoint,
    EmptyDataset,
    GuideGanError,
    MisalignedPair,
    OptimizerFailed,
)
from .export import export_guide
from .latent import LatentSearchConfig, LatentSearchResult, latent_search
from .losses import adversarial_term, clip_weights, combined_loss, critic_loss, l2_term
from .models import (
    NetConfig,
    build_blend_generator,
    build_critic,
    build_unsup_generator,
    critic_score,
    sample_latent,
)
from .train import TrainConfig, train

__version__ = "0.1.0"

__all__ = [
    "BadCheckpoint",
    "EmptyDataset",
    "FolderPairs",
    "GuideGanError",
    "LatentSearchConfig",
    "LatentSearchResult",
    "MisalignedPair",
    "NetConfig",
    "OptimizerFailed",
    "SyntheticPairs",
    "TrainConfig",
    "adversarial_term",
    "build_blend_generator",
    "build_critic",
    "build_unsup_generator",
    "clip_weights",
    "combined_loss",
    "critic_score",
    "critic_loss",
    "export_guide",
    "l2_term",
    "latent_search",
    "load_critic",
    "load_generator",
    "make_training_pair",
    "sample_latent",
    "save_checkpoint",
    "train",
    "__version__",
]
