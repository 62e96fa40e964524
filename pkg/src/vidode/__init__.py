"""Disentangled latent video representation and editing toolkit.

A video is explained as a single pooled content code in the extended
latent space of a frozen image decoder, plus a continuous dynamics
trajectory advected by an autonomous latent ODE. Per-frame latents are
residuals predicted from (dynamics, style, content) by an attention head,
so editing, animation, interpolation, extrapolation and local motion
blending all reduce to recombining the three codes.
"""

__version__ = "0.1.0"

from .config import Config
from .backends import GlobalCode, EmbeddingVector, FeatureBundle, ToyBackend, make_backend
from .data import VideoClip, TrainingBatch, load_dataset, normalize_timestamps, sample_batch
from .solver import SolverReport, StepSizeUnderflow, solve_dopri5

__all__ = [
    "Config",
    "GlobalCode",
    "EmbeddingVector",
    "FeatureBundle",
    "ToyBackend",
    "make_backend",
    "VideoClip",
    "TrainingBatch",
    "load_dataset",
    "normalize_timestamps",
    "sample_batch",
    "SolverReport",
    "StepSizeUnderflow",
    "solve_dopri5",
    "__version__",
]
