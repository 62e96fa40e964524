"""Frozen pretrained-component interfaces with deterministic toy implementations.

Four components back the pipeline: an image decoder mapping extended
per-layer latents to frames, its inverter, a joint image/text embedder,
and a structure/appearance feature extractor. Real adapters (a style-based
generator, a pSp-like encoder, a contrastive embedder, a ViT feature
splitter) plug in behind the same interface; the toy suite here is a
seeded affine decoder with an exact pseudo-inverse inverter, random-
projection embedders, and patch-statistics features. Everything is a pure
function of (seed, input) and nothing here ever trains.
"""

from __future__ import annotations

import hashlib
import zlib
from dataclasses import dataclass, field

import numpy as np
import torch

DTYPE = torch.float64

# (height, width) of the toy decoders; aspect ratios mirror the two
# full-scale dataset shapes (128x96 human-figure, 128x128 face).
PROFILES = {
    "fashion": (32, 24),
    "face": (32, 32),
}

TEXT_BUCKETS = 256


@dataclass
class GlobalCode:
    """Per-layer latent matrix (L_w x d_w) in the decoder's extended space."""

    layers: torch.Tensor

    def __post_init__(self):
        if self.layers.ndim != 2:
            raise ValueError(f"GlobalCode.layers must be 2-D, got shape {tuple(self.layers.shape)}")

    @property
    def shape(self) -> tuple[int, int]:
        return tuple(self.layers.shape)


@dataclass
class EmbeddingVector:
    """Vector in the shared image/text embedding space.

    Consumers must not assume unit norm; cosine-based ops normalize
    internally.
    """

    values: torch.Tensor
    source: str = "image"  # image | text


@dataclass
class FeatureBundle:
    """Appearance vector plus patch self-similarity structure matrix."""

    appearance: torch.Tensor
    structure: torch.Tensor


class BackendError(ValueError):
    pass


def _generator(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def safe_cosine(u: torch.Tensor, v: torch.Tensor, eps: float = 1e-12) -> torch.Tensor:
    """Cosine similarity with a convention for degenerate vectors.

    Two (near-)zero vectors are identical, hence similarity 1; a zero
    against a non-zero vector is maximally dissimilar in the unsigned
    sense, similarity 0.
    """
    nu = torch.linalg.vector_norm(u)
    nv = torch.linalg.vector_norm(v)
    if nu < eps and nv < eps:
        return torch.ones((), dtype=u.dtype)
    if nu < eps or nv < eps:
        return torch.zeros((), dtype=u.dtype)
    return (u * v).sum() / (nu * nv)


class ToyBackend:
    """Deterministic desk-scale stand-in for the four frozen components.

    decode        seeded affine map code -> pixels, clamped to [0, 1]
    invert        Moore-Penrose pseudo-inverse of the decoder's linear part
    embed_image   fixed random projection of 4x-downsampled pixels
    embed_text    crc32 word-bucket counts through a fixed projection
    extract_features
                  per-patch channel mean/std (appearance) and centered
                  patch-feature cosine self-similarity (structure)

    The linear decode/invert pair round-trips exactly (up to float64
    arithmetic) for any code whose decoded image stays strictly inside
    [0, 1], which makes downstream latent math testable without any
    pretrained weights.
    """

    def __init__(self, seed: int = 0, profile: str = "fashion",
                 layers: int = 6, layer_dim: int = 64, embed_dim: int = 128,
                 patch: int = 8):
        if profile not in PROFILES:
            raise BackendError(f"unknown backend profile {profile!r}")
        self.seed = seed
        self.profile = profile
        self.height, self.width = PROFILES[profile]
        self.layers = layers
        self.layer_dim = layer_dim
        self.embed_dim = embed_dim
        self.patch = patch
        if self.height % patch or self.width % patch:
            raise BackendError("patch size must divide the frame resolution")

        n_code = layers * layer_dim
        n_pix = self.height * self.width * 3
        rng = _generator(seed)

        # Scale keeps decoded pixels of unit-scale codes well inside [0, 1]
        # so the clamp stays inactive and invert(decode(c)) == c.
        w = rng.standard_normal((n_pix, n_code)) * (0.15 / np.sqrt(n_code))
        self._dec_w = torch.from_numpy(w)
        self._dec_b = 0.5
        self._dec_pinv = torch.from_numpy(np.linalg.pinv(w))

        pool = 4
        n_small = (self.height // pool) * (self.width // pool) * 3
        self._img_pool = pool
        self._img_proj = torch.from_numpy(
            rng.standard_normal((embed_dim, n_small)) / np.sqrt(n_small))
        self._txt_proj = torch.from_numpy(
            rng.standard_normal((embed_dim, TEXT_BUCKETS)) / np.sqrt(TEXT_BUCKETS))

    # -- decoder / inverter -------------------------------------------------

    def decode(self, code: GlobalCode) -> torch.Tensor:
        if code.shape != (self.layers, self.layer_dim):
            raise BackendError(
                f"code shape {code.shape} does not match backend "
                f"({self.layers}, {self.layer_dim})")
        flat = code.layers.reshape(-1).to(DTYPE)
        pix = self._dec_w @ flat + self._dec_b
        return pix.clamp(0.0, 1.0).reshape(self.height, self.width, 3)

    def decode_unclamped(self, code: GlobalCode) -> torch.Tensor:
        """decode without the [0,1] clamp; used by linearity tests."""
        flat = code.layers.reshape(-1).to(DTYPE)
        return (self._dec_w @ flat + self._dec_b).reshape(self.height, self.width, 3)

    def invert(self, image: torch.Tensor) -> GlobalCode:
        self._check_resolution(image)
        flat = image.reshape(-1).to(DTYPE) - self._dec_b
        code = self._dec_pinv @ flat
        return GlobalCode(code.reshape(self.layers, self.layer_dim))

    # -- joint embedder -----------------------------------------------------

    def embed_image(self, image: torch.Tensor) -> EmbeddingVector:
        self._check_resolution(image)
        p = self._img_pool
        h, w = self.height // p, self.width // p
        pooled = image.to(DTYPE).reshape(h, p, w, p, 3).mean(dim=(1, 3))
        return EmbeddingVector(self._img_proj @ pooled.reshape(-1), source="image")

    def embed_text(self, text: str) -> EmbeddingVector:
        counts = torch.zeros(TEXT_BUCKETS, dtype=DTYPE)
        for token in tokenize_text(text):
            counts[text_bucket(token)] += 1.0
        return EmbeddingVector(self._txt_proj @ counts, source="text")

    # -- structure / appearance features -------------------------------------

    def extract_features(self, image: torch.Tensor) -> FeatureBundle:
        self._check_resolution(image)
        feats = self.patch_features(image)
        appearance = feats.reshape(-1)
        centered = feats - feats.mean(dim=0, keepdim=True)
        eps = 1e-12
        norms = torch.linalg.vector_norm(centered, dim=1)
        dots = centered @ centered.T
        small = norms < eps
        both = small[:, None] & small[None, :]
        either = small[:, None] | small[None, :]
        denom = norms[:, None] * norms[None, :]
        # where() evaluates both branches, so the denominator must stay
        # finite even for the degenerate entries it masks out.
        denom_safe = torch.where(either, torch.ones_like(denom), denom)
        cos = dots / denom_safe
        one = torch.ones_like(cos)
        zero = torch.zeros_like(cos)
        structure = torch.where(both, one, torch.where(either, zero, cos))
        return FeatureBundle(appearance=appearance, structure=structure)

    def patch_features(self, image: torch.Tensor) -> torch.Tensor:
        """Per-patch feature rows: 3 channel means then 3 channel stds."""
        p = self.patch
        gh, gw = self.height // p, self.width // p
        patches = image.to(DTYPE).reshape(gh, p, gw, p, 3).permute(0, 2, 1, 3, 4)
        patches = patches.reshape(gh * gw, p * p, 3)
        mean = patches.mean(dim=1)
        var = patches.var(dim=1, correction=0)
        std = torch.sqrt(var + 1e-12)  # keeps the gradient finite on flat patches
        return torch.cat([mean, std], dim=1)

    # -- bookkeeping ----------------------------------------------------------

    def zero_code(self) -> GlobalCode:
        return GlobalCode(torch.zeros(self.layers, self.layer_dim, dtype=DTYPE))

    def checksum(self) -> str:
        h = hashlib.sha256()
        for t in (self._dec_w, self._dec_pinv, self._img_proj, self._txt_proj):
            h.update(t.numpy().tobytes())
        h.update(np.float64(self._dec_b).tobytes())
        return h.hexdigest()

    def _check_resolution(self, image: torch.Tensor) -> None:
        if image.shape != (self.height, self.width, 3):
            raise BackendError(
                f"image shape {tuple(image.shape)} does not match backend "
                f"resolution ({self.height}, {self.width}, 3)")


def tokenize_text(text: str) -> list[str]:
    cleaned = "".join(c if c.isalnum() else " " for c in text.lower())
    return cleaned.split()


def text_bucket(token: str) -> int:
    return zlib.crc32(token.encode("utf-8")) % TEXT_BUCKETS


def make_backend(cfg) -> ToyBackend:
    kind = cfg["backend.kind"]
    if kind == "toy":
        return ToyBackend(seed=cfg["backend.seed"], profile=cfg["backend.profile"])
    raise BackendError(
        f"backend.kind {kind!r} is not available in this build; "
        "adapter backends are integration shims to be registered separately")
