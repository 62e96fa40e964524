"""Frame-sequence dataset loading and irregular training-batch sampling.

Dataset layout on disk:

    <root>/descriptions.tsv          clip_id <TAB> text, one clip per line
    <root>/<clip_id>/frame_00000.png numbered frames, any strictly
                                     increasing numbering
    <root>/<clip_id>/timestamps.txt  optional reals, one per frame,
                                     overriding index-based timestamps

Timestamps are always normalized per clip to [0, 1] with the first sample
at exactly 0.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import torch
from PIL import Image

from .backends import DTYPE

_FRAME_RE = re.compile(r"frame_(\d+)\.png$")


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class VideoClip:
    """Ordered frames with normalized timestamps; immutable after load."""

    clip_id: str
    frames: torch.Tensor        # (K, H, W, 3) in [0, 1]
    timestamps: tuple[float, ...]
    description: str | None = None

    def __post_init__(self):
        k = self.frames.shape[0]
        if k < 1 or self.frames.ndim != 4 or self.frames.shape[-1] != 3:
            raise DatasetError(f"clip {self.clip_id}: frames must be (K, H, W, 3) with K >= 1")
        if len(self.timestamps) != k:
            raise DatasetError(f"clip {self.clip_id}: {k} frames but {len(self.timestamps)} timestamps")
        ts = self.timestamps
        if ts[0] != 0.0:
            raise DatasetError(f"clip {self.clip_id}: first timestamp must be 0.0, got {ts[0]}")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DatasetError(f"clip {self.clip_id}: timestamps must be strictly increasing")
        if ts[-1] > 1.0:
            raise DatasetError(f"clip {self.clip_id}: timestamps must not exceed 1.0")

    def __len__(self) -> int:
        return self.frames.shape[0]

    @property
    def resolution(self) -> tuple[int, int]:
        return self.frames.shape[1], self.frames.shape[2]


@dataclass(frozen=True)
class TrainingBatch:
    """Clips with per-clip sampled frame indices and swapped target texts."""

    clips: tuple[VideoClip, ...]
    sampled_indices: tuple[tuple[int, ...], ...]
    target_descriptions: tuple[str, ...]


def normalize_timestamps(frame_indices: Sequence[int]) -> list[float]:
    """Affine map of strictly increasing indices to [0, 1]; singleton -> [0.0]."""
    if len(frame_indices) == 0:
        raise DatasetError("cannot normalize an empty index sequence")
    if any(b <= a for a, b in zip(frame_indices, frame_indices[1:])):
        raise DatasetError(f"frame indices must be strictly increasing, got {list(frame_indices)}")
    first = frame_indices[0]
    span = frame_indices[-1] - first
    if span == 0:
        return [0.0]
    return [(i - first) / span for i in frame_indices]


def load_image(path: Path) -> torch.Tensor:
    with Image.open(path) as img:
        arr = np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
    return torch.from_numpy(arr).to(DTYPE)


def _load_clip(clip_dir: Path, description: str) -> VideoClip:
    entries = []
    for p in clip_dir.iterdir():
        m = _FRAME_RE.search(p.name)
        if m:
            entries.append((int(m.group(1)), p))
    if not entries:
        raise DatasetError(f"clip directory {clip_dir} contains no frame images")
    entries.sort(key=lambda e: e[0])
    indices = [e[0] for e in entries]

    ts_file = clip_dir / "timestamps.txt"
    if ts_file.exists():
        raw = [float(s) for s in ts_file.read_text().split()]
        if len(raw) != len(entries):
            raise DatasetError(
                f"{ts_file}: {len(raw)} timestamps for {len(entries)} frames")
        if any(b <= a for a, b in zip(raw, raw[1:])):
            raise DatasetError(f"{ts_file}: timestamps must be strictly increasing")
        span = raw[-1] - raw[0]
        timestamps = [0.0] if span == 0 else [(t - raw[0]) / span for t in raw]
    else:
        timestamps = normalize_timestamps(indices)

    frames = torch.stack([load_image(p) for _, p in entries])
    return VideoClip(clip_id=clip_dir.name, frames=frames,
                     timestamps=tuple(timestamps), description=description)


def load_dataset(root_path: str | Path, split: str = "train",
                 split_fraction: float = 0.8, seed: int = 7) -> list[VideoClip]:
    """Load all clips under root and return the requested deterministic split."""
    root = Path(root_path)
    if split not in ("train", "test"):
        raise DatasetError(f"split must be 'train' or 'test', got {split!r}")
    if not 0.0 < split_fraction <= 1.0:
        raise DatasetError(f"split_fraction must be in (0, 1], got {split_fraction}")

    desc_path = root / "descriptions.tsv"
    if not desc_path.exists():
        raise DatasetError(f"missing descriptions table {desc_path}")
    descriptions: dict[str, str] = {}
    for lineno, line in enumerate(desc_path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise DatasetError(f"{desc_path}:{lineno}: expected 'clip_id<TAB>text'")
        clip_id, text = line.split("\t", 1)
        descriptions[clip_id.strip()] = text.strip()

    clip_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not clip_dirs:
        raise DatasetError(f"no clip directories under {root}")
    for d in clip_dirs:
        if d.name not in descriptions:
            raise DatasetError(f"no description for clip {d.name!r} in {desc_path}")

    ids = [d.name for d in clip_dirs]
    order = list(range(len(ids)))
    random.Random(seed).shuffle(order)
    n_train = int(len(ids) * split_fraction)
    chosen = order[:n_train] if split == "train" else order[n_train:]
    chosen = sorted(chosen)
    return [_load_clip(clip_dirs[i], descriptions[clip_dirs[i].name]) for i in chosen]


def sample_batch(clips: Sequence[VideoClip], batch_size: int, k: int,
                 seed: int) -> TrainingBatch:
    """Sample clips, k distinct sorted frame indices each, and swapped texts.

    Target descriptions come from other clips in the batch whenever the
    batch has at least two clips; a singleton batch falls back to the
    clip's own description (reconstruction only).
    """
    if batch_size < 1:
        raise DatasetError("batch_size must be >= 1")
    if batch_size > len(clips):
        raise DatasetError(f"batch_size {batch_size} exceeds {len(clips)} available clips")
    rng = random.Random(seed)
    picked = rng.sample(range(len(clips)), batch_size)
    batch = [clips[i] for i in picked]

    indices = []
    for clip in batch:
        if len(clip) < k:
            raise DatasetError(
                f"clip {clip.clip_id!r} has {len(clip)} frames, fewer than k={k}")
        indices.append(tuple(sorted(rng.sample(range(len(clip)), k))))

    targets = []
    for i, clip in enumerate(batch):
        if batch_size == 1:
            targets.append(clip.description or "")
        else:
            j = rng.randrange(batch_size - 1)
            if j >= i:
                j += 1
            targets.append(batch[j].description or "")
    return TrainingBatch(clips=tuple(batch), sampled_indices=tuple(indices),
                         target_descriptions=tuple(targets))
