"""Synthetic translating-blob video generator for desk-scale experiments.

Each clip is a Gaussian blob of a distinct color translating at constant
velocity across a gray background; descriptions name the color and
direction so swapped-description batches are meaningful.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import torch
from PIL import Image

from .backends import DTYPE, PROFILES

_COLORS = {
    "red": (0.9, 0.2, 0.2),
    "green": (0.2, 0.8, 0.3),
    "blue": (0.2, 0.3, 0.9),
    "yellow": (0.9, 0.85, 0.2),
    "purple": (0.7, 0.25, 0.8),
    "orange": (0.95, 0.55, 0.15),
    "teal": (0.15, 0.7, 0.7),
    "pink": (0.95, 0.5, 0.7),
}

_DIRECTIONS = {
    "right": (0.0, 1.0),
    "left": (0.0, -1.0),
    "down": (1.0, 0.0),
    "up": (-1.0, 0.0),
}


def blob_frame(height: int, width: int, cy: float, cx: float,
               color: tuple[float, float, float], sigma: float = 3.0) -> torch.Tensor:
    ys = np.arange(height)[:, None]
    xs = np.arange(width)[None, :]
    mask = np.exp(-((ys - cy) ** 2 + (xs - cx) ** 2) / (2.0 * sigma ** 2))
    frame = np.full((height, width, 3), 0.35)
    for c in range(3):
        frame[:, :, c] = frame[:, :, c] * (1 - mask) + color[c] * mask
    return torch.from_numpy(frame).to(DTYPE)


def blob_clip_frames(height: int, width: int, n_frames: int, color_name: str,
                     direction_name: str, speed: float = 0.55) -> torch.Tensor:
    """Frames of one blob translating across the image at constant velocity."""
    color = _COLORS[color_name]
    dy, dx = _DIRECTIONS[direction_name]
    cy0, cx0 = height / 2 - dy * height * speed / 2, width / 2 - dx * width * speed / 2
    frames = []
    for i in range(n_frames):
        t = i / max(n_frames - 1, 1)
        cy = cy0 + dy * height * speed * t
        cx = cx0 + dx * width * speed * t
        frames.append(blob_frame(height, width, cy, cx, color))
    return torch.stack(frames)


def generate_blob_dataset(root: str | Path, n_clips: int = 5, n_frames: int = 8,
                          profile: str = "fashion", seed: int = 0) -> Path:
    """Write a loadable translating-blob dataset under root and return it."""
    height, width = PROFILES[profile]
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    color_names = list(_COLORS)
    direction_names = list(_DIRECTIONS)

    lines = []
    for i in range(n_clips):
        color = color_names[i % len(color_names)]
        direction = direction_names[int(rng.integers(len(direction_names)))]
        clip_id = f"clip_{i:03d}"
        clip_dir = root / clip_id
        clip_dir.mkdir(exist_ok=True)
        frames = blob_clip_frames(height, width, n_frames, color, direction)
        for j in range(n_frames):
            arr = (frames[j].numpy() * 255.0).round().astype(np.uint8)
            Image.fromarray(arr).save(clip_dir / f"frame_{j:05d}.png")
        lines.append(f"{clip_id}\ta {color} blob moving {direction}")
    (root / "descriptions.tsv").write_text("\n".join(lines) + "\n")
    return root


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "blob_dataset"
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    path = generate_blob_dataset(target, n_clips=n)
    print(f"wrote {n} clips to {path}")
