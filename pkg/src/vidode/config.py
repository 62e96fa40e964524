"""Flat key=value configuration with CLI > file > default precedence."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

# Toy desk-scale profile. The full-scale profile from the reference setup
# (18x512 latent, 8x6 dynamic grid, 12 attention layers of 8 heads at
# width 512) is reachable through the same keys.
DEFAULTS: dict[str, Any] = {
    "backend.kind": "toy",
    "backend.seed": 0,
    "backend.profile": "fashion",       # fashion: 32x24 frames, face: 32x32
    "data.root": "",
    "data.split_fraction": 0.8,
    "data.seed": 7,
    "data.time_scale": 1.0,
    "content.pooling": "mean",          # mean | first
    "dyn.m_d": 4,
    "dyn.n_d": 3,
    "dyn.d_sp": 16,
    "dyn.d_ode": 32,
    "ode.rtol": 1e-4,
    "ode.atol": 1e-5,
    "ode.min_step": 1e-10,
    "ode.max_steps": 10000,
    "head.n_sa": 2,
    "head.n_ca": 2,
    "head.heads": 2,
    "head.width": 64,
    "head.fine_fraction": 1.0 / 3.0,
    "style.image_source": "content_frame",  # content_frame | input_frame
    "loss.lambda_c": 1.0,
    "loss.lambda_a": 10.0,
    "loss.lambda_s": 10.0,
    "loss.lambda_d": 2.0,
    "loss.lambda_l": 1.0,
    "loss.n_c": 3,
    "loss.schedule_steps": 40000,
    "loss.struct_app_tradeoff": 0.5,
    "train.lr": 1e-4,
    "train.batch_size": 2,
    "train.frames_per_clip": 3,
    "train.max_steps": 500,
    "train.seed": 0,
    "train.alpha": 1.0,
    "train.checkpoint_interval": 100,
}


class ConfigError(ValueError):
    pass


class Config:
    """Effective configuration assembled from defaults, a file, and overrides.

    The file format is one ``key = value`` pair per line; ``#`` starts a
    comment. Unknown keys are rejected so typos fail loudly.
    """

    def __init__(self, values: dict[str, Any] | None = None):
        self._values = dict(DEFAULTS)
        if values:
            for k, v in values.items():
                self.set(k, v)

    def __getitem__(self, key: str) -> Any:
        return self._values[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self._values.get(key, default)

    def set(self, key: str, value: Any) -> None:
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key: {key!r}")
        self._values[key] = _coerce(key, value)

    def update(self, overrides: dict[str, Any]) -> None:
        for k, v in overrides.items():
            self.set(k, v)

    @classmethod
    def load(cls, path: str | Path, overrides: dict[str, Any] | None = None) -> "Config":
        cfg = cls()
        text = Path(path).read_text()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            cfg.set(key, value)
        if overrides:
            cfg.update(overrides)
        return cfg

    def as_dict(self) -> dict[str, Any]:
        return dict(self._values)

    def dump(self) -> str:
        return "\n".join(f"{k} = {self._values[k]}" for k in sorted(self._values)) + "\n"

    def digest(self) -> str:
        payload = json.dumps(self._values, sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:16]


def _coerce(key: str, value: Any) -> Any:
    target = DEFAULTS[key]
    if isinstance(value, str) and not isinstance(target, str):
        value = value.strip()
        if isinstance(target, bool):
            return value.lower() in ("1", "true", "yes")
        if isinstance(target, int):
            return int(value)
        if isinstance(target, float):
            return float(value)
    if isinstance(target, float) and isinstance(value, int):
        return float(value)
    if not isinstance(value, type(target)) and not isinstance(target, str):
        raise ConfigError(f"config key {key!r} expects {type(target).__name__}, got {value!r}")
    return value
