"""Configuration dataclasses and the JSON schema used by the CLI.

All defaults live here; a config file is a flat JSON object whose keys
mirror the dataclass fields. Unknown keys are rejected so typos fail
loudly instead of silently training with defaults.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


class ConfigError(ValueError):
    """Raised when a config value fails validation; message names the field."""


def _check(cond: bool, field_name: str, msg: str) -> None:
    if not cond:
        raise ConfigError(f"config field '{field_name}': {msg}")


def _as_grid(value: Any) -> tuple[int, ...]:
    grid = tuple(int(v) for v in value)
    _check(len(grid) in (2, 3), "grid_shape", f"must have 2 or 3 dims, got {len(grid)}")
    _check(all(g >= 16 for g in grid), "grid_shape", f"every dim must be >= 16, got {grid}")
    return grid


@dataclass
class GenerateConfig:
    """Phantom dataset generation parameters."""

    cases: int = 200
    grid_shape: tuple[int, ...] = (32, 32, 32)
    split: tuple[float, float, float] = (0.7, 0.1, 0.2)
    seed: int = 0
    # Sampling bands for the anatomy; the whole-tumor voxel fraction band
    # was frozen from a 100-seed histogram (see tests).
    wt_fraction_band: tuple[float, float] = (0.01, 0.20)
    min_et_voxels: int = 8
    min_ed_voxels: int = 8

    def __post_init__(self) -> None:
        self.grid_shape = _as_grid(self.grid_shape)
        self.split = tuple(float(s) for s in self.split)
        _check(self.cases >= 1, "cases", "must be >= 1")
        _check(len(self.split) == 3, "split", "must be (train, val, test)")
        _check(all(s >= 0 for s in self.split), "split", "fractions must be >= 0")
        _check(abs(sum(self.split) - 1.0) < 1e-9, "split", "fractions must sum to 1")
        _check(self.min_et_voxels >= 1, "min_et_voxels", "must be >= 1")
        _check(self.min_ed_voxels >= 1, "min_ed_voxels", "must be >= 1")


@dataclass
class ModelConfig:
    """Network shape. Sized for desk-scale CPU training."""

    grid_shape: tuple[int, ...] = (32, 32, 32)
    levels: int = 3          # number of 2x downsamplings; 32^3 -> 4^3 bottleneck
    base_width: int = 8
    bias_dim: int = 16       # length L of each modality's bias latent
    recon_width: int = 6     # base width of the reconstruction decoder
    count_width: int = 16    # channel width of the counterfactual seed grid

    def __post_init__(self) -> None:
        self.grid_shape = _as_grid(self.grid_shape)
        _check(self.levels >= 1, "levels", "must be >= 1")
        factor = 2 ** self.levels
        _check(
            all(g % factor == 0 for g in self.grid_shape),
            "levels",
            f"grid {self.grid_shape} not divisible by 2^levels={factor}",
        )
        _check(self.base_width >= 1, "base_width", "must be >= 1")
        _check(self.bias_dim >= 1, "bias_dim", "must be >= 1")


@dataclass
class TrainConfig:
    """End-to-end training parameters; serialized verbatim into checkpoints."""

    dataset_path: str = ""
    # Loss weights for cvae/hsic/rc/conf/dis in that order.
    lambdas: tuple[float, float, float, float, float] = (0.1, 0.1, 1.0, 0.5, 0.5)
    lambda_kl: float = 0.01          # KL weight inside the reconstruction objective
    learning_rate: float = 2e-4
    weight_decay: float = 1e-5
    schedule: str = "cosine"
    dropout_p: float = 0.5           # per-modality drop probability during training
    epochs: int = 40
    batch_size: int = 4
    seed: int = 0
    grid_shape: tuple[int, ...] = (32, 32, 32)
    levels: int = 3
    base_width: int = 8
    bias_dim: int = 16
    val_every: int = 10              # epochs between subset-grid validations
    checkpoint_every: int = 10
    num_threads: int = 1             # single-threaded is the determinism contract
    log_dis_shares: bool = True      # log gradient split of the discrepancy term

    def __post_init__(self) -> None:
        self.grid_shape = _as_grid(self.grid_shape)
        self.lambdas = tuple(float(v) for v in self.lambdas)
        _check(len(self.lambdas) == 5, "lambdas", "must have exactly 5 entries")
        for i, lam in enumerate(self.lambdas, start=1):
            _check(lam >= 0, f"lambdas[{i}]", f"must be >= 0, got {lam}")
        _check(self.lambda_kl >= 0, "lambda_kl", "must be >= 0")
        _check(self.learning_rate > 0, "learning_rate", "must be positive")
        _check(self.weight_decay >= 0, "weight_decay", "must be >= 0")
        _check(self.schedule in ("cosine", "constant"), "schedule", "must be 'cosine' or 'constant'")
        _check(0.0 <= self.dropout_p < 1.0, "dropout_p", "must lie in [0, 1)")
        _check(self.epochs >= 0, "epochs", "must be >= 0")
        _check(self.batch_size >= 1, "batch_size", "must be >= 1")
        _check(self.val_every >= 1, "val_every", "must be >= 1")
        _check(self.checkpoint_every >= 1, "checkpoint_every", "must be >= 1")
        _check(self.num_threads >= 1, "num_threads", "must be >= 1")

    def model_config(self) -> ModelConfig:
        return ModelConfig(
            grid_shape=self.grid_shape,
            levels=self.levels,
            base_width=self.base_width,
            bias_dim=self.bias_dim,
        )


_CONFIG_TYPES = {
    "generate": GenerateConfig,
    "train": TrainConfig,
    "model": ModelConfig,
}


def to_dict(cfg: Any) -> dict:
    d = dataclasses.asdict(cfg)
    for k, v in d.items():
        if isinstance(v, tuple):
            d[k] = list(v)
    return d


def from_dict(kind: str, data: dict, **overrides: Any) -> Any:
    cls = _CONFIG_TYPES[kind]
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config field(s) for {kind}: {sorted(unknown)}")
    merged = dict(data)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return cls(**merged)


def load_config(kind: str, path: str | Path, **overrides: Any) -> Any:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return from_dict(kind, data, **overrides)


def save_config(cfg: Any, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(to_dict(cfg), fh, indent=2, sort_keys=True)
        fh.write("\n")
