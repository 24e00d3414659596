"""Model and training configuration."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from ..errors import ConfigError
from ..preprocess.augment import AugmentationConfig
from ..skeletal import schema

MODEL_SELECTIONS = ("best_val_top1", "last_epoch")
OPTIMIZERS = ("sgd", "adam")


@dataclass(frozen=True)
class ModelConfig:
    """Compact transformer classifier over flattened 108-dim frame vectors.

    The model width equals the input dimension (54 landmarks x 2
    coordinates); there is no input projection, so attention_heads must
    divide 108.
    """

    num_classes: int
    input_dim: int = 2 * schema.NUM_SLOTS
    encoder_layers: int = 6
    decoder_layers: int = 6
    attention_heads: int = 9
    feedforward_dim: int = 2048
    dropout: float = 0.1
    max_positions: int = 512

    def __post_init__(self) -> None:
        if self.input_dim != 2 * schema.NUM_SLOTS:
            raise ConfigError(
                f"input_dim must be {2 * schema.NUM_SLOTS} (two coordinates per canonical slot)"
            )
        if self.num_classes < 1:
            raise ConfigError("num_classes must be positive")
        if self.encoder_layers < 1 or self.decoder_layers < 1:
            raise ConfigError("encoder/decoder layer counts must be positive")
        if self.attention_heads < 1 or self.input_dim % self.attention_heads != 0:
            raise ConfigError(
                f"attention_heads must divide the model width {self.input_dim}"
            )
        if self.feedforward_dim < 1:
            raise ConfigError("feedforward_dim must be positive")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError("dropout must be in [0, 1)")
        if self.max_positions < 1:
            raise ConfigError("max_positions must be positive")

    def to_json(self) -> dict:
        return {
            "num_classes": self.num_classes,
            "input_dim": self.input_dim,
            "encoder_layers": self.encoder_layers,
            "decoder_layers": self.decoder_layers,
            "attention_heads": self.attention_heads,
            "feedforward_dim": self.feedforward_dim,
            "dropout": self.dropout,
            "max_positions": self.max_positions,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ModelConfig":
        return cls(**doc)


@dataclass(frozen=True)
class TrainConfig:
    epochs: int
    learning_rate: float = 0.001
    optimizer: str = "sgd"
    global_seed: int = 0
    augmentation: AugmentationConfig = field(default_factory=AugmentationConfig)
    model_selection: str = "best_val_top1"
    deterministic: bool = True

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if not self.learning_rate > 0:
            raise ConfigError("learning_rate must be positive")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(f"optimizer must be one of {OPTIMIZERS}")
        if self.model_selection not in MODEL_SELECTIONS:
            raise ConfigError(f"model_selection must be one of {MODEL_SELECTIONS}")
        self.augmentation.validate()

    def to_json(self) -> dict:
        return {
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "optimizer": self.optimizer,
            "global_seed": self.global_seed,
            "augmentation": self.augmentation.to_flat(),
            "model_selection": self.model_selection,
            "deterministic": self.deterministic,
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


_TRAIN_KEYS = ("epochs", "learning_rate", "optimizer", "global_seed", "model_selection", "deterministic")
_MODEL_KEYS = ("encoder_layers", "decoder_layers", "attention_heads", "feedforward_dim", "dropout", "max_positions")


def parse_train_file(
    items: dict[str, str], num_classes: int, where: str = "config"
) -> tuple[ModelConfig, TrainConfig]:
    """Build configs from a flat key-value file.

    Plain keys configure training, ``model.*`` keys the architecture and
    ``augment.*`` keys the augmentations; num_classes comes from the
    vocabulary at runtime, never from the file.
    """
    train_kwargs: dict = {}
    model_kwargs: dict = {}
    augment_flat: dict[str, str] = {}
    for key, value in items.items():
        if key.startswith("augment."):
            augment_flat[key[len("augment."):]] = value
        elif key.startswith("model."):
            name = key[len("model."):]
            if name not in _MODEL_KEYS:
                raise ConfigError(f"{where}: unknown model key {key!r}")
            model_kwargs[name] = float(value) if name == "dropout" else int(value)
        elif key in _TRAIN_KEYS:
            if key in ("epochs", "global_seed"):
                train_kwargs[key] = int(value)
            elif key == "learning_rate":
                train_kwargs[key] = float(value)
            elif key == "deterministic":
                train_kwargs[key] = value.lower() in ("1", "true", "yes")
            else:
                train_kwargs[key] = value
        else:
            raise ConfigError(f"{where}: unknown key {key!r}")
    if "epochs" not in train_kwargs:
        raise ConfigError(f"{where}: missing required key 'epochs'")
    augmentation = AugmentationConfig.from_flat(augment_flat, where=where)
    model_cfg = ModelConfig(num_classes=num_classes, **model_kwargs)
    train_cfg = TrainConfig(augmentation=augmentation, **train_kwargs)
    return model_cfg, train_cfg
