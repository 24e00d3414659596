"""Single-sample training loop with per-sample augmentation.

Sequences are normalized, then augmented with a seed derived from
(global_seed, epoch, canonical sample index), so the augmentation draw for a
sample does not depend on shuffle order.  In deterministic mode the run is
bit-reproducible: same seed, same data, same final weights and metrics.
"""

from __future__ import annotations

import math

import torch
from torch import nn

from ..dataset.cache import LandmarkCache, shuffle_order
from ..dataset.index import DatasetIndex, GlossVocabulary
from ..errors import ConfigError, NonFiniteLossError
from ..preprocess.augment import augment, derive_sample_seed
from ..preprocess.normalize import normalize_sequence
from .checkpoint import Checkpoint
from .config import ModelConfig, TrainConfig
from .metrics import evaluate_model
from .transformer import build_model, sequence_to_tensor, set_deterministic


def _make_optimizer(model: nn.Module, cfg: TrainConfig) -> torch.optim.Optimizer:
    if cfg.optimizer == "sgd":
        return torch.optim.SGD(model.parameters(), lr=cfg.learning_rate)
    if cfg.optimizer == "adam":
        return torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    raise ConfigError(f"unknown optimizer {cfg.optimizer!r}")


def train(
    index: DatasetIndex,
    vocabulary: GlossVocabulary,
    cache: LandmarkCache,
    model_cfg: ModelConfig,
    train_cfg: TrainConfig,
) -> Checkpoint:
    if len(vocabulary) != model_cfg.num_classes:
        raise ConfigError(
            f"vocabulary size {len(vocabulary)} != num_classes {model_cfg.num_classes}"
        )
    if train_cfg.deterministic:
        set_deterministic(True)
    torch.manual_seed(train_cfg.global_seed)

    model = build_model(model_cfg)
    optimizer = _make_optimizer(model, train_cfg)
    loss_fn = nn.CrossEntropyLoss()

    entries = index.split("train")
    if not entries:
        raise ConfigError("train split is empty")
    has_val = bool(index.split("validation"))

    # Normalized sequences are augmentation inputs every epoch; cache them.
    samples = []
    for entry in entries:
        seq = cache.load(entry.source_id)
        normalized, _ = normalize_sequence(seq)
        samples.append((normalized, vocabulary.index_of(entry.gloss), entry.source_id))

    history: list[dict] = []
    best_val = -math.inf
    best_state: dict[str, torch.Tensor] | None = None

    for epoch in range(train_cfg.epochs):
        model.train()
        order = shuffle_order(len(samples), train_cfg.global_seed, epoch)
        epoch_loss = 0.0
        epoch_hits = 0
        for sample_index in order:
            normalized, label, source_id = samples[sample_index]
            seed = derive_sample_seed(train_cfg.global_seed, epoch, int(sample_index))
            augmented = augment(normalized, train_cfg.augmentation, seed)
            frames = sequence_to_tensor(augmented)
            target = torch.tensor(label)

            logits = model(frames)
            loss = loss_fn(logits.unsqueeze(0), target.unsqueeze(0))
            if not torch.isfinite(loss):
                raise NonFiniteLossError(
                    f"non-finite loss at epoch {epoch}, sample {source_id!r}"
                )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()

            epoch_loss += loss.item()
            epoch_hits += int(logits.argmax().item() == label)

        record = {
            "epoch": epoch,
            "train_loss": epoch_loss / len(samples),
            "train_top1": epoch_hits / len(samples),
        }
        if has_val:
            val = evaluate_model(model, vocabulary, index, cache, "validation")
            record["val_top1_macro"] = val.top1_macro
            if val.top1_macro > best_val:
                best_val = val.top1_macro
                best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
        history.append(record)

    if train_cfg.model_selection == "best_val_top1" and best_state is not None:
        final_state = best_state
    else:
        final_state = {k: v.detach().clone() for k, v in model.state_dict().items()}

    return Checkpoint(
        state=final_state,
        model_config=model_cfg,
        vocabulary=vocabulary,
        train_config_digest=train_cfg.digest(),
        metrics_history=history,
    )
