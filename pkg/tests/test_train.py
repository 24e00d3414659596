import numpy as np
import pytest

from spoterkit.errors import ConfigError
from spoterkit.model import ModelConfig, TrainConfig, evaluate, train
from spoterkit.model.config import parse_train_file
from spoterkit.preprocess import AugmentationConfig


def quick_cfg(**overrides):
    base = dict(
        epochs=1,
        learning_rate=0.01,
        global_seed=0,
        augmentation=AugmentationConfig.identity(),
        model_selection="last_epoch",
    )
    base.update(overrides)
    return TrainConfig(**base)


def test_one_epoch_checkpoint_and_history(fixture_dataset, small_model_cfg):
    ckpt = train(
        fixture_dataset["index"],
        fixture_dataset["vocab"],
        fixture_dataset["cache"],
        small_model_cfg,
        quick_cfg(),
    )
    assert len(ckpt.metrics_history) == 1
    record = ckpt.metrics_history[0]
    assert set(record) == {"epoch", "train_loss", "train_top1", "val_top1_macro"}
    assert ckpt.train_config_digest == quick_cfg().digest()
    assert len(ckpt.vocabulary) == small_model_cfg.num_classes


def test_same_seed_reproduces_metrics_and_weights(fixture_dataset, small_model_cfg):
    args = (
        fixture_dataset["index"],
        fixture_dataset["vocab"],
        fixture_dataset["cache"],
        small_model_cfg,
    )
    cfg = quick_cfg(epochs=2, augmentation=AugmentationConfig(), global_seed=7)
    a = train(*args, cfg)
    b = train(*args, cfg)
    assert a.metrics_history == b.metrics_history
    for key in a.state:
        assert np.array_equal(a.state[key].numpy(), b.state[key].numpy())


def test_different_seed_changes_run(fixture_dataset, small_model_cfg):
    args = (
        fixture_dataset["index"],
        fixture_dataset["vocab"],
        fixture_dataset["cache"],
        small_model_cfg,
    )
    a = train(*args, quick_cfg(global_seed=1))
    b = train(*args, quick_cfg(global_seed=2))
    assert a.metrics_history != b.metrics_history


def test_best_val_selection_keeps_best_epoch(fixture_dataset, small_model_cfg):
    args = (
        fixture_dataset["index"],
        fixture_dataset["vocab"],
        fixture_dataset["cache"],
        small_model_cfg,
    )
    ckpt = train(*args, quick_cfg(epochs=3, model_selection="best_val_top1"))
    best_recorded = max(r["val_top1_macro"] for r in ckpt.metrics_history)
    result = evaluate(ckpt, fixture_dataset["index"], fixture_dataset["cache"], "validation")
    assert result.top1_macro == pytest.approx(best_recorded, abs=1e-12)


def test_vocabulary_size_mismatch_rejected(fixture_dataset):
    wrong = ModelConfig(num_classes=7, encoder_layers=1, decoder_layers=1,
                        attention_heads=4, feedforward_dim=64, max_positions=16)
    with pytest.raises(ConfigError, match="vocabulary"):
        train(
            fixture_dataset["index"],
            fixture_dataset["vocab"],
            fixture_dataset["cache"],
            wrong,
            quick_cfg(),
        )


def test_train_config_validation():
    with pytest.raises(ConfigError):
        TrainConfig(epochs=0)
    with pytest.raises(ConfigError):
        TrainConfig(epochs=1, learning_rate=0.0)
    with pytest.raises(ConfigError):
        TrainConfig(epochs=1, optimizer="rmsprop")
    with pytest.raises(ConfigError):
        TrainConfig(epochs=1, model_selection="median")


def test_parse_train_file_round_trip():
    items = {
        "epochs": "3",
        "learning_rate": "0.005",
        "optimizer": "sgd",
        "global_seed": "9",
        "model_selection": "last_epoch",
        "model.encoder_layers": "2",
        "model.decoder_layers": "1",
        "model.attention_heads": "6",
        "model.feedforward_dim": "128",
        "model.dropout": "0.0",
        "model.max_positions": "32",
        "augment.rotate.probability": "0.25",
    }
    model_cfg, train_cfg = parse_train_file(items, num_classes=5)
    assert model_cfg.encoder_layers == 2
    assert model_cfg.num_classes == 5
    assert train_cfg.epochs == 3
    assert train_cfg.augmentation.rotate.probability == 0.25
    with pytest.raises(ConfigError, match="unknown"):
        parse_train_file({"epochs": "1", "banana": "2"}, num_classes=5)
    with pytest.raises(ConfigError, match="epochs"):
        parse_train_file({"learning_rate": "0.1"}, num_classes=5)
