import pytest

from spoterkit.dataset import make_fixture_dataset
from spoterkit.model import ModelConfig, TrainConfig, train
from spoterkit.preprocess import AugmentationConfig

# One pass/fail line per acceptance criterion, printed in the terminal
# summary regardless of capture settings.
_ACCEPTANCE_RESULTS: dict[str, tuple[str, float]] = {}


def record_acceptance(name: str, passed: bool, seconds: float) -> None:
    _ACCEPTANCE_RESULTS[name] = ("PASS" if passed else "FAIL", seconds)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (status, seconds) in _ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status}  {name}  ({seconds:.1f}s)")


@pytest.fixture(scope="session")
def fixture_dataset(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixture_data")
    index_path, cache, index, vocab = make_fixture_dataset(root)
    return {"index_path": index_path, "cache": cache, "index": index, "vocab": vocab}


@pytest.fixture(scope="session")
def small_model_cfg():
    return ModelConfig(
        num_classes=5,
        encoder_layers=2,
        decoder_layers=2,
        attention_heads=4,
        feedforward_dim=256,
        dropout=0.1,
        max_positions=64,
    )


@pytest.fixture(scope="session")
def fixture_checkpoint(fixture_dataset, small_model_cfg):
    """A quick checkpoint on the fixture dataset, shared across tests."""
    cfg = TrainConfig(
        epochs=4,
        learning_rate=0.01,
        global_seed=101,
        augmentation=AugmentationConfig.identity(),
        model_selection="last_epoch",
    )
    return train(
        fixture_dataset["index"],
        fixture_dataset["vocab"],
        fixture_dataset["cache"],
        small_model_cfg,
        cfg,
    )
