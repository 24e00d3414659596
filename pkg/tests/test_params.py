import pytest

from spoterkit.errors import ConfigError
from spoterkit.model import ModelConfig, build_model, count_parameters


def enumerate_parameters(cfg: ModelConfig) -> int:
    return sum(p.numel() for p in build_model(cfg, seed=0).parameters())


@pytest.mark.parametrize(
    "cfg",
    [
        ModelConfig(num_classes=100),
        ModelConfig(num_classes=5, encoder_layers=1, decoder_layers=1, attention_heads=4,
                    feedforward_dim=64, max_positions=16),
        ModelConfig(num_classes=37, encoder_layers=3, decoder_layers=2, attention_heads=12,
                    feedforward_dim=512, max_positions=128),
    ],
)
def test_analytic_count_matches_enumeration(cfg):
    assert count_parameters(cfg) == enumerate_parameters(cfg)


def test_head_contribution_for_100_classes():
    base = ModelConfig(num_classes=1)
    hundred = ModelConfig(num_classes=100)
    assert count_parameters(hundred) - count_parameters(base) == 108 * 99 + 99
    # the 100-class head itself contributes width * 100 + 100
    no_head = count_parameters(hundred) - (108 * 100 + 100)
    assert count_parameters(hundred) == no_head + 108 * 100 + 100


def test_doubling_encoder_layers_adds_exactly_one_layer_block():
    six = ModelConfig(num_classes=10, encoder_layers=6)
    twelve = ModelConfig(num_classes=10, encoder_layers=12)
    one = ModelConfig(num_classes=10, encoder_layers=1)
    two = ModelConfig(num_classes=10, encoder_layers=2)
    per_layer = count_parameters(two) - count_parameters(one)
    assert count_parameters(twelve) - count_parameters(six) == 6 * per_layer


def test_decoder_layer_additivity():
    a = ModelConfig(num_classes=10, decoder_layers=1)
    b = ModelConfig(num_classes=10, decoder_layers=2)
    c = ModelConfig(num_classes=10, decoder_layers=3)
    assert count_parameters(c) - count_parameters(b) == count_parameters(b) - count_parameters(a)


def test_config_validation():
    with pytest.raises(ConfigError):
        ModelConfig(num_classes=10, attention_heads=7)  # 7 does not divide 108
    with pytest.raises(ConfigError):
        ModelConfig(num_classes=10, input_dim=100)
    with pytest.raises(ConfigError):
        ModelConfig(num_classes=0)
    with pytest.raises(ConfigError):
        ModelConfig(num_classes=10, dropout=1.0)
