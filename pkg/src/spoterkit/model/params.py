"""Closed-form trainable-parameter count for the classifier.

Per attention block: four d x d projections with biases.  Per feedforward:
d->ff and ff->d linears with biases.  Layer norms carry 2d parameters each
(two in an encoder layer, three in a decoder layer).  On top: the positional
table, the class query, and the classification head.
"""

from .config import ModelConfig


def attention_parameters(d: int) -> int:
    return 4 * d * d + 4 * d


def feedforward_parameters(d: int, ff: int) -> int:
    return 2 * d * ff + ff + d


def encoder_layer_parameters(d: int, ff: int) -> int:
    return attention_parameters(d) + feedforward_parameters(d, ff) + 2 * (2 * d)


def decoder_layer_parameters(d: int, ff: int) -> int:
    return 2 * attention_parameters(d) + feedforward_parameters(d, ff) + 3 * (2 * d)


def count_parameters(cfg: ModelConfig) -> int:
    d, ff = cfg.input_dim, cfg.feedforward_dim
    total = cfg.max_positions * d  # positional table
    total += d  # class query
    total += cfg.encoder_layers * encoder_layer_parameters(d, ff)
    total += cfg.decoder_layers * decoder_layer_parameters(d, ff)
    total += d * cfg.num_classes + cfg.num_classes  # head
    return total
