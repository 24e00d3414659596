"""The compact encoder-decoder classifier.

Frames are flattened to 108-vectors (x then y per slot, schema order) and
fed straight into the transformer at that width, with a learnable positional
embedding over the frame axis.  The decoder attends a single learned class
query over the encoder output; a linear head maps the attended vector to
class logits.  No padding or masking: sequences run one at a time.
"""

from __future__ import annotations

import numpy as np
import torch
from torch import nn

from ..errors import DimensionMismatchError
from ..skeletal.schema import PoseSequence
from .config import ModelConfig


def set_deterministic(enabled: bool = True) -> None:
    """Trade speed for bit-reproducibility (fixed algorithms, one thread)."""
    torch.use_deterministic_algorithms(enabled)
    if enabled:
        torch.set_num_threads(1)


class SignClassifier(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        d = cfg.input_dim
        self.positional = nn.Parameter(torch.empty(cfg.max_positions, d))
        self.class_query = nn.Parameter(torch.empty(1, 1, d))
        encoder_layer = nn.TransformerEncoderLayer(
            d_model=d,
            nhead=cfg.attention_heads,
            dim_feedforward=cfg.feedforward_dim,
            dropout=cfg.dropout,
            batch_first=True,
        )
        self.encoder = nn.TransformerEncoder(
            encoder_layer, num_layers=cfg.encoder_layers, enable_nested_tensor=False
        )
        decoder_layer = nn.TransformerDecoderLayer(
            d_model=d,
            nhead=cfg.attention_heads,
            dim_feedforward=cfg.feedforward_dim,
            dropout=cfg.dropout,
            batch_first=True,
        )
        self.decoder = nn.TransformerDecoder(decoder_layer, num_layers=cfg.decoder_layers)
        self.head = nn.Linear(d, cfg.num_classes)
        nn.init.normal_(self.positional, std=0.02)
        nn.init.normal_(self.class_query, std=0.02)

    def forward(self, frames: torch.Tensor) -> torch.Tensor:
        """(T, input_dim) frame vectors -> (num_classes,) logits."""
        if frames.ndim != 2 or frames.shape[-1] != self.cfg.input_dim:
            raise DimensionMismatchError(
                f"expected (T, {self.cfg.input_dim}) input, got {tuple(frames.shape)}"
            )
        length = frames.shape[0]
        # Clamp positions past the table to its last entry so any length runs.
        positions = torch.arange(length, device=frames.device).clamp_max(
            self.cfg.max_positions - 1
        )
        x = (frames + self.positional[positions]).unsqueeze(0)
        memory = self.encoder(x)
        attended = self.decoder(self.class_query, memory)
        return self.head(attended)[0, 0]


def build_model(cfg: ModelConfig, seed: int | None = None) -> SignClassifier:
    if seed is not None:
        torch.manual_seed(seed)
    return SignClassifier(cfg)


def sequence_to_tensor(seq: PoseSequence, dtype: torch.dtype = torch.float32) -> torch.Tensor:
    """Flatten frames to (T, 108): x then y per slot, schema order."""
    flat = seq.coordinates.reshape(seq.num_frames, -1).copy()
    return torch.from_numpy(flat).to(dtype)


def forward_logits(seq: PoseSequence, model: SignClassifier) -> np.ndarray:
    """Inference-mode logits for one (normalized) sequence."""
    was_training = model.training
    model.eval()
    try:
        with torch.no_grad():
            dtype = next(model.parameters()).dtype
            logits = model(sequence_to_tensor(seq, dtype=dtype))
    finally:
        if was_training:
            model.train()
    return logits.detach().cpu().numpy().astype(np.float64)
