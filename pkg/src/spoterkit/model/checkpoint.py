"""Checkpoint archive: weights, model config, vocabulary, training digest.

Saved as a single torch archive; the per-epoch metrics history additionally
goes to a ``<path>.metrics.jsonl`` sidecar for easy plotting.  Loading is
strict: tensor shapes must match the stored config, and the vocabulary must
match the classifier head.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import torch

from ..dataset.index import GlossVocabulary
from ..errors import FormatError
from .config import ModelConfig
from .transformer import SignClassifier, build_model


@dataclass
class Checkpoint:
    state: dict[str, torch.Tensor]
    model_config: ModelConfig
    vocabulary: GlossVocabulary
    train_config_digest: str = ""
    metrics_history: list[dict] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.vocabulary) != self.model_config.num_classes:
            raise FormatError(
                f"vocabulary size {len(self.vocabulary)} != num_classes "
                f"{self.model_config.num_classes}"
            )

    @property
    def model_id(self) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(self.model_config.to_json(), sort_keys=True).encode())
        h.update("\x00".join(self.vocabulary).encode())
        for name in sorted(self.state):
            h.update(name.encode())
            h.update(self.state[name].detach().cpu().contiguous().numpy().tobytes())
        return h.hexdigest()[:12]

    def build(self) -> SignClassifier:
        model = build_model(self.model_config)
        model.load_state_dict(self.state, strict=True)
        model.eval()
        return model

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        torch.save(
            {
                "format": "spoterkit-checkpoint-v1",
                "state": {k: v.detach().cpu() for k, v in self.state.items()},
                "model_config": self.model_config.to_json(),
                "vocabulary": list(self.vocabulary),
                "train_config_digest": self.train_config_digest,
                "metrics_history": self.metrics_history,
            },
            path,
        )
        sidecar = path.with_name(path.name + ".metrics.jsonl")
        with open(sidecar, "w") as f:
            for record in self.metrics_history:
                f.write(json.dumps(record) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Checkpoint":
        path = Path(path)
        try:
            payload = torch.load(path, map_location="cpu", weights_only=True)
        except Exception as exc:
            raise FormatError(f"{path}: not a readable checkpoint ({exc})") from exc
        if not isinstance(payload, dict) or payload.get("format") != "spoterkit-checkpoint-v1":
            raise FormatError(f"{path}: not a spoterkit checkpoint")
        ckpt = cls(
            state=dict(payload["state"]),
            model_config=ModelConfig.from_json(payload["model_config"]),
            vocabulary=GlossVocabulary(tuple(payload["vocabulary"])),
            train_config_digest=payload.get("train_config_digest", ""),
            metrics_history=list(payload.get("metrics_history", [])),
        )
        ckpt.build()  # shape check against the stored config
        return ckpt
