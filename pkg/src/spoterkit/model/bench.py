"""Single-threaded inference latency benchmark (forward + softmax).

Reports per-length median and p95 wall-clock milliseconds plus the exact
parameter count and an environment descriptor.  Absolute numbers only; any
cross-hardware ratio is up to the reader.
"""

from __future__ import annotations

import platform
import sys
import time
from dataclasses import dataclass

import numpy as np
import torch

from ..skeletal import schema
from .checkpoint import Checkpoint
from .metrics import softmax
from .params import count_parameters
from .transformer import forward_logits


@dataclass(frozen=True)
class LatencyReport:
    cells: dict[int, dict[str, float]]  # length -> {median_ms, p95_ms, repetitions}
    parameter_count: int
    environment: dict[str, str]

    def to_json(self) -> dict:
        return {
            "cells": {str(k): v for k, v in self.cells.items()},
            "parameter_count": self.parameter_count,
            "environment": self.environment,
        }


def _random_sequence(length: int, rng: np.random.Generator) -> schema.PoseSequence:
    coords = rng.uniform(0.0, 1.0, (length, schema.NUM_SLOTS, 2))
    present = np.ones((length, schema.NUM_SLOTS), dtype=bool)
    return schema.PoseSequence(coords, present, fps=25.0, source_id=f"bench-{length}")


def benchmark_inference(
    checkpoint: Checkpoint,
    seq_lengths: list[int],
    repetitions: int = 30,
    warmup: int = 5,
) -> LatencyReport:
    model = checkpoint.build()
    torch.set_num_threads(1)
    rng = np.random.default_rng(0)

    cells: dict[int, dict[str, float]] = {}
    for length in seq_lengths:
        seq = _random_sequence(length, rng)
        for _ in range(warmup):
            softmax(forward_logits(seq, model))
        times_ms = []
        for _ in range(repetitions):
            start = time.perf_counter()
            softmax(forward_logits(seq, model))
            times_ms.append((time.perf_counter() - start) * 1000.0)
        cells[length] = {
            "median_ms": float(np.median(times_ms)),
            "p95_ms": float(np.percentile(times_ms, 95)),
            "repetitions": float(repetitions),
        }

    environment = {
        "python": sys.version.split()[0],
        "torch": torch.__version__,
        "platform": platform.platform(),
        "machine": platform.machine(),
        "threads": "1",
    }
    return LatencyReport(cells, count_parameters(checkpoint.model_config), environment)
