"""Tiny synthetic fixture dataset: 5 fake glosses, no downloads needed.

Each gloss is a distinct wrist trajectory over a plausible upper-body
skeleton; samples vary in length, global placement, scale and jitter so the
normalization step actually matters.  Deterministic given the seed, so tests
can regenerate identical data anywhere.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from ..skeletal import schema
from ..skeletal.landmark_map import default_mediapipe_map
from .cache import LandmarkCache
from .index import DatasetIndex, GlossVocabulary, load_index

FIXTURE_GLOSSES = ("circle", "wave", "raise", "cross", "point")
FIXTURE_ESTIMATOR_VERSION = "fixture-v1"

_REST = {
    "nose": (0.50, 0.20),
    "leftEye": (0.53, 0.18),
    "rightEye": (0.47, 0.18),
    "leftEar": (0.56, 0.19),
    "rightEar": (0.44, 0.19),
    "leftShoulder": (0.62, 0.35),
    "rightShoulder": (0.38, 0.35),
    "leftElbow": (0.66, 0.50),
    "rightElbow": (0.34, 0.50),
    "leftWrist": (0.64, 0.62),
    "rightWrist": (0.36, 0.62),
}

# Fixed 21-point hand template: wrist at the origin, fingers fanning down.
_HAND_TEMPLATE = np.zeros((21, 2))
for _f in range(5):
    _angle = math.radians(-40 + 20 * _f)
    _dir = np.array([math.sin(_angle), math.cos(_angle)])
    for _j in range(4):
        _HAND_TEMPLATE[1 + 4 * _f + _j] = _dir * (0.015 + 0.011 * _j)


def _wrist_paths(gloss: str, t: np.ndarray, phase: float) -> tuple[np.ndarray, np.ndarray]:
    """(left, right) wrist positions for each time in t (t in [0, 1])."""
    left = np.tile(_REST["leftWrist"], (len(t), 1)).astype(float)
    right = np.tile(_REST["rightWrist"], (len(t), 1)).astype(float)
    if gloss == "circle":
        ang = 2 * math.pi * (t + phase)
        right[:, 0] = 0.36 + 0.09 * np.cos(ang)
        right[:, 1] = 0.48 + 0.09 * np.sin(ang)
    elif gloss == "wave":
        right[:, 0] = 0.36 + 0.09 * np.sin(4 * math.pi * (t + phase))
        right[:, 1] = 0.45
    elif gloss == "raise":
        left[:, 1] = 0.62 - 0.32 * t
        right[:, 1] = 0.62 - 0.32 * t
    elif gloss == "cross":
        left[:, 0] = 0.64 - 0.24 * t
        right[:, 0] = 0.36 + 0.24 * t
        left[:, 1] = right[:, 1] = 0.50
    elif gloss == "point":
        right[:, 0] = 0.22
        right[:, 1] = 0.40
    else:
        raise ValueError(f"unknown fixture gloss {gloss!r}")
    return left, right


def generate_clip(gloss: str, rng: np.random.Generator, source_id: str = "") -> schema.PoseSequence:
    num_frames = int(rng.integers(24, 40))
    t = np.linspace(0.0, 1.0, num_frames)
    phase = float(rng.uniform(0.0, 0.3))
    left_wrist, right_wrist = _wrist_paths(gloss, t, phase)

    coords = np.zeros((num_frames, schema.NUM_SLOTS, 2))
    for name, pos in _REST.items():
        coords[:, schema.SLOT_INDEX[name]] = pos
    coords[:, schema.SLOT_INDEX["leftWrist"]] = left_wrist
    coords[:, schema.SLOT_INDEX["rightWrist"]] = right_wrist
    for side, wrist in (("left", left_wrist), ("right", right_wrist)):
        hand = schema.LEFT_HAND_INDICES if side == "left" else schema.RIGHT_HAND_INDICES
        anchor = wrist + np.array([0.0, 0.02])
        coords[:, hand] = anchor[:, None, :] + _HAND_TEMPLATE[None, :, :]

    # Sample-level placement variation plus per-point jitter.
    scale = rng.uniform(0.9, 1.1)
    offset = rng.uniform(-0.04, 0.04, size=2)
    coords = (coords - 0.5) * scale + 0.5 + offset
    coords += rng.normal(0.0, 0.004, size=coords.shape)

    # Round to 6 decimals (exactly representable in the landmark file format),
    # then synthesize the neck as the exact shoulder midpoint.
    coords = np.round(coords, 6)
    ls = coords[:, schema.SLOT_INDEX["leftShoulder"]]
    rs = coords[:, schema.SLOT_INDEX["rightShoulder"]]
    coords[:, schema.SLOT_INDEX["neck"]] = (ls + rs) / 2.0

    present = np.ones((num_frames, schema.NUM_SLOTS), dtype=bool)
    return schema.PoseSequence(coords, present, fps=25.0, label=gloss, source_id=source_id)


def fixture_cache(root: str | Path) -> LandmarkCache:
    return LandmarkCache.create(
        Path(root) / "cache", default_mediapipe_map(), FIXTURE_ESTIMATOR_VERSION
    )


def make_fixture_dataset(
    root: str | Path,
    seed: int = 20240501,
    per_class: tuple[int, int, int] = (6, 2, 2),
) -> tuple[Path, LandmarkCache, DatasetIndex, GlossVocabulary]:
    """Write the fixture index and landmark cache under ``root``."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    cache = fixture_cache(root)
    rng = np.random.default_rng(seed)

    doc = []
    for gloss in FIXTURE_GLOSSES:
        instances = []
        counter = 0
        for split, count in zip(("train", "val", "test"), per_class):
            for _ in range(count):
                source_id = f"{gloss}_{counter:03d}"
                counter += 1
                seq = generate_clip(gloss, rng, source_id=source_id)
                cache.store(source_id, seq)
                instances.append({"video_id": source_id, "split": split})
        doc.append({"gloss": gloss, "instances": instances})

    index_path = root / "index.json"
    index_path.write_text(json.dumps(doc, indent=2) + "\n")
    index, vocab = load_index(index_path, subset_size=len(FIXTURE_GLOSSES))
    return index_path, cache, index, vocab
