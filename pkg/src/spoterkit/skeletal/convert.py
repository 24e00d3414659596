"""Conversion of raw estimator frames into the canonical 54-landmark layout.

Conversion is frame-local and pure: mapped slots copy source coordinates,
synthesis rules fill derived joints (the neck as the exact shoulder
midpoint), and everything undetected becomes the (0, 0) sentinel with
present=False.  Estimators commonly zero-fill undetected joints instead of
omitting them, so a source landmark reported exactly at (0, 0) is treated as
undetected; this keeps presence flags and sentinels in one-to-one
correspondence after conversion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ..errors import EmptyInputError, FormatError, SchemaMismatchError
from . import schema
from .io import quantize_array
from .landmark_map import LandmarkMap

Point = Optional[tuple[float, float]]


@dataclass(frozen=True)
class RawEstimatorFrame:
    """One frame of native estimator output before canonicalization.

    Each group is either None (nothing detected) or a full-arity list whose
    entries are (x, y) pairs or None for undetected individual landmarks.
    """

    body: Sequence[Point] | None = None
    left_hand: Sequence[Point] | None = None
    right_hand: Sequence[Point] | None = None


def _check_arity(group: Sequence[Point] | None, expected: int, name: str) -> None:
    if group is not None and len(group) != expected:
        raise SchemaMismatchError(
            f"{name} has {len(group)} landmarks, map declares {expected}"
        )


def _detected(point: Point) -> bool:
    if point is None:
        return False
    x, y = point
    return not (x == 0.0 and y == 0.0)


def convert_frame(raw: RawEstimatorFrame, lmap: LandmarkMap) -> schema.SkeletalFrame:
    """Canonicalize one raw frame under the given landmark map.

    Output coordinates are aligned to the landmark-file grid (9 significant
    decimal digits), so a converted frame is bit-identical after any number
    of cache write/read cycles.  Estimator-precision (float32) inputs pass
    through unchanged.
    """
    _check_arity(raw.body, lmap.body_arity, "body")
    _check_arity(raw.left_hand, lmap.hand_arity, "left hand")
    _check_arity(raw.right_hand, lmap.hand_arity, "right hand")

    coords = np.zeros((schema.NUM_SLOTS, 2))
    present = np.zeros(schema.NUM_SLOTS, dtype=bool)

    def fill(mapping: dict[str, int], group: Sequence[Point] | None) -> None:
        if group is None:
            return
        for slot, src in mapping.items():
            point = group[src]
            if _detected(point):
                idx = schema.SLOT_INDEX[slot]
                coords[idx] = point
                present[idx] = True

    fill(lmap.body_map, raw.body)
    fill(lmap.left_hand_map, raw.left_hand)
    fill(lmap.right_hand_map, raw.right_hand)
    coords = quantize_array(coords)

    # Synthesis runs on grid-aligned inputs; the result is re-aligned, which
    # moves it by at most half a grid step (well inside the 1e-9 midpoint
    # tolerance).
    for rule in lmap.synthesis_rules:
        inputs = [schema.SLOT_INDEX[s] for s in rule.inputs]
        if not all(present[i] for i in inputs):
            continue
        target = schema.SLOT_INDEX[rule.target]
        if rule.rule == "midpoint":
            coords[target] = quantize_array((coords[inputs[0]] + coords[inputs[1]]) / 2.0)
        present[target] = True

    return schema.SkeletalFrame(coords, present)


def convert_sequence(
    raw_frames: Sequence[RawEstimatorFrame],
    fps: float,
    lmap: LandmarkMap,
    label: str | None = None,
    source_id: str = "",
) -> schema.PoseSequence:
    """Frame-wise conversion preserving order and count."""
    if len(raw_frames) == 0:
        raise EmptyInputError("cannot convert an empty frame list")
    frames = [convert_frame(raw, lmap) for raw in raw_frames]
    return schema.PoseSequence.from_frames(frames, fps, label=label, source_id=source_id)


def read_raw_dump(path: str | Path) -> tuple[list[RawEstimatorFrame], float, str, str | None]:
    """Read an estimator-agnostic raw landmark dump (JSON).

    Format: {"fps": <number>, "source_id": <str>, "label": <str|null>,
    "frames": [{"body": [[x,y]|null, ...] | null, "left_hand": ...,
    "right_hand": ...}, ...]}.  This is the ingestion path that works
    without any estimator backend installed.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc

    def group(entry: dict, key: str, frame_idx: int) -> Sequence[Point] | None:
        raw = entry.get(key)
        if raw is None:
            return None
        points: list[Point] = []
        for j, p in enumerate(raw):
            if p is None:
                points.append(None)
            elif isinstance(p, (list, tuple)) and len(p) == 2:
                points.append((float(p[0]), float(p[1])))
            else:
                raise FormatError(
                    f"{path}: frame {frame_idx} {key}[{j}] is not an [x, y] pair or null"
                )
        return points

    try:
        fps = float(doc["fps"])
        frames_doc = doc["frames"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: missing field {exc}") from exc
    frames = [
        RawEstimatorFrame(
            body=group(entry, "body", i),
            left_hand=group(entry, "left_hand", i),
            right_hand=group(entry, "right_hand", i),
        )
        for i, entry in enumerate(frames_doc)
    ]
    return frames, fps, str(doc.get("source_id", path.stem)), doc.get("label")
