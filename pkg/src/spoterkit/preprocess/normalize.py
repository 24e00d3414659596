"""Signer-invariant sequence normalization.

Body landmarks are translated and uniformly scaled so the sequence-mean neck
lands on (0.5, 0.5) and the reference body scale (sequence-mean shoulder
distance, with fallbacks) maps to 1.  Each hand is remapped independently
into the unit square of its own sequence-level bounding box, scaled by the
box's longer side so aspect ratio is preserved.  The result is invariant to
global translation and uniform scaling of the input, and normalizing twice
is a no-op.

Degenerate geometry (nothing detected, zero-extent boxes) never raises: the
affected part passes through unchanged and is flagged in the report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..skeletal import schema

CANONICAL_ANCHOR = np.array([0.5, 0.5])

_NECK = schema.SLOT_INDEX["neck"]
_NOSE = schema.SLOT_INDEX["nose"]
_LSHOULDER = schema.SLOT_INDEX["leftShoulder"]
_RSHOULDER = schema.SLOT_INDEX["rightShoulder"]


@dataclass(frozen=True)
class NormalizationReport:
    body_scale_used: float
    body_anchor: tuple[float, float] | None
    hand_boxes: dict[str, tuple[float, float, float, float] | None]
    degenerate: dict[str, bool]


def drop_empty_frames(seq: schema.PoseSequence) -> schema.PoseSequence:
    """Remove frames with zero detected landmarks (opt-in; default pipelines keep them).

    A sequence needs at least one frame, so an all-empty input passes through
    unchanged.
    """
    keep = seq.present.any(axis=1)
    if keep.all() or not keep.any():
        return seq
    return schema.PoseSequence(
        seq.coordinates[keep], seq.present[keep], seq.fps, seq.label, seq.source_id
    )


def _body_anchor(coords: np.ndarray, present: np.ndarray) -> np.ndarray | None:
    neck_mask = present[:, _NECK]
    if neck_mask.any():
        return coords[neck_mask, _NECK].mean(axis=0)
    body_present = present[:, schema.BODY_INDICES]
    if body_present.any():
        body_coords = coords[:, schema.BODY_INDICES]
        return body_coords[body_present].mean(axis=0)
    return None


def _mean_distance(coords: np.ndarray, mask: np.ndarray, a: int, b: int) -> tuple[float, float]:
    """Mean distance between slots a and b over frames where both are present.

    Returns (distance, coverage fraction); distance is 0.0 when no frame
    qualifies.
    """
    both = mask[:, a] & mask[:, b]
    if not both.any():
        return 0.0, 0.0
    d = np.linalg.norm(coords[both, a] - coords[both, b], axis=1)
    return float(d.mean()), float(both.mean())


def _body_scale(coords: np.ndarray, present: np.ndarray) -> tuple[float, bool]:
    shoulder, shoulder_cov = _mean_distance(coords, present, _LSHOULDER, _RSHOULDER)
    head_neck, head_cov = _mean_distance(coords, present, _NOSE, _NECK)
    # Prefer the shoulder distance; fall back to head-to-neck when shoulders
    # are mostly absent; 1.0 (flagged) when neither gives a usable scale.
    candidates = (
        (shoulder, shoulder_cov >= 0.5),
        (head_neck, head_cov >= 0.5),
        (shoulder, shoulder_cov > 0.0),
        (head_neck, head_cov > 0.0),
    )
    for value, usable in candidates:
        if usable and value > 0.0:
            return value, False
    return 1.0, True


def normalize_sequence(seq: schema.PoseSequence) -> tuple[schema.PoseSequence, NormalizationReport]:
    coords = seq.coordinates.copy()
    present = seq.present

    degenerate = {"body": False, "left_hand": False, "right_hand": False}
    hand_boxes: dict[str, tuple[float, float, float, float] | None] = {}

    anchor = _body_anchor(coords, present)
    if anchor is None:
        degenerate["body"] = True
        scale = 1.0
    else:
        scale, scale_degenerate = _body_scale(coords, present)
        degenerate["body"] = scale_degenerate
        body_mask = present[:, schema.BODY_INDICES]
        body = coords[:, schema.BODY_INDICES]
        body[body_mask] = (body[body_mask] - anchor) / scale + CANONICAL_ANCHOR
        coords[:, schema.BODY_INDICES] = body

    for key, indices in (("left", schema.LEFT_HAND_INDICES), ("right", schema.RIGHT_HAND_INDICES)):
        hand_mask = present[:, indices]
        hand = coords[:, indices]
        if not hand_mask.any():
            degenerate[f"{key}_hand"] = True
            hand_boxes[key] = None
            continue
        points = hand[hand_mask]
        box_min = points.min(axis=0)
        box_max = points.max(axis=0)
        longer = float(max(box_max[0] - box_min[0], box_max[1] - box_min[1]))
        hand_boxes[key] = (float(box_min[0]), float(box_min[1]), float(box_max[0]), float(box_max[1]))
        if longer <= 0.0:
            degenerate[f"{key}_hand"] = True
            continue
        hand[hand_mask] = (hand[hand_mask] - box_min) / longer
        coords[:, indices] = hand

    report = NormalizationReport(
        body_scale_used=float(scale),
        body_anchor=None if anchor is None else (float(anchor[0]), float(anchor[1])),
        hand_boxes=hand_boxes,
        degenerate=degenerate,
    )
    return seq.with_arrays(coords), report
