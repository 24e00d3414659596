"""Canonical 54-landmark skeletal schema and the frame/sequence value types.

Slot order is fixed: 12 body slots, then 21 left-hand slots, then 21
right-hand slots.  The flattened model input (x, y per slot) therefore has
108 dimensions.  Coordinates are normalized image coordinates: fractions of
frame width/height, origin top-left, y increasing downward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

BODY_SLOTS = (
    "nose",
    "neck",
    "leftEye",
    "rightEye",
    "leftEar",
    "rightEar",
    "leftShoulder",
    "rightShoulder",
    "leftElbow",
    "rightElbow",
    "leftWrist",
    "rightWrist",
)

HEAD_SLOTS = ("nose", "leftEye", "rightEye", "leftEar", "rightEar")

# MediaPipe-style hand model: wrist, then four joints per finger
# (thumb -> pinky, base -> tip).
_HAND_JOINTS = (
    "wrist",
    "thumbCMC",
    "thumbMCP",
    "thumbIP",
    "thumbTip",
    "indexMCP",
    "indexPIP",
    "indexDIP",
    "indexTip",
    "middleMCP",
    "middlePIP",
    "middleDIP",
    "middleTip",
    "ringMCP",
    "ringPIP",
    "ringDIP",
    "ringTip",
    "pinkyMCP",
    "pinkyPIP",
    "pinkyDIP",
    "pinkyTip",
)

LEFT_HAND_SLOTS = tuple(f"leftHand_{j}" for j in _HAND_JOINTS)
RIGHT_HAND_SLOTS = tuple(f"rightHand_{j}" for j in _HAND_JOINTS)

SLOTS = BODY_SLOTS + LEFT_HAND_SLOTS + RIGHT_HAND_SLOTS
NUM_SLOTS = len(SLOTS)
SLOT_INDEX = {name: i for i, name in enumerate(SLOTS)}

GROUPS = {
    "BODY": BODY_SLOTS,
    "LEFT_HAND": LEFT_HAND_SLOTS,
    "RIGHT_HAND": RIGHT_HAND_SLOTS,
}

BODY_INDICES = np.arange(0, len(BODY_SLOTS))
LEFT_HAND_INDICES = np.arange(len(BODY_SLOTS), len(BODY_SLOTS) + 21)
RIGHT_HAND_INDICES = np.arange(len(BODY_SLOTS) + 21, NUM_SLOTS)

assert NUM_SLOTS == 54


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SkeletalFrame:
    """One video frame: 54 (x, y) landmarks plus per-slot presence flags.

    Absent slots carry the sentinel coordinates (0, 0); the presence flag is
    what distinguishes a true origin from a missing detection.
    """

    coordinates: np.ndarray  # (54, 2) float64
    present: np.ndarray  # (54,) bool

    def __post_init__(self) -> None:
        coords = np.ascontiguousarray(self.coordinates, dtype=np.float64)
        present = np.ascontiguousarray(self.present, dtype=bool)
        if coords.shape != (NUM_SLOTS, 2):
            raise ValueError(f"coordinates must be ({NUM_SLOTS}, 2), got {coords.shape}")
        if present.shape != (NUM_SLOTS,):
            raise ValueError(f"present must be ({NUM_SLOTS},), got {present.shape}")
        if not np.isfinite(coords).all():
            raise ValueError("coordinates must be finite")
        if np.any(coords[~present] != 0.0):
            raise ValueError("absent slots must carry the (0, 0) sentinel")
        object.__setattr__(self, "coordinates", _freeze(coords))
        object.__setattr__(self, "present", _freeze(present))

    @classmethod
    def from_slots(cls, slots: Mapping[str, tuple[float, float]]) -> "SkeletalFrame":
        """Build a frame from named landmarks; unnamed slots are absent."""
        coords = np.zeros((NUM_SLOTS, 2))
        present = np.zeros(NUM_SLOTS, dtype=bool)
        for name, (x, y) in slots.items():
            idx = SLOT_INDEX[name]
            coords[idx] = (x, y)
            present[idx] = True
        return cls(coords, present)

    def slot(self, name: str) -> tuple[float, float]:
        x, y = self.coordinates[SLOT_INDEX[name]]
        return float(x), float(y)

    def is_present(self, name: str) -> bool:
        return bool(self.present[SLOT_INDEX[name]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkeletalFrame):
            return NotImplemented
        return np.array_equal(self.coordinates, other.coordinates) and np.array_equal(
            self.present, other.present
        )

    def __hash__(self) -> int:  # frozen dataclass contract
        return hash((self.coordinates.tobytes(), self.present.tobytes()))


@dataclass(frozen=True)
class PoseSequence:
    """Ordered skeletal frames for one clip, stored as stacked arrays."""

    coordinates: np.ndarray  # (T, 54, 2) float64
    present: np.ndarray  # (T, 54) bool
    fps: float
    label: str | None = None
    source_id: str = ""

    def __post_init__(self) -> None:
        coords = np.ascontiguousarray(self.coordinates, dtype=np.float64)
        present = np.ascontiguousarray(self.present, dtype=bool)
        if coords.ndim != 3 or coords.shape[1:] != (NUM_SLOTS, 2):
            raise ValueError(f"coordinates must be (T, {NUM_SLOTS}, 2), got {coords.shape}")
        if present.shape != coords.shape[:2]:
            raise ValueError("present shape must match coordinates")
        if coords.shape[0] < 1:
            raise ValueError("a sequence needs at least one frame")
        if not self.fps > 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        if not np.isfinite(coords).all():
            raise ValueError("coordinates must be finite")
        if np.any(coords[~present] != 0.0):
            raise ValueError("absent slots must carry the (0, 0) sentinel")
        object.__setattr__(self, "coordinates", _freeze(coords))
        object.__setattr__(self, "present", _freeze(present))

    @classmethod
    def from_frames(
        cls,
        frames: Sequence[SkeletalFrame] | Iterable[SkeletalFrame],
        fps: float,
        label: str | None = None,
        source_id: str = "",
    ) -> "PoseSequence":
        frames = tuple(frames)
        if not frames:
            raise ValueError("a sequence needs at least one frame")
        coords = np.stack([f.coordinates for f in frames])
        present = np.stack([f.present for f in frames])
        return cls(coords, present, fps, label, source_id)

    @property
    def num_frames(self) -> int:
        return self.coordinates.shape[0]

    @property
    def frames(self) -> tuple[SkeletalFrame, ...]:
        return tuple(
            SkeletalFrame(self.coordinates[t].copy(), self.present[t].copy())
            for t in range(self.num_frames)
        )

    def frame(self, t: int) -> SkeletalFrame:
        return SkeletalFrame(self.coordinates[t].copy(), self.present[t].copy())

    def with_arrays(self, coordinates: np.ndarray, present: np.ndarray | None = None) -> "PoseSequence":
        """Copy of this sequence with replaced landmark arrays."""
        return PoseSequence(
            coordinates,
            self.present if present is None else present,
            self.fps,
            self.label,
            self.source_id,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PoseSequence):
            return NotImplemented
        return (
            np.array_equal(self.coordinates, other.coordinates)
            and np.array_equal(self.present, other.present)
            and self.fps == other.fps
            and self.label == other.label
            and self.source_id == other.source_id
        )

    def __hash__(self) -> int:
        return hash((self.coordinates.tobytes(), self.fps, self.label, self.source_id))
