from .schema import (
    BODY_SLOTS,
    GROUPS,
    HEAD_SLOTS,
    LEFT_HAND_SLOTS,
    NUM_SLOTS,
    RIGHT_HAND_SLOTS,
    SLOT_INDEX,
    SLOTS,
    PoseSequence,
    SkeletalFrame,
)
from .landmark_map import LandmarkMap, SynthesisRule, default_mediapipe_map
from .convert import RawEstimatorFrame, convert_frame, convert_sequence, read_raw_dump
from .estimators import EstimatorAdapter, MediaPipeHolisticAdapter, extract_landmarks
from .io import parse_sequence, read_sequence, write_sequence

__all__ = [
    "BODY_SLOTS",
    "GROUPS",
    "HEAD_SLOTS",
    "LEFT_HAND_SLOTS",
    "NUM_SLOTS",
    "RIGHT_HAND_SLOTS",
    "SLOT_INDEX",
    "SLOTS",
    "PoseSequence",
    "SkeletalFrame",
    "LandmarkMap",
    "SynthesisRule",
    "default_mediapipe_map",
    "RawEstimatorFrame",
    "convert_frame",
    "convert_sequence",
    "read_raw_dump",
    "EstimatorAdapter",
    "MediaPipeHolisticAdapter",
    "extract_landmarks",
    "parse_sequence",
    "read_sequence",
    "write_sequence",
]
