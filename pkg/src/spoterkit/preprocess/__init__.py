from .augment import (
    ArmRotateParams,
    AugmentationConfig,
    PerspectiveParams,
    RotateParams,
    SqueezeParams,
    augment,
    derive_sample_seed,
    perspective_points,
    rotate_arm_joints,
    rotate_points,
    squeeze_points,
)
from .normalize import NormalizationReport, drop_empty_frames, normalize_sequence

__all__ = [
    "ArmRotateParams",
    "AugmentationConfig",
    "PerspectiveParams",
    "RotateParams",
    "SqueezeParams",
    "augment",
    "derive_sample_seed",
    "perspective_points",
    "rotate_arm_joints",
    "rotate_points",
    "squeeze_points",
    "NormalizationReport",
    "drop_empty_frames",
    "normalize_sequence",
]
