"""The four skeletal augmentations: frame rotation, horizontal squeeze,
perspective-style edge displacement, and arm-joint rotation.

All parameters are drawn once per clip and applied to every frame, so a clip
stays temporally coherent.  Rotation sign convention: positive angles are
counterclockwise in mathematical (y-up) orientation, which appears clockwise
on screen because image coordinates grow downward.  Presence flags are never
touched; absent landmarks keep the (0, 0) sentinel.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from ..configio import parse_float, read_kv_file, write_kv_file
from ..errors import ConfigError
from ..skeletal import schema

CENTER = np.array([0.5, 0.5])


@dataclass(frozen=True)
class RotateParams:
    probability: float = 0.5
    max_degrees: float = 13.0


@dataclass(frozen=True)
class SqueezeParams:
    probability: float = 0.5
    max_ratio: float = 0.15


@dataclass(frozen=True)
class PerspectiveParams:
    probability: float = 0.5
    max_ratio: float = 0.1


@dataclass(frozen=True)
class ArmRotateParams:
    probability: float = 0.5
    max_degrees: float = 4.0


@dataclass(frozen=True)
class AugmentationConfig:
    rotate: RotateParams = RotateParams()
    squeeze: SqueezeParams = SqueezeParams()
    perspective: PerspectiveParams = PerspectiveParams()
    arm_rotate: ArmRotateParams = ArmRotateParams()

    def validate(self) -> None:
        for name in ("rotate", "squeeze", "perspective", "arm_rotate"):
            params = getattr(self, name)
            if not 0.0 <= params.probability <= 1.0:
                raise ConfigError(f"{name}.probability must be in [0, 1], got {params.probability}")
        for name in ("rotate", "arm_rotate"):
            deg = getattr(self, name).max_degrees
            if not (math.isfinite(deg) and deg >= 0.0):
                raise ConfigError(f"{name}.max_degrees must be non-negative, got {deg}")
        for name in ("squeeze", "perspective"):
            ratio = getattr(self, name).max_ratio
            if not 0.0 <= ratio < 0.5:
                raise ConfigError(f"{name}.max_ratio must be in [0, 0.5), got {ratio}")

    @classmethod
    def identity(cls) -> "AugmentationConfig":
        """All probabilities zero: augment becomes the identity."""
        return cls(
            rotate=RotateParams(0.0, 0.0),
            squeeze=SqueezeParams(0.0, 0.0),
            perspective=PerspectiveParams(0.0, 0.0),
            arm_rotate=ArmRotateParams(0.0, 0.0),
        )

    def to_flat(self) -> dict[str, str]:
        return {
            "rotate.probability": repr(self.rotate.probability),
            "rotate.max_degrees": repr(self.rotate.max_degrees),
            "squeeze.probability": repr(self.squeeze.probability),
            "squeeze.max_ratio": repr(self.squeeze.max_ratio),
            "perspective.probability": repr(self.perspective.probability),
            "perspective.max_ratio": repr(self.perspective.max_ratio),
            "arm_rotate.probability": repr(self.arm_rotate.probability),
            "arm_rotate.max_degrees": repr(self.arm_rotate.max_degrees),
        }

    @classmethod
    def from_flat(cls, items: dict[str, str], where: str = "config") -> "AugmentationConfig":
        defaults = cls().to_flat()
        unknown = set(items) - set(defaults)
        if unknown:
            raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
        merged = {**defaults, **items}
        value = lambda key: parse_float(merged, key, where)
        cfg = cls(
            rotate=RotateParams(value("rotate.probability"), value("rotate.max_degrees")),
            squeeze=SqueezeParams(value("squeeze.probability"), value("squeeze.max_ratio")),
            perspective=PerspectiveParams(
                value("perspective.probability"), value("perspective.max_ratio")
            ),
            arm_rotate=ArmRotateParams(
                value("arm_rotate.probability"), value("arm_rotate.max_degrees")
            ),
        )
        cfg.validate()
        return cfg

    def to_file(self, path) -> None:
        write_kv_file(path, self.to_flat())

    @classmethod
    def from_file(cls, path) -> "AugmentationConfig":
        return cls.from_flat(read_kv_file(path), where=str(path))


def rotate_points(points: np.ndarray, degrees: float, center: np.ndarray = CENTER) -> np.ndarray:
    """Rotate (..., 2) image-space points about center.

    Positive degrees rotate counterclockwise in y-up convention; in y-down
    image coordinates the matrix is [[c, s], [-s, c]].
    """
    if degrees == 0.0:  # exact identity, no (p - c) + c rounding
        return points.copy()
    theta = math.radians(degrees)
    c, s = math.cos(theta), math.sin(theta)
    matrix = np.array([[c, s], [-s, c]])
    return (points - center) @ matrix.T + center


def squeeze_points(points: np.ndarray, left_ratio: float, right_ratio: float) -> np.ndarray:
    """Move the unit square's vertical edges inward: x' = L + (1 - L - R) * x."""
    out = points.copy()
    out[..., 0] = left_ratio + (1.0 - left_ratio - right_ratio) * points[..., 0]
    return out


def perspective_points(points: np.ndarray, edge: str, signed_ratio: float) -> np.ndarray:
    """Keystone transform: move one horizontal edge's corners by signed_ratio.

    Positive ratios move the corners inward, negative outward; the effect
    fades linearly toward the opposite edge (bilinear interpolation over the
    unit square).
    """
    if edge not in ("top", "bottom"):
        raise ValueError(f"edge must be 'top' or 'bottom', got {edge!r}")
    x, y = points[..., 0], points[..., 1]
    weight = (1.0 - y) if edge == "top" else y
    out = points.copy()
    out[..., 0] = x + weight * signed_ratio * (1.0 - 2.0 * x)
    return out


_ARM_CHAINS = {}
for _side in ("left", "right"):
    _hand = schema.LEFT_HAND_INDICES if _side == "left" else schema.RIGHT_HAND_INDICES
    _wrist = schema.SLOT_INDEX[f"{_side}Wrist"]
    _ARM_CHAINS[(_side, "elbow")] = (
        schema.SLOT_INDEX[f"{_side}Elbow"],
        np.concatenate(([_wrist], _hand)),
    )
    _ARM_CHAINS[(_side, "wrist")] = (_wrist, _hand.copy())


def rotate_arm_joints(
    frame: schema.SkeletalFrame, joint: str, side: str, degrees: float
) -> schema.SkeletalFrame:
    """Rigidly rotate the sub-chain distal to an arm joint about that joint.

    elbow: rotates the forearm, wrist and that side's hand; wrist: rotates
    the hand only.  An absent pivot makes this a no-op.  Bone lengths within
    the rotated chain are preserved (rigid motion).
    """
    if (side, joint) not in _ARM_CHAINS:
        raise ValueError(f"unknown arm joint {side!r}/{joint!r}")
    pivot_idx, chain = _ARM_CHAINS[(side, joint)]
    if not frame.present[pivot_idx]:
        return frame
    coords = frame.coordinates.copy()
    mask = frame.present[chain]
    moving = chain[mask]
    coords[moving] = rotate_points(coords[moving], degrees, center=coords[pivot_idx])
    return schema.SkeletalFrame(coords, frame.present.copy())


def derive_sample_seed(global_seed: int, epoch: int, sample_index: int) -> int:
    """Per-sample augmentation seed, stable across processes and shuffling."""
    blob = f"{global_seed}:{epoch}:{sample_index}".encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def augment(seq: schema.PoseSequence, cfg: AugmentationConfig, seed: int) -> schema.PoseSequence:
    """Apply each enabled augmentation independently with its probability.

    Deterministic: identical (seq, cfg, seed) triples give identical outputs.
    Angles are drawn uniformly from [-max, +max], ratios from [0, max]; all
    draws happen once per clip.
    """
    cfg.validate()
    rng = np.random.default_rng(seed)
    coords = seq.coordinates.copy()
    present = seq.present

    def apply_global(transform) -> None:
        # Transform only present slots so sentinels stay exactly (0, 0).
        coords[present] = transform(coords[present])

    if rng.random() < cfg.rotate.probability:
        degrees = rng.uniform(-cfg.rotate.max_degrees, cfg.rotate.max_degrees)
        apply_global(lambda pts: rotate_points(pts, degrees))

    if rng.random() < cfg.squeeze.probability:
        left = rng.uniform(0.0, cfg.squeeze.max_ratio)
        right = rng.uniform(0.0, cfg.squeeze.max_ratio)
        apply_global(lambda pts: squeeze_points(pts, left, right))

    if rng.random() < cfg.perspective.probability:
        edge = "top" if rng.random() < 0.5 else "bottom"
        inward = rng.random() < 0.5
        ratio = rng.uniform(0.0, cfg.perspective.max_ratio)
        signed = ratio if inward else -ratio
        apply_global(lambda pts: perspective_points(pts, edge, signed))

    if rng.random() < cfg.arm_rotate.probability:
        for side in ("left", "right"):
            for joint in ("elbow", "wrist"):
                degrees = rng.uniform(-cfg.arm_rotate.max_degrees, cfg.arm_rotate.max_degrees)
                pivot_idx, chain = _ARM_CHAINS[(side, joint)]
                for t in range(coords.shape[0]):
                    if not present[t, pivot_idx]:
                        continue
                    moving = chain[present[t, chain]]
                    coords[t, moving] = rotate_points(
                        coords[t, moving], degrees, center=coords[t, pivot_idx]
                    )

    return seq.with_arrays(coords)
