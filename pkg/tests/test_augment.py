import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoterkit.errors import ConfigError
from spoterkit.preprocess import (
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
from spoterkit.skeletal import schema


def random_sequence(seed: int, frames: int = 5, partial: bool = False) -> schema.PoseSequence:
    rng = np.random.default_rng(seed)
    coords = rng.uniform(0.1, 0.9, (frames, schema.NUM_SLOTS, 2))
    present = np.ones((frames, schema.NUM_SLOTS), dtype=bool)
    if partial:
        present = rng.random((frames, schema.NUM_SLOTS)) < 0.7
        coords[~present] = 0.0
    return schema.PoseSequence(coords, present, fps=25.0)


def test_rotate_90_analytic():
    out = rotate_points(np.array([[0.7, 0.5]]), 90.0)
    assert np.allclose(out, [[0.5, 0.3]], atol=1e-12)


def test_rotate_zero_is_identity():
    pts = np.random.default_rng(0).uniform(0, 1, (10, 2))
    assert np.allclose(rotate_points(pts, 0.0), pts, atol=1e-15)


def test_squeeze_analytic():
    pts = np.array([[0.5, 0.2], [0.0, 0.9], [1.0, 0.1]])
    out = squeeze_points(pts, 0.1, 0.1)
    assert np.allclose(out[:, 0], [0.5, 0.1, 0.9], atol=1e-12)
    assert np.array_equal(out[:, 1], pts[:, 1])


def test_perspective_moves_only_the_chosen_edge():
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    out = perspective_points(corners, "top", 0.1)
    assert np.allclose(out[0], [0.1, 0.0], atol=1e-12)  # top-left inward
    assert np.allclose(out[1], [0.9, 0.0], atol=1e-12)  # top-right inward
    assert np.allclose(out[2], [0.0, 1.0], atol=1e-12)  # bottom unchanged
    assert np.allclose(out[3], [1.0, 1.0], atol=1e-12)
    # Center column is a fixed line.
    mid = perspective_points(np.array([[0.5, 0.4]]), "top", 0.2)
    assert np.allclose(mid, [[0.5, 0.4]], atol=1e-12)


def test_perspective_outward_uses_negative_ratio():
    out = perspective_points(np.array([[0.0, 1.0]]), "bottom", -0.2)
    assert np.allclose(out, [[-0.2, 1.0]], atol=1e-12)


def test_identity_config_is_identity():
    seq = random_sequence(1)
    out = augment(seq, AugmentationConfig.identity(), seed=99)
    assert out == seq


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 10_000))
def test_augment_deterministic(aug_seed, data_seed):
    seq = random_sequence(data_seed)
    cfg = AugmentationConfig()
    a = augment(seq, cfg, aug_seed)
    b = augment(seq, cfg, aug_seed)
    assert np.array_equal(a.coordinates, b.coordinates)


def test_augment_preserves_presence_and_sentinels():
    seq = random_sequence(2, partial=True)
    out = augment(seq, AugmentationConfig(), seed=5)
    assert np.array_equal(out.present, seq.present)
    assert (out.coordinates[~out.present] == 0.0).all()


def test_arm_rotate_zero_is_identity():
    frame = random_sequence(3).frame(0)
    assert rotate_arm_joints(frame, "elbow", "left", 0.0) == frame


def test_arm_rotate_wrist_180_analytic():
    slots = {"leftWrist": (0.5, 0.5), "leftHand_wrist": (0.6, 0.5)}
    frame = schema.SkeletalFrame.from_slots(slots)
    out = rotate_arm_joints(frame, "wrist", "left", 180.0)
    x, y = out.slot("leftHand_wrist")
    assert abs(x - 0.4) < 1e-12 and abs(y - 0.5) < 1e-12
    assert out.slot("leftWrist") == (0.5, 0.5)


def test_arm_rotate_rigid_chain():
    frame = random_sequence(4).frame(0)
    out = rotate_arm_joints(frame, "elbow", "right", 33.0)
    chain = np.concatenate(
        ([schema.SLOT_INDEX["rightWrist"], schema.SLOT_INDEX["rightElbow"]], schema.RIGHT_HAND_INDICES)
    )
    before = frame.coordinates[chain]
    after = out.coordinates[chain]
    d_before = np.linalg.norm(before[:, None] - before[None, :], axis=-1)
    d_after = np.linalg.norm(after[:, None] - after[None, :], axis=-1)
    assert np.abs(d_before - d_after).max() < 1e-9


def test_arm_rotate_proximal_unchanged():
    frame = random_sequence(5).frame(0)
    out = rotate_arm_joints(frame, "wrist", "right", 70.0)
    untouched = [i for i in range(schema.NUM_SLOTS) if i not in set(schema.RIGHT_HAND_INDICES)]
    assert np.array_equal(out.coordinates[untouched], frame.coordinates[untouched])


def test_arm_rotate_absent_pivot_noop():
    slots = {"leftHand_wrist": (0.6, 0.5)}  # no leftWrist pivot
    frame = schema.SkeletalFrame.from_slots(slots)
    assert rotate_arm_joints(frame, "wrist", "left", 90.0) == frame


def test_arm_rotate_unknown_joint():
    frame = random_sequence(6).frame(0)
    with pytest.raises(ValueError):
        rotate_arm_joints(frame, "shoulder", "left", 10.0)


def test_config_validation():
    with pytest.raises(ConfigError):
        augment(random_sequence(7), AugmentationConfig(rotate=RotateParams(1.5, 10.0)), 0)
    with pytest.raises(ConfigError):
        AugmentationConfig(squeeze=SqueezeParams(0.5, 0.5)).validate()
    with pytest.raises(ConfigError):
        AugmentationConfig(perspective=PerspectiveParams(0.5, -0.1)).validate()
    with pytest.raises(ConfigError):
        AugmentationConfig(arm_rotate=ArmRotateParams(0.2, -1.0)).validate()
    AugmentationConfig().validate()


def test_config_file_round_trip(tmp_path):
    cfg = AugmentationConfig(
        rotate=RotateParams(0.25, 17.0),
        squeeze=SqueezeParams(0.75, 0.2),
        perspective=PerspectiveParams(0.1, 0.05),
        arm_rotate=ArmRotateParams(0.9, 2.5),
    )
    path = tmp_path / "aug.cfg"
    cfg.to_file(path)
    assert AugmentationConfig.from_file(path) == cfg


def test_config_file_rejects_unknown_key(tmp_path):
    path = tmp_path / "aug.cfg"
    path.write_text("rotate.probability: 0.5\nblur.sigma: 3\n")
    with pytest.raises(ConfigError, match="unknown"):
        AugmentationConfig.from_file(path)


def test_derive_sample_seed_stable():
    # Frozen values: the per-sample seed must never drift across versions,
    # or training runs stop being reproducible.
    assert derive_sample_seed(0, 0, 0) == derive_sample_seed(0, 0, 0)
    assert derive_sample_seed(1, 2, 3) != derive_sample_seed(1, 2, 4)
    assert derive_sample_seed(1, 2, 3) != derive_sample_seed(1, 3, 3)
    assert derive_sample_seed(1, 2, 3) == 17799450507592347260  # sha256("1:2:3")[:8]
