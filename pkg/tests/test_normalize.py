import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from spoterkit.preprocess import drop_empty_frames, normalize_sequence
from spoterkit.skeletal import schema


def random_sequence(seed: int, frames: int = 6) -> schema.PoseSequence:
    rng = np.random.default_rng(seed)
    coords = rng.uniform(0.05, 0.95, (frames, schema.NUM_SLOTS, 2))
    present = np.ones((frames, schema.NUM_SLOTS), dtype=bool)
    return schema.PoseSequence(coords, present, fps=25.0)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(0, 10_000),
    st.floats(-5.0, 5.0, allow_nan=False),
    st.floats(-5.0, 5.0, allow_nan=False),
    st.floats(0.05, 20.0, allow_nan=False),
)
def test_similarity_invariance(seed, tx, ty, k):
    seq = random_sequence(seed)
    base, _ = normalize_sequence(seq)
    moved = seq.with_arrays(seq.coordinates * k + np.array([tx, ty]))
    other, _ = normalize_sequence(moved)
    assert np.abs(base.coordinates - other.coordinates).max() < 1e-7


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_idempotence(seed):
    seq = random_sequence(seed)
    once, _ = normalize_sequence(seq)
    twice, _ = normalize_sequence(once)
    assert np.abs(once.coordinates - twice.coordinates).max() < 1e-9


def test_all_absent_passes_through_flagged():
    zeros = schema.PoseSequence(
        np.zeros((4, schema.NUM_SLOTS, 2)), np.zeros((4, schema.NUM_SLOTS), dtype=bool), fps=25.0
    )
    out, report = normalize_sequence(zeros)
    assert np.array_equal(out.coordinates, zeros.coordinates)
    assert report.degenerate == {"body": True, "left_hand": True, "right_hand": True}
    assert report.body_scale_used == 1.0


def test_presence_preserved():
    rng = np.random.default_rng(9)
    coords = rng.uniform(0.1, 0.9, (5, schema.NUM_SLOTS, 2))
    present = rng.random((5, schema.NUM_SLOTS)) < 0.7
    coords[~present] = 0.0
    seq = schema.PoseSequence(coords, present, fps=25.0)
    out, _ = normalize_sequence(seq)
    assert np.array_equal(out.present, present)
    assert (out.coordinates[~present] == 0.0).all()


def test_mean_neck_maps_to_canonical_anchor():
    seq = random_sequence(17)
    out, report = normalize_sequence(seq)
    neck = out.coordinates[:, schema.SLOT_INDEX["neck"]]
    assert np.abs(neck.mean(axis=0) - np.array([0.5, 0.5])).max() < 1e-9
    assert report.body_scale_used > 0


def test_mean_shoulder_distance_maps_to_one():
    seq = random_sequence(23)
    out, _ = normalize_sequence(seq)
    ls = out.coordinates[:, schema.SLOT_INDEX["leftShoulder"]]
    rs = out.coordinates[:, schema.SLOT_INDEX["rightShoulder"]]
    assert abs(np.linalg.norm(ls - rs, axis=1).mean() - 1.0) < 1e-9


def test_hands_map_into_unit_box():
    seq = random_sequence(31)
    out, report = normalize_sequence(seq)
    for indices in (schema.LEFT_HAND_INDICES, schema.RIGHT_HAND_INDICES):
        pts = out.coordinates[:, indices].reshape(-1, 2)
        assert pts.min() >= -1e-12
        assert pts.max() <= 1.0 + 1e-12
        # The longer side spans exactly [0, 1].
        spans = pts.max(axis=0) - pts.min(axis=0)
        assert abs(spans.max() - 1.0) < 1e-9
    assert report.hand_boxes["left"] is not None


def test_scale_fallback_when_shoulders_mostly_absent():
    rng = np.random.default_rng(41)
    frames = 6
    coords = rng.uniform(0.1, 0.9, (frames, schema.NUM_SLOTS, 2))
    present = np.ones((frames, schema.NUM_SLOTS), dtype=bool)
    for slot in ("leftShoulder", "rightShoulder"):
        present[:, schema.SLOT_INDEX[slot]] = False
        coords[:, schema.SLOT_INDEX[slot]] = 0.0
    seq = schema.PoseSequence(coords, present, fps=25.0)
    out, report = normalize_sequence(seq)
    assert not report.degenerate["body"]  # head-to-neck fallback still works
    nose = out.coordinates[:, schema.SLOT_INDEX["nose"]]
    neck = out.coordinates[:, schema.SLOT_INDEX["neck"]]
    assert abs(np.linalg.norm(nose - neck, axis=1).mean() - 1.0) < 1e-9


def test_drop_empty_frames_is_opt_in():
    rng = np.random.default_rng(55)
    coords = rng.uniform(0.1, 0.9, (5, schema.NUM_SLOTS, 2))
    present = np.ones((5, schema.NUM_SLOTS), dtype=bool)
    present[1] = present[3] = False
    coords[~present] = 0.0
    seq = schema.PoseSequence(coords, present, fps=25.0)

    dropped = drop_empty_frames(seq)
    assert dropped.num_frames == 3
    assert np.array_equal(dropped.coordinates, coords[[0, 2, 4]])
    # the default pipeline keeps empty frames
    out, _ = normalize_sequence(seq)
    assert out.num_frames == 5


def test_drop_empty_frames_all_empty_passthrough():
    zeros = schema.PoseSequence(
        np.zeros((3, schema.NUM_SLOTS, 2)), np.zeros((3, schema.NUM_SLOTS), dtype=bool), fps=25.0
    )
    assert drop_empty_frames(zeros) == zeros


def test_degenerate_body_scale_translates_only():
    # A single body point: no scale reference exists, but the anchor does.
    coords = np.zeros((3, schema.NUM_SLOTS, 2))
    present = np.zeros((3, schema.NUM_SLOTS), dtype=bool)
    nose = schema.SLOT_INDEX["nose"]
    coords[:, nose] = (0.2, 0.3)
    present[:, nose] = True
    seq = schema.PoseSequence(coords, present, fps=25.0)
    out, report = normalize_sequence(seq)
    assert report.degenerate["body"]
    assert report.body_scale_used == 1.0
    assert np.abs(out.coordinates[:, nose] - np.array([0.5, 0.5])).max() < 1e-12
