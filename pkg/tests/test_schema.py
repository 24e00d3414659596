import numpy as np
import pytest

from spoterkit.skeletal import schema


def test_slot_count_and_partition():
    assert schema.NUM_SLOTS == 54
    assert len(schema.BODY_SLOTS) == 12
    assert len(schema.LEFT_HAND_SLOTS) == 21
    assert len(schema.RIGHT_HAND_SLOTS) == 21
    assert schema.SLOTS == schema.BODY_SLOTS + schema.LEFT_HAND_SLOTS + schema.RIGHT_HAND_SLOTS


def test_slot_names_unique():
    assert len(set(schema.SLOTS)) == 54


def test_exactly_five_head_slots_in_body():
    assert len(schema.HEAD_SLOTS) == 5
    assert set(schema.HEAD_SLOTS) <= set(schema.BODY_SLOTS)


def test_groups_total_and_disjoint():
    all_grouped = [s for group in schema.GROUPS.values() for s in group]
    assert sorted(all_grouped) == sorted(schema.SLOTS)
    assert len(all_grouped) == len(set(all_grouped))


def test_frame_from_slots():
    frame = schema.SkeletalFrame.from_slots({"nose": (0.5, 0.2), "leftWrist": (0.4, 0.6)})
    assert frame.slot("nose") == (0.5, 0.2)
    assert frame.is_present("nose")
    assert not frame.is_present("neck")
    assert frame.slot("neck") == (0.0, 0.0)


def test_frame_rejects_bad_shapes():
    with pytest.raises(ValueError):
        schema.SkeletalFrame(np.zeros((53, 2)), np.zeros(53, dtype=bool))
    with pytest.raises(ValueError):
        schema.SkeletalFrame(np.zeros((54, 3)), np.zeros(54, dtype=bool))


def test_frame_rejects_sentinel_violation():
    coords = np.zeros((54, 2))
    coords[3] = (0.1, 0.1)
    with pytest.raises(ValueError, match="sentinel"):
        schema.SkeletalFrame(coords, np.zeros(54, dtype=bool))


def test_frame_rejects_non_finite():
    coords = np.zeros((54, 2))
    coords[0] = (np.nan, 0.5)
    present = np.zeros(54, dtype=bool)
    present[0] = True
    with pytest.raises(ValueError, match="finite"):
        schema.SkeletalFrame(coords, present)


def test_frame_arrays_immutable():
    frame = schema.SkeletalFrame.from_slots({"nose": (0.5, 0.2)})
    with pytest.raises(ValueError):
        frame.coordinates[0, 0] = 1.0


def test_sequence_requires_frames():
    with pytest.raises(ValueError):
        schema.PoseSequence.from_frames([], fps=25.0)
    with pytest.raises(ValueError):
        schema.PoseSequence(np.zeros((0, 54, 2)), np.zeros((0, 54), dtype=bool), fps=25.0)


def test_sequence_requires_positive_fps():
    frame = schema.SkeletalFrame.from_slots({})
    with pytest.raises(ValueError, match="fps"):
        schema.PoseSequence.from_frames([frame], fps=0.0)


def test_sequence_frame_round_trip():
    frames = [
        schema.SkeletalFrame.from_slots({"nose": (0.5, 0.2)}),
        schema.SkeletalFrame.from_slots({"leftWrist": (0.3, 0.7)}),
    ]
    seq = schema.PoseSequence.from_frames(frames, fps=25.0, label="hi", source_id="s")
    assert seq.num_frames == 2
    assert tuple(seq.frames) == tuple(frames)
    assert seq.frame(1) == frames[1]


def test_sequence_equality_includes_metadata():
    frame = schema.SkeletalFrame.from_slots({"nose": (0.5, 0.2)})
    a = schema.PoseSequence.from_frames([frame], fps=25.0, label="x", source_id="1")
    b = schema.PoseSequence.from_frames([frame], fps=25.0, label="x", source_id="1")
    c = schema.PoseSequence.from_frames([frame], fps=30.0, label="x", source_id="1")
    assert a == b
    assert a != c
