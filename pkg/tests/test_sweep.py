import pytest

from spoterkit.errors import SpaceError
from spoterkit.sweep import SearchSpace, best_trial, read_ledger, run_sweep, sample_configs

SPACE_TEXT = """
rotate.probability: fixed: 0.5
rotate.max_degrees: range: 0 20
squeeze.max_ratio: range: 0 0.2
perspective.max_ratio: choice: 0.05 0.1 0.15
arm_rotate.max_degrees: range: 0 8
"""


def test_space_parsing_and_sampling_bounds():
    space = SearchSpace.from_text(SPACE_TEXT)
    configs = sample_configs(space, 50, sweep_seed=1)
    assert len(configs) == 50
    for cfg in configs:
        assert cfg.rotate.probability == 0.5
        assert 0 <= cfg.rotate.max_degrees <= 20
        assert 0 <= cfg.squeeze.max_ratio <= 0.2
        assert cfg.perspective.max_ratio in (0.05, 0.1, 0.15)
        assert 0 <= cfg.arm_rotate.max_degrees <= 8
        # unlisted keys stay at their defaults
        assert cfg.squeeze.probability == 0.5


def test_degenerate_all_fixed_space():
    text = "\n".join(
        f"{k}: fixed: 0.1"
        for k in (
            "rotate.probability",
            "rotate.max_degrees",
            "squeeze.probability",
            "squeeze.max_ratio",
            "perspective.probability",
            "perspective.max_ratio",
            "arm_rotate.probability",
            "arm_rotate.max_degrees",
        )
    )
    configs = sample_configs(SearchSpace.from_text(text), 3, sweep_seed=0)
    assert configs[0] == configs[1] == configs[2]


def test_sampling_deterministic():
    space = SearchSpace.from_text(SPACE_TEXT)
    assert sample_configs(space, 10, 42) == sample_configs(space, 10, 42)
    assert sample_configs(space, 10, 42) != sample_configs(space, 10, 43)


def test_space_errors():
    with pytest.raises(SpaceError, match="unknown search-space key"):
        SearchSpace.from_text("blur.sigma: fixed: 1")
    with pytest.raises(SpaceError, match="domain"):
        SearchSpace.from_text("rotate.probability: range: 0 2")
    with pytest.raises(SpaceError, match="lo <= hi"):
        SearchSpace.from_text("rotate.max_degrees: range: 5 1")
    with pytest.raises(SpaceError, match="marker"):
        SearchSpace.from_text("rotate.max_degrees: 5")
    with pytest.raises(SpaceError):
        sample_configs(SearchSpace.from_text(SPACE_TEXT), 0, 0)
    with pytest.raises(SpaceError, match="domain"):
        SearchSpace.from_text("squeeze.max_ratio: fixed: 0.5")  # open upper bound


def make_stub_train_fn(objectives, calls):
    def train_fn(config, trial_id, seed):
        calls.append(trial_id)
        value = objectives[int(trial_id.split("_")[1])]
        if value is None:
            raise RuntimeError("synthetic trial failure")
        return value, f"/fake/{trial_id}.ckpt"

    return train_fn


def run_stub_sweep(tmp_path, objectives, n, calls=None, seed=0):
    calls = calls if calls is not None else []
    space = SearchSpace.from_text(SPACE_TEXT)
    best, records = run_sweep(
        space,
        n,
        index=None,
        vocabulary=None,
        cache=None,
        model_cfg=None,
        base_train_cfg=_dummy_train_cfg(),
        out_dir=tmp_path,
        sweep_seed=seed,
        train_fn=make_stub_train_fn(objectives, calls),
    )
    return best, records, calls


def _dummy_train_cfg():
    from spoterkit.model import TrainConfig

    return TrainConfig(epochs=1)


def test_best_trial_is_argmax(tmp_path):
    best, records, _ = run_stub_sweep(tmp_path, [0.4, 0.7], 2)
    assert best.trial_id == "trial_0001"
    assert best.objective == 0.7
    assert len(records) == 2


def test_single_trial_is_best(tmp_path):
    best, records, _ = run_stub_sweep(tmp_path, [0.3], 1)
    assert best.trial_id == "trial_0000"


def test_tie_breaks_to_earlier_trial(tmp_path):
    best, _, _ = run_stub_sweep(tmp_path, [0.5, 0.5, 0.2], 3)
    assert best.trial_id == "trial_0000"


def test_failed_trial_recorded_and_sweep_continues(tmp_path):
    best, records, _ = run_stub_sweep(tmp_path, [0.2, None, 0.6], 3)
    assert records["trial_0001"].status == "failed"
    assert "synthetic" in records["trial_0001"].error
    assert best.trial_id == "trial_0002"


def test_resume_skips_completed_trials(tmp_path):
    # First pass: only 3 of 5 trials run (simulated interruption).
    calls: list[str] = []
    run_stub_sweep(tmp_path, [0.1, 0.9, 0.3], 3, calls)
    assert calls == ["trial_0000", "trial_0001", "trial_0002"]

    # Resume with the full budget: completed trials are not rerun.
    calls2: list[str] = []
    best, records, _ = run_stub_sweep(tmp_path, [0.1, 0.9, 0.3, 0.2, 0.5], 5, calls2)
    assert calls2 == ["trial_0003", "trial_0004"]
    assert len(records) == 5
    assert best.trial_id == "trial_0001"

    # Equivalent to an uninterrupted run with the same seeds.
    fresh_best, fresh_records, _ = run_stub_sweep(
        tmp_path / "fresh", [0.1, 0.9, 0.3, 0.2, 0.5], 5
    )
    assert fresh_best.trial_id == best.trial_id
    assert [r.config for r in fresh_records.values()] == [r.config for r in records.values()]


def test_ledger_round_trip(tmp_path):
    _, records, _ = run_stub_sweep(tmp_path, [0.4, None], 2)
    reread = read_ledger(tmp_path)
    assert set(reread) == set(records)
    assert reread["trial_0000"].objective == 0.4
    assert reread["trial_0001"].status == "failed"
    assert best_trial(reread).trial_id == "trial_0000"
