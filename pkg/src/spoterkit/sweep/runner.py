"""Random-search sweep with an append-only, resumable trial ledger.

Each trial trains with one sampled AugmentationConfig and scores validation
top-1 macro (never test).  The ledger is line-delimited JSON written record
by record, so an interrupted sweep resumes by skipping completed trial ids;
the resumed run ends with the same best trial as an uninterrupted one.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from ..dataset.cache import LandmarkCache
from ..dataset.index import DatasetIndex, GlossVocabulary
from ..model.checkpoint import Checkpoint
from ..model.config import ModelConfig, TrainConfig
from ..model.metrics import evaluate
from ..model.train import train
from ..preprocess.augment import AugmentationConfig
from .space import SearchSpace, sample_configs

LEDGER_NAME = "ledger.jsonl"


@dataclass(frozen=True)
class TrialRecord:
    trial_id: str
    config: AugmentationConfig
    seed: int
    status: str  # completed | failed
    objective: float | None = None
    wall_clock_s: float = 0.0
    checkpoint_path: str | None = None
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "trial_id": self.trial_id,
            "config": self.config.to_flat(),
            "seed": self.seed,
            "status": self.status,
            "objective": self.objective,
            "wall_clock_s": self.wall_clock_s,
            "checkpoint_path": self.checkpoint_path,
            "error": self.error,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "TrialRecord":
        return cls(
            trial_id=doc["trial_id"],
            config=AugmentationConfig.from_flat(doc["config"]),
            seed=int(doc["seed"]),
            status=doc["status"],
            objective=doc.get("objective"),
            wall_clock_s=float(doc.get("wall_clock_s", 0.0)),
            checkpoint_path=doc.get("checkpoint_path"),
            error=doc.get("error"),
        )


def read_ledger(out_dir: str | Path) -> dict[str, TrialRecord]:
    path = Path(out_dir) / LEDGER_NAME
    records: dict[str, TrialRecord] = {}
    if path.exists():
        for line in path.read_text().splitlines():
            if line.strip():
                record = TrialRecord.from_json(json.loads(line))
                records[record.trial_id] = record
    return records


def _append_record(out_dir: Path, record: TrialRecord) -> None:
    with open(out_dir / LEDGER_NAME, "a") as f:
        f.write(json.dumps(record.to_json()) + "\n")
        f.flush()


def best_trial(records: dict[str, TrialRecord]) -> TrialRecord | None:
    """Max objective among completed trials; ties go to the earlier trial id."""
    best = None
    for trial_id in sorted(records):
        record = records[trial_id]
        if record.status != "completed" or record.objective is None:
            continue
        if best is None or record.objective > best.objective:
            best = record
    return best


def default_train_fn(
    config: AugmentationConfig,
    trial_id: str,
    *,
    index: DatasetIndex,
    vocabulary: GlossVocabulary,
    cache: LandmarkCache,
    model_cfg: ModelConfig,
    base_train_cfg: TrainConfig,
    out_dir: Path,
) -> tuple[float, str]:
    """Train one trial and return (validation top-1 macro, checkpoint path)."""
    train_cfg = dataclasses.replace(base_train_cfg, augmentation=config)
    checkpoint = train(index, vocabulary, cache, model_cfg, train_cfg)
    path = out_dir / f"{trial_id}.ckpt"
    checkpoint.save(path)
    objective = evaluate(checkpoint, index, cache, "validation").top1_macro
    return objective, str(path)


def run_sweep(
    space: SearchSpace,
    n_trials: int,
    *,
    index: DatasetIndex,
    vocabulary: GlossVocabulary,
    cache: LandmarkCache,
    model_cfg: ModelConfig,
    base_train_cfg: TrainConfig,
    out_dir: str | Path,
    sweep_seed: int = 0,
    train_fn: Callable[..., tuple[float, str]] | None = None,
) -> tuple[TrialRecord | None, dict[str, TrialRecord]]:
    """Run (or resume) a sweep; returns (best trial, full ledger).

    Trial configs and seeds are sampled upfront from sweep_seed, so a resumed
    sweep sees exactly the trials an uninterrupted run would have.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    configs = sample_configs(space, n_trials, sweep_seed)
    records = read_ledger(out_dir)

    for i, config in enumerate(configs):
        trial_id = f"trial_{i:04d}"
        if trial_id in records:
            continue
        seed = base_train_cfg.global_seed + i
        start = time.perf_counter()
        try:
            if train_fn is not None:
                objective, ckpt_path = train_fn(config, trial_id, seed=seed)
            else:
                trial_cfg = dataclasses.replace(base_train_cfg, global_seed=seed)
                objective, ckpt_path = default_train_fn(
                    config,
                    trial_id,
                    index=index,
                    vocabulary=vocabulary,
                    cache=cache,
                    model_cfg=model_cfg,
                    base_train_cfg=trial_cfg,
                    out_dir=out_dir,
                )
            record = TrialRecord(
                trial_id=trial_id,
                config=config,
                seed=seed,
                status="completed",
                objective=objective,
                wall_clock_s=time.perf_counter() - start,
                checkpoint_path=ckpt_path,
            )
        except Exception as exc:  # per-trial failures never kill the sweep
            record = TrialRecord(
                trial_id=trial_id,
                config=config,
                seed=seed,
                status="failed",
                wall_clock_s=time.perf_counter() - start,
                error=f"{type(exc).__name__}: {exc}",
            )
        _append_record(out_dir, record)
        records[trial_id] = record

    best = best_trial(records)
    if best is not None:
        (out_dir / "best_trial.json").write_text(json.dumps(best.to_json(), indent=2) + "\n")
    return best, records
