#!/usr/bin/env python3
"""End-to-end desk-scale experiment on the synthetic fixture dataset:
generate data, train, evaluate every split, and benchmark inference.

Usage: python scripts/run_fixture_experiment.py [workdir]
"""

import argparse
import sys
from pathlib import Path

from spoterkit.dataset import make_fixture_dataset
from spoterkit.model import (
    ModelConfig,
    TrainConfig,
    benchmark_inference,
    evaluate,
    train,
)
from spoterkit.preprocess import AugmentationConfig


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("workdir", nargs="?", default="fixture_run")
    parser.add_argument("--epochs", type=int, default=20)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    workdir = Path(args.workdir)
    print("== generating fixture dataset")
    _, cache, index, vocab = make_fixture_dataset(workdir / "data")

    model_cfg = ModelConfig(
        num_classes=len(vocab),
        encoder_layers=2,
        decoder_layers=2,
        attention_heads=4,
        feedforward_dim=256,
        dropout=0.1,
        max_positions=64,
    )
    train_cfg = TrainConfig(
        epochs=args.epochs,
        learning_rate=0.01,
        global_seed=args.seed,
        augmentation=AugmentationConfig(),
        model_selection="best_val_top1",
    )

    print(f"== training {args.epochs} epochs (seed {args.seed})")
    checkpoint = train(index, vocab, cache, model_cfg, train_cfg)
    ckpt_path = workdir / "fixture.ckpt"
    checkpoint.save(ckpt_path)
    print(f"checkpoint: {ckpt_path} (model_id {checkpoint.model_id})")

    for split in ("train", "validation", "test"):
        result = evaluate(checkpoint, index, cache, split)
        print(
            f"{split:>10}: top1_macro {result.top1_macro:.3f}  "
            f"top1_micro {result.top1_micro:.3f}  top5_micro {result.top5_micro:.3f}"
        )

    print("== latency benchmark (single-threaded)")
    report = benchmark_inference(checkpoint, [25, 50, 100], repetitions=10, warmup=3)
    print(f"parameters: {report.parameter_count:,}")
    for length, cell in report.cells.items():
        print(f"  {length:>4} frames: median {cell['median_ms']:.2f} ms  p95 {cell['p95_ms']:.2f} ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
