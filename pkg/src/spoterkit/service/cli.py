"""Unified command-line entry point for the toolkit."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..configio import read_kv_file
from ..dataset.cache import LandmarkCache, iterate_split, materialize
from ..dataset.index import load_index
from ..errors import SpoterKitError
from ..model.checkpoint import Checkpoint
from ..model.config import parse_train_file
from ..model.bench import benchmark_inference
from ..model.metrics import evaluate
from ..model.train import train
from ..preprocess.normalize import drop_empty_frames, normalize_sequence
from ..skeletal import io as skio
from ..skeletal.convert import convert_sequence, read_raw_dump
from ..skeletal.estimators import MediaPipeHolisticAdapter, extract_landmarks
from ..skeletal.landmark_map import LandmarkMap, default_mediapipe_map
from ..sweep.runner import run_sweep
from ..sweep.space import SearchSpace


def _load_map(path: str | None) -> LandmarkMap:
    return LandmarkMap.from_file(path) if path else default_mediapipe_map()


def _open_cache(args) -> LandmarkCache:
    return LandmarkCache.open(args.cache, key=getattr(args, "cache_key", None))


def cmd_extract(args) -> int:
    estimator = MediaPipeHolisticAdapter(landmark_map=_load_map(args.map))
    seq = extract_landmarks(args.video, estimator)
    skio.write_sequence(seq, args.out)
    print(f"wrote {seq.num_frames} frames at {seq.fps:g} fps to {args.out}")
    return 0


def cmd_convert(args) -> int:
    lmap = _load_map(args.map)
    raw_frames, fps, source_id, label = read_raw_dump(args.rawdump)
    seq = convert_sequence(raw_frames, fps, lmap, label=label, source_id=source_id)
    skio.write_sequence(seq, args.out)
    print(f"wrote {seq.num_frames} frames to {args.out}")
    return 0


def cmd_preprocess_normalize(args) -> int:
    seq = skio.read_sequence(args.input)
    if args.drop_empty:
        seq = drop_empty_frames(seq)
    normalized, report = normalize_sequence(seq)
    skio.write_sequence(normalized, args.out)
    print(f"body_scale_used: {report.body_scale_used:g}")
    print(f"degenerate: {report.degenerate}")
    print(f"wrote {args.out}")
    return 0


def cmd_dataset_materialize(args) -> int:
    index, _ = load_index(args.index, subset_size=args.subset_size)
    lmap = _load_map(args.map)
    try:
        estimator = MediaPipeHolisticAdapter(landmark_map=lmap)
        cache = LandmarkCache.create(args.cache, lmap, estimator_version=estimator.version)
    except SpoterKitError as exc:
        print(f"estimator unavailable ({exc}); relying on the existing cache", file=sys.stderr)
        estimator = None
        try:
            cache = LandmarkCache.open(args.cache)
        except SpoterKitError:
            cache = LandmarkCache.create(args.cache, lmap, estimator_version="pre-extracted")
    report = materialize(index, cache, estimator=estimator, videos_dir=args.videos)
    print(f"extracted: {report.extracted}  cached: {report.cached}  missing: {report.missing}")
    for source_id, reason in report.failures:
        print(f"  missing {source_id}: {reason}")
    return 0 if report.missing == 0 else 1


def cmd_dataset_stats(args) -> int:
    index, vocab = load_index(args.index, subset_size=args.subset_size)
    print(f"glosses: {len(vocab)}")
    for split, count in index.split_sizes().items():
        print(f"{split}: {count} clips")
    return 0


def cmd_train(args) -> int:
    index, vocab = load_index(args.index, subset_size=args.subset_size)
    cache = _open_cache(args)
    model_cfg, train_cfg = parse_train_file(read_kv_file(args.config), len(vocab), where=args.config)
    checkpoint = train(index, vocab, cache, model_cfg, train_cfg)
    checkpoint.save(args.out)
    last = checkpoint.metrics_history[-1] if checkpoint.metrics_history else {}
    print(f"saved {args.out} (model_id {checkpoint.model_id})")
    print(f"final epoch: {json.dumps(last)}")
    return 0


def cmd_evaluate(args) -> int:
    checkpoint = Checkpoint.load(args.ckpt)
    index, _ = load_index(args.index, subset_size=args.subset_size)
    cache = _open_cache(args)
    result = evaluate(checkpoint, index, cache, args.split)
    print(f"top1_macro: {result.top1_macro:.4f}")
    print(f"top1_micro: {result.top1_micro:.4f}")
    print(f"top5_micro: {result.top5_micro:.4f}")
    print(f"samples: {result.num_samples}")
    return 0


def cmd_bench(args) -> int:
    checkpoint = Checkpoint.load(args.ckpt)
    lengths = [int(tok) for tok in args.lengths.split(",") if tok]
    report = benchmark_inference(checkpoint, lengths, repetitions=args.reps, warmup=args.warmup)
    print(json.dumps(report.to_json(), indent=2))
    return 0


def cmd_sweep(args) -> int:
    index, vocab = load_index(args.index, subset_size=args.subset_size)
    cache = _open_cache(args)
    space = SearchSpace.from_file(args.space)
    model_cfg, base_train_cfg = parse_train_file(
        read_kv_file(args.config), len(vocab), where=args.config
    )
    best, records = run_sweep(
        space,
        args.trials,
        index=index,
        vocabulary=vocab,
        cache=cache,
        model_cfg=model_cfg,
        base_train_cfg=base_train_cfg,
        out_dir=args.out,
        sweep_seed=args.seed,
    )
    completed = sum(1 for r in records.values() if r.status == "completed")
    print(f"trials completed: {completed}/{len(records)}")
    if best is not None:
        print(f"best: {best.trial_id} objective {best.objective:.4f} ({best.checkpoint_path})")
    return 0


def resolve_serve_options(
    ckpt_flag: str | None, port_flag: int | None, env: dict[str, str]
) -> tuple[str | None, int]:
    """Flags win; SPOTERKIT_CKPT / SPOTERKIT_PORT are the fallbacks."""
    ckpt = ckpt_flag or env.get("SPOTERKIT_CKPT") or None
    port = port_flag if port_flag is not None else int(env.get("SPOTERKIT_PORT", "8000"))
    return ckpt, port


def cmd_serve(args) -> int:
    import uvicorn

    from .app import DEFAULT_ALLOW_ORIGINS, create_app

    ckpt_path, port = resolve_serve_options(args.ckpt, args.port, dict(os.environ))
    if not ckpt_path:
        print("no checkpoint: pass --ckpt or set SPOTERKIT_CKPT", file=sys.stderr)
        return 2
    checkpoint = Checkpoint.load(ckpt_path)
    estimator = None
    try:
        estimator = MediaPipeHolisticAdapter()
    except SpoterKitError as exc:
        print(f"video requests disabled ({exc}); landmark requests still work", file=sys.stderr)
    origins = tuple(args.allow_origin) if args.allow_origin else DEFAULT_ALLOW_ORIGINS
    app = create_app(checkpoint, estimator=estimator, allow_origins=origins)
    uvicorn.run(app, host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spoterkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="run the pose estimator over a video")
    p.add_argument("video")
    p.add_argument("--out", required=True)
    p.add_argument("--map", default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("convert", help="canonicalize a raw estimator dump")
    p.add_argument("rawdump")
    p.add_argument("--map", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("preprocess", help="offline preprocessing")
    psub = p.add_subparsers(dest="subcommand", required=True)
    pn = psub.add_parser("normalize", help="normalize a landmark file")
    pn.add_argument("input")
    pn.add_argument("--out", required=True)
    pn.add_argument("--drop-empty", action="store_true",
                    help="drop frames with zero detected landmarks first (default: keep)")
    pn.set_defaults(func=cmd_preprocess_normalize)

    p = sub.add_parser("dataset", help="dataset ingestion")
    dsub = p.add_subparsers(dest="subcommand", required=True)
    dm = dsub.add_parser("materialize", help="extract and cache landmarks for an index")
    dm.add_argument("--index", required=True)
    dm.add_argument("--videos", default=None)
    dm.add_argument("--cache", required=True)
    dm.add_argument("--map", default=None)
    dm.add_argument("--subset-size", type=int, default=100)
    dm.set_defaults(func=cmd_dataset_materialize)
    ds = dsub.add_parser("stats", help="summarize an index")
    ds.add_argument("--index", required=True)
    ds.add_argument("--subset-size", type=int, default=100)
    ds.set_defaults(func=cmd_dataset_stats)

    p = sub.add_parser("train", help="train a classifier")
    p.add_argument("--index", required=True)
    p.add_argument("--cache", required=True)
    p.add_argument("--cache-key", default=None)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--subset-size", type=int, default=100)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="evaluate a checkpoint on a split")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--cache", required=True)
    p.add_argument("--cache-key", default=None)
    p.add_argument("--split", default="test", choices=("train", "validation", "test"))
    p.add_argument("--subset-size", type=int, default=100)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="measure single-threaded inference latency")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--lengths", default="50,100,200")
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--warmup", type=int, default=5)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep", help="random search over augmentation parameters")
    p.add_argument("--space", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--cache", required=True)
    p.add_argument("--cache-key", default=None)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subset-size", type=int, default=100)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP inference service")
    p.add_argument("--ckpt", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--allow-origin", action="append", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpoterKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
