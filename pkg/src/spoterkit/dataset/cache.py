"""On-disk landmark cache and split iteration.

Cache layout: ``<root>/<key>/<source_id>.landmarks`` where the key digests
the landmark map together with the estimator version, so a cache hit is
bit-identical to a fresh extraction with the same estimator.  Writes go
through a temp file + rename, so parallel materialization stays safe.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from ..errors import CacheMissError, EstimatorUnavailableError, SpoterKitError
from ..skeletal import io as skio
from ..skeletal.estimators import EstimatorAdapter, extract_landmarks
from ..skeletal.landmark_map import LandmarkMap
from ..skeletal.schema import PoseSequence
from .index import DatasetIndex, GlossVocabulary, IndexEntry

VIDEO_EXTENSIONS = (".mp4", ".avi", ".mov", ".mkv", ".webm")


def cache_key(landmark_map: LandmarkMap, estimator_version: str) -> str:
    blob = f"{landmark_map.digest()}:{estimator_version}".encode()
    return hashlib.sha256(blob).hexdigest()[:12]


@dataclass(frozen=True)
class LandmarkCache:
    root: Path
    key: str

    @classmethod
    def create(
        cls, root: str | Path, landmark_map: LandmarkMap, estimator_version: str = "pre-extracted"
    ) -> "LandmarkCache":
        return cls(Path(root), cache_key(landmark_map, estimator_version))

    @classmethod
    def open(cls, root: str | Path, key: str | None = None) -> "LandmarkCache":
        """Open an existing cache directory, auto-discovering a lone key."""
        root = Path(root)
        if key is not None:
            return cls(root, key)
        keys = sorted(p.name for p in root.iterdir() if p.is_dir()) if root.is_dir() else []
        if len(keys) != 1:
            raise CacheMissError(
                f"{root}: expected exactly one cache key directory, found {keys}; pass the key explicitly"
            )
        return cls(root, keys[0])

    @property
    def directory(self) -> Path:
        return self.root / self.key

    def path_for(self, source_id: str) -> Path:
        return self.directory / f"{source_id}.landmarks"

    def has(self, source_id: str) -> bool:
        return self.path_for(source_id).exists()

    def load(self, source_id: str) -> PoseSequence:
        path = self.path_for(source_id)
        if not path.exists():
            raise CacheMissError(f"no cached landmarks for {source_id!r} ({path})")
        return skio.read_sequence(path)

    def store(self, source_id: str, seq: PoseSequence) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        final = self.path_for(source_id)
        tmp = final.with_suffix(".tmp")
        skio.write_sequence(seq, tmp)
        os.replace(tmp, final)


@dataclass
class MaterializationReport:
    extracted: int = 0
    cached: int = 0
    missing: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    def record_failure(self, source_id: str, reason: str) -> None:
        self.missing += 1
        self.failures.append((source_id, reason))


def find_video(videos_dir: str | Path | None, entry: IndexEntry) -> Path | None:
    if videos_dir is None:
        return None
    base = Path(videos_dir)
    if entry.video_file:
        candidate = base / entry.video_file
        if candidate.exists():
            return candidate
    for ext in VIDEO_EXTENSIONS:
        candidate = base / f"{entry.source_id}{ext}"
        if candidate.exists():
            return candidate
    return None


def materialize(
    index: DatasetIndex,
    cache: LandmarkCache,
    estimator: EstimatorAdapter | None = None,
    videos_dir: str | Path | None = None,
) -> MaterializationReport:
    """Ensure every index entry has a cached landmark file.

    Missing videos and extraction failures are reported per entry, never
    fatal.  Re-running after success is a no-op (idempotent).
    """
    report = MaterializationReport()
    for entry in index.entries:
        if cache.has(entry.source_id):
            report.cached += 1
            continue
        video = find_video(videos_dir, entry)
        if video is None:
            report.record_failure(entry.source_id, "video not found")
            continue
        if estimator is None:
            report.record_failure(entry.source_id, "no estimator available")
            continue
        try:
            seq = extract_landmarks(video, estimator, label=entry.gloss, source_id=entry.source_id)
        except (SpoterKitError, EstimatorUnavailableError) as exc:
            report.record_failure(entry.source_id, str(exc))
            continue
        cache.store(entry.source_id, seq)
        report.extracted += 1
    return report


def shuffle_order(n: int, shuffle_seed: int, epoch: int) -> np.ndarray:
    blob = f"{shuffle_seed}:{epoch}".encode()
    seed = int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")
    return np.random.default_rng(seed).permutation(n)


def iterate_split(
    index: DatasetIndex,
    vocabulary: GlossVocabulary,
    cache: LandmarkCache,
    split: str,
    shuffle_seed: int | None = None,
    epoch: int = 0,
) -> Iterator[tuple[PoseSequence, int]]:
    """Yield each (sequence, gloss index) of a split exactly once.

    With shuffle_seed=None the index order is kept (evaluation); otherwise
    the order is a pure function of (shuffle_seed, epoch).  Augmentation is
    deliberately not applied here: it lives in the training loop.
    """
    entries = index.split(split)
    order = range(len(entries))
    if shuffle_seed is not None:
        order = shuffle_order(len(entries), shuffle_seed, epoch)
    for i in order:
        entry = entries[i]
        yield cache.load(entry.source_id), vocabulary.index_of(entry.gloss)
