"""WLASL-style dataset index: per-gloss entries with per-instance splits.

The index file is a JSON list of ``{"gloss": str, "instances": [{"video_id":
str, "split": "train"|"val"|"test", ...}]}`` objects.  Splits are taken
verbatim from the file and never re-randomized; the class subset is the
first ``subset_size`` glosses in the file's own order.  Unknown extra fields
are tolerated.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import FormatError, MissingSplitError

SPLITS = ("train", "validation", "test")
_SPLIT_ALIASES = {"train": "train", "val": "validation", "validation": "validation", "test": "test"}


@dataclass(frozen=True)
class GlossVocabulary:
    glosses: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.glosses)) != len(self.glosses):
            raise FormatError("vocabulary glosses must be unique")

    def __len__(self) -> int:
        return len(self.glosses)

    def __iter__(self):
        return iter(self.glosses)

    def index_of(self, gloss: str) -> int:
        try:
            return self.glosses.index(gloss)
        except ValueError:
            raise KeyError(gloss) from None

    def gloss_of(self, index: int) -> str:
        return self.glosses[index]

    def __contains__(self, gloss: str) -> bool:
        return gloss in self.glosses


@dataclass(frozen=True)
class IndexEntry:
    source_id: str
    gloss: str
    split: str
    video_file: str | None = None


@dataclass(frozen=True)
class DatasetIndex:
    entries: tuple[IndexEntry, ...]
    provenance_path: str
    provenance_digest: str

    def split(self, name: str) -> tuple[IndexEntry, ...]:
        if name not in SPLITS:
            raise ValueError(f"unknown split {name!r}, expected one of {SPLITS}")
        return tuple(e for e in self.entries if e.split == name)

    def split_sizes(self) -> dict[str, int]:
        return {s: len(self.split(s)) for s in SPLITS}


def load_index(index_path: str | Path, subset_size: int = 100) -> tuple[DatasetIndex, GlossVocabulary]:
    """Parse an index file restricted to its first ``subset_size`` glosses."""
    path = Path(index_path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, list):
        raise FormatError(f"{path}: expected a top-level list of gloss entries")

    glosses: list[str] = []
    entries: list[IndexEntry] = []
    seen_ids: set[str] = set()
    for gi, gloss_entry in enumerate(doc):
        if not isinstance(gloss_entry, dict) or "gloss" not in gloss_entry:
            raise FormatError(f"{path}: gloss entry {gi} lacks a 'gloss' field")
        gloss = str(gloss_entry["gloss"])
        if not gloss:
            raise FormatError(f"{path}: gloss entry {gi} has an empty gloss")
        if gloss in glosses:
            raise FormatError(f"{path}: duplicate gloss {gloss!r}")
        if len(glosses) >= subset_size:
            break
        glosses.append(gloss)
        instances = gloss_entry.get("instances", [])
        if not isinstance(instances, list):
            raise FormatError(f"{path}: gloss {gloss!r} 'instances' is not a list")
        for ii, inst in enumerate(instances):
            if not isinstance(inst, dict):
                raise FormatError(f"{path}: gloss {gloss!r} instance {ii} is not an object")
            source_id = inst.get("video_id") or inst.get("source_id")
            if not source_id:
                raise FormatError(f"{path}: gloss {gloss!r} instance {ii} lacks a video_id")
            source_id = str(source_id)
            if source_id in seen_ids:
                raise FormatError(f"{path}: duplicate source id {source_id!r}")
            seen_ids.add(source_id)
            inst_gloss = inst.get("gloss")
            if inst_gloss is not None and str(inst_gloss) != gloss:
                raise FormatError(
                    f"{path}: instance {source_id!r} references unknown gloss {inst_gloss!r}"
                )
            if "split" not in inst or inst["split"] in (None, ""):
                raise MissingSplitError(f"{path}: instance {source_id!r} lacks a split tag")
            split_raw = str(inst["split"])
            if split_raw not in _SPLIT_ALIASES:
                raise FormatError(
                    f"{path}: instance {source_id!r} has unknown split {split_raw!r}"
                )
            video = inst.get("video_file") or inst.get("url")
            entries.append(
                IndexEntry(
                    source_id=source_id,
                    gloss=gloss,
                    split=_SPLIT_ALIASES[split_raw],
                    video_file=str(video) if video else None,
                )
            )

    digest = hashlib.sha256(text.encode()).hexdigest()[:12]
    index = DatasetIndex(tuple(entries), provenance_path=str(path), provenance_digest=digest)
    return index, GlossVocabulary(tuple(glosses))
