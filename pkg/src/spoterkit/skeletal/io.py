"""Landmark file formats: one clip per file, text-based.

Two forms share the same header fields (schema_version, fps, label,
source_id) and per-frame payload of 108 coordinates plus 54 presence bits:

* structured (canonical): a single JSON document with a "frames" array;
* tabular: CSV with ``#key: value`` header lines, one frame per row,
  columns ``<slot>_x``, ``<slot>_y`` and ``<slot>_present``.

Coordinates are serialized as decimal text with 9 significant digits, which
round-trips float32-precision values exactly and is stable under repeated
write/read cycles.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from ..errors import FormatError
from . import schema

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def quantize_array(a: np.ndarray) -> np.ndarray:
    """Round coordinates to the on-file 9-significant-digit grid.

    Values of float32 precision (what estimators emit) are unchanged; full
    float64 values round by at most half a grid step (~5e-10 for
    coordinates below 1).
    """
    flat = np.array([float(_fmt(v)) for v in np.asarray(a, dtype=np.float64).ravel()])
    return flat.reshape(np.asarray(a).shape)


def quantize(seq: schema.PoseSequence) -> schema.PoseSequence:
    """Copy of a sequence with all coordinates on the file grid."""
    return seq.with_arrays(quantize_array(seq.coordinates))


def _write_structured(seq: schema.PoseSequence, path: Path) -> None:
    out = _io.StringIO()
    out.write("{\n")
    out.write(f'"schema_version": {SCHEMA_VERSION},\n')
    out.write(f'"fps": {_fmt(seq.fps)},\n')
    out.write(f'"label": {json.dumps(seq.label)},\n')
    out.write(f'"source_id": {json.dumps(seq.source_id)},\n')
    out.write('"frames": [\n')
    for t in range(seq.num_frames):
        points = ", ".join(_fmt(v) for v in seq.coordinates[t].ravel())
        bits = ", ".join("1" if p else "0" for p in seq.present[t])
        tail = "," if t + 1 < seq.num_frames else ""
        out.write(f'{{"points": [{points}], "present": [{bits}]}}{tail}\n')
    out.write("]\n}\n")
    path.write_text(out.getvalue())


def _coordinate_columns() -> list[str]:
    cols = []
    for slot in schema.SLOTS:
        cols.append(f"{slot}_x")
        cols.append(f"{slot}_y")
    return cols


def _write_tabular(seq: schema.PoseSequence, path: Path) -> None:
    out = _io.StringIO()
    out.write(f"#schema_version: {SCHEMA_VERSION}\n")
    out.write(f"#fps: {_fmt(seq.fps)}\n")
    out.write(f"#label: {seq.label if seq.label is not None else ''}\n")
    out.write(f"#source_id: {seq.source_id}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_coordinate_columns() + [f"{s}_present" for s in schema.SLOTS])
    for t in range(seq.num_frames):
        row = [_fmt(v) for v in seq.coordinates[t].ravel()]
        row += ["1" if p else "0" for p in seq.present[t]]
        writer.writerow(row)
    path.write_text(out.getvalue())


def write_sequence(seq: schema.PoseSequence, path: str | Path, form: str = "structured") -> None:
    path = Path(path)
    if form == "structured":
        _write_structured(seq, path)
    elif form == "tabular":
        _write_tabular(seq, path)
    else:
        raise ValueError(f"unknown form {form!r} (expected 'structured' or 'tabular')")


def _frame_from_record(points: list, bits: list, frame_idx: int, where: str) -> schema.SkeletalFrame:
    if len(points) != 2 * schema.NUM_SLOTS:
        raise FormatError(
            f"{where}: frame {frame_idx} has {len(points)} coordinates, expected {2 * schema.NUM_SLOTS}"
        )
    if len(bits) != schema.NUM_SLOTS:
        raise FormatError(
            f"{where}: frame {frame_idx} has {len(bits)} presence bits, expected {schema.NUM_SLOTS}"
        )
    try:
        coords = np.array([float(v) for v in points]).reshape(schema.NUM_SLOTS, 2)
        present = np.array([int(b) for b in bits], dtype=bool)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: frame {frame_idx}: {exc}") from exc
    try:
        return schema.SkeletalFrame(coords, present)
    except ValueError as exc:
        raise FormatError(f"{where}: frame {frame_idx}: {exc}") from exc


def _read_structured(text: str, where: str) -> schema.PoseSequence:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{where}: not valid JSON ({exc})") from exc
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(f"{where}: unsupported schema_version {doc.get('schema_version')!r}")
    for key in ("fps", "source_id", "frames"):
        if key not in doc:
            raise FormatError(f"{where}: missing field {key!r}")
    frames = [
        _frame_from_record(rec.get("points", []), rec.get("present", []), i, where)
        for i, rec in enumerate(doc["frames"])
    ]
    if not frames:
        raise FormatError(f"{where}: no frames")
    label = doc["label"] if "label" in doc else None
    try:
        return schema.PoseSequence.from_frames(
            frames, float(doc["fps"]), label=label, source_id=str(doc["source_id"])
        )
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def _read_tabular(text: str, where: str) -> schema.PoseSequence:
    header: dict[str, str] = {}
    lines = text.splitlines()
    body_start = 0
    for i, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = i
            break
        key, sep, value = line[1:].partition(":")
        if not sep:
            raise FormatError(f"{where}: malformed header line {i + 1}: {line!r}")
        header[key.strip()] = value.strip()
    else:
        raise FormatError(f"{where}: no data rows")
    if header.get("schema_version") != str(SCHEMA_VERSION):
        raise FormatError(f"{where}: unsupported schema_version {header.get('schema_version')!r}")
    if "fps" not in header:
        raise FormatError(f"{where}: missing fps header")

    rows = list(csv.reader(lines[body_start:]))
    if not rows:
        raise FormatError(f"{where}: no column header row")
    expected_cols = _coordinate_columns() + [f"{s}_present" for s in schema.SLOTS]
    if rows[0] != expected_cols:
        raise FormatError(f"{where}: column header does not match the canonical slot order")
    n_coord = 2 * schema.NUM_SLOTS
    frames = []
    for i, row in enumerate(rows[1:]):
        if not row:
            continue
        if len(row) != len(expected_cols):
            raise FormatError(
                f"{where}: frame {i} has {len(row)} columns, expected {len(expected_cols)}"
            )
        frames.append(_frame_from_record(row[:n_coord], row[n_coord:], i, where))
    if not frames:
        raise FormatError(f"{where}: no frames")
    label = header.get("label") or None
    return schema.PoseSequence.from_frames(
        frames, float(header["fps"]), label=label, source_id=header.get("source_id", "")
    )


def parse_sequence(text: str, where: str = "<memory>") -> schema.PoseSequence:
    """Parse landmark-file content in either form (autodetected)."""
    stripped = text.lstrip()
    if not stripped:
        raise FormatError(f"{where}: empty file")
    if stripped.startswith("{"):
        return _read_structured(text, where)
    return _read_tabular(text, where)


def read_sequence(path: str | Path) -> schema.PoseSequence:
    path = Path(path)
    return parse_sequence(path.read_text(), where=str(path))
