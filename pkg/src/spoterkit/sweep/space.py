"""Search space over the augmentation parameters.

A space file uses the AugmentationConfig key names with a marker per line:

    rotate.probability: fixed: 0.5
    rotate.max_degrees: range: 0 20
    squeeze.max_ratio: choice: 0.1 0.15 0.2

Unlisted keys stay fixed at the default config's values.  Sampling draws
each field independently and uniformly; the whole trial list is a pure
function of the sweep seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..configio import parse_kv_text
from ..errors import ConfigError, SpaceError
from ..preprocess.augment import AugmentationConfig

FIELD_KEYS = (
    "rotate.probability",
    "rotate.max_degrees",
    "squeeze.probability",
    "squeeze.max_ratio",
    "perspective.probability",
    "perspective.max_ratio",
    "arm_rotate.probability",
    "arm_rotate.max_degrees",
)

_DOMAINS = {
    "probability": (0.0, 1.0),
    "max_degrees": (0.0, float("inf")),
    "max_ratio": (0.0, 0.5),
}


def _domain(key: str) -> tuple[float, float]:
    return _DOMAINS[key.split(".")[1]]


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # fixed | range | choice
    values: tuple[float, ...]

    def sample(self, rng: np.random.Generator) -> float:
        if self.kind == "fixed":
            return self.values[0]
        if self.kind == "range":
            return float(rng.uniform(self.values[0], self.values[1]))
        return float(self.values[rng.integers(0, len(self.values))])


@dataclass(frozen=True)
class SearchSpace:
    fields: dict[str, FieldSpec]

    def __post_init__(self) -> None:
        for key, field_spec in self.fields.items():
            if key not in FIELD_KEYS:
                raise SpaceError(f"unknown search-space key {key!r}")
            lo, hi = _domain(key)
            if field_spec.kind not in ("fixed", "range", "choice"):
                raise SpaceError(f"{key}: unknown marker {field_spec.kind!r}")
            if field_spec.kind == "fixed" and len(field_spec.values) != 1:
                raise SpaceError(f"{key}: fixed takes exactly one value")
            if field_spec.kind == "range":
                if len(field_spec.values) != 2 or field_spec.values[0] > field_spec.values[1]:
                    raise SpaceError(f"{key}: range needs lo <= hi")
            if field_spec.kind == "choice" and not field_spec.values:
                raise SpaceError(f"{key}: choice needs at least one value")
            for v in field_spec.values:
                # max_ratio is an open upper bound; everything else closed.
                inside = lo <= v < hi if key.endswith("max_ratio") else lo <= v <= hi
                if not inside:
                    raise SpaceError(f"{key}: value {v} outside domain [{lo}, {hi})")

    @classmethod
    def from_text(cls, text: str, where: str = "<memory>") -> "SearchSpace":
        try:
            items = parse_kv_text(text, where)
        except ConfigError as exc:
            raise SpaceError(str(exc)) from exc
        fields: dict[str, FieldSpec] = {}
        for key, value in items.items():
            marker, sep, rest = value.partition(":")
            marker = marker.strip()
            if not sep:
                raise SpaceError(f"{where}: {key}: expected 'fixed:'/'range:'/'choice:' marker")
            try:
                values = tuple(float(tok) for tok in rest.split())
            except ValueError:
                raise SpaceError(f"{where}: {key}: non-numeric value in {rest!r}") from None
            fields[key] = FieldSpec(marker, values)
        return cls(fields)

    @classmethod
    def from_file(cls, path: str | Path) -> "SearchSpace":
        path = Path(path)
        return cls.from_text(path.read_text(), where=str(path))


def sample_configs(space: SearchSpace, n_trials: int, sweep_seed: int) -> list[AugmentationConfig]:
    """n_trials independent uniform draws; fixed fields copied verbatim."""
    if n_trials < 1:
        raise SpaceError("n_trials must be >= 1")
    rng = np.random.default_rng(sweep_seed)
    defaults = AugmentationConfig().to_flat()
    configs = []
    for _ in range(n_trials):
        flat = dict(defaults)
        # Iterate in the canonical key order so draws are reproducible.
        for key in FIELD_KEYS:
            if key in space.fields:
                flat[key] = repr(space.fields[key].sample(rng))
        configs.append(AugmentationConfig.from_flat(flat))
    return configs
