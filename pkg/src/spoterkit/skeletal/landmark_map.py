"""Declarative mapping from a pose estimator's landmark layout to the canonical schema.

A map covers every canonical slot exactly once, either by copying a source
index or through a synthesis rule (currently: midpoint of two other slots).
Maps are data, not code: they live in JSON files so new estimators plug in
without touching the converter.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import FormatError
from . import schema

SYNTHESIZED = "synthesized"

_RULE_ARITY = {"midpoint": 2}


@dataclass(frozen=True)
class SynthesisRule:
    target: str
    rule: str
    inputs: tuple[str, ...]


@dataclass(frozen=True)
class LandmarkMap:
    estimator_name: str
    body_arity: int
    hand_arity: int
    body_map: dict[str, int]  # canonical body slot -> source body index
    left_hand_map: dict[str, int]  # canonical left-hand slot -> source hand index
    right_hand_map: dict[str, int]
    synthesis_rules: tuple[SynthesisRule, ...]

    def __post_init__(self) -> None:
        self._validate()

    def _validate(self) -> None:
        if self.body_arity < 1 or self.hand_arity < 1:
            raise FormatError("source arities must be positive")
        mapped = set(self.body_map) | set(self.left_hand_map) | set(self.right_hand_map)
        synthesized = [r.target for r in self.synthesis_rules]
        for name in mapped | set(synthesized):
            if name not in schema.SLOT_INDEX:
                raise FormatError(f"unknown canonical slot {name!r}")
        if len(synthesized) != len(set(synthesized)):
            raise FormatError("duplicate synthesis targets")
        overlap = mapped & set(synthesized)
        if overlap:
            raise FormatError(f"slots both mapped and synthesized: {sorted(overlap)}")
        covered = mapped | set(synthesized)
        missing = [s for s in schema.SLOTS if s not in covered]
        if missing:
            raise FormatError(f"canonical slots not covered: {missing}")
        for slot in self.left_hand_map:
            if slot not in schema.LEFT_HAND_SLOTS:
                raise FormatError(f"{slot!r} is not a left-hand slot")
        for slot in self.right_hand_map:
            if slot not in schema.RIGHT_HAND_SLOTS:
                raise FormatError(f"{slot!r} is not a right-hand slot")
        for slot in self.body_map:
            if slot not in schema.BODY_SLOTS:
                raise FormatError(f"{slot!r} is not a body slot")
        for slot, idx in self.body_map.items():
            if not 0 <= idx < self.body_arity:
                raise FormatError(f"body index {idx} for {slot!r} outside arity {self.body_arity}")
        for hand in (self.left_hand_map, self.right_hand_map):
            for slot, idx in hand.items():
                if not 0 <= idx < self.hand_arity:
                    raise FormatError(f"hand index {idx} for {slot!r} outside arity {self.hand_arity}")
        # Synthesis rules run after direct mapping, in listed order; each may
        # only reference slots already filled at that point.
        filled = set(mapped)
        for rule in self.synthesis_rules:
            if rule.rule not in _RULE_ARITY:
                raise FormatError(f"unknown synthesis rule {rule.rule!r}")
            if len(rule.inputs) != _RULE_ARITY[rule.rule]:
                raise FormatError(
                    f"rule {rule.rule!r} takes {_RULE_ARITY[rule.rule]} inputs, got {len(rule.inputs)}"
                )
            for src in rule.inputs:
                if src not in filled:
                    raise FormatError(
                        f"synthesis of {rule.target!r} references {src!r} before it is filled"
                    )
            filled.add(rule.target)

    def to_json(self) -> dict:
        return {
            "estimator_name": self.estimator_name,
            "source_arity": {"body": self.body_arity, "hand": self.hand_arity},
            "body_map": {
                s: (self.body_map[s] if s in self.body_map else SYNTHESIZED)
                for s in schema.BODY_SLOTS
                if s in self.body_map or any(r.target == s for r in self.synthesis_rules)
            },
            "hand_maps": {"left": dict(self.left_hand_map), "right": dict(self.right_hand_map)},
            "synthesis_rules": [
                {"target": r.target, "rule": r.rule, "inputs": list(r.inputs)}
                for r in self.synthesis_rules
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LandmarkMap":
        try:
            arity = doc["source_arity"]
            body_map = {
                slot: int(idx)
                for slot, idx in doc["body_map"].items()
                if idx != SYNTHESIZED
            }
            rules = tuple(
                SynthesisRule(r["target"], r["rule"], tuple(r["inputs"]))
                for r in doc.get("synthesis_rules", [])
            )
            return cls(
                estimator_name=str(doc["estimator_name"]),
                body_arity=int(arity["body"]),
                hand_arity=int(arity["hand"]),
                body_map=body_map,
                left_hand_map={s: int(i) for s, i in doc["hand_maps"]["left"].items()},
                right_hand_map={s: int(i) for s, i in doc["hand_maps"]["right"].items()},
                synthesis_rules=rules,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed landmark map: {exc}") from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "LandmarkMap":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_json(doc)

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")

    def digest(self) -> str:
        """Stable content digest, used to key landmark caches."""
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def default_mediapipe_map() -> LandmarkMap:
    """The shipped MediaPipe holistic map (33-point body, 21-point hands)."""
    data = resources.files("spoterkit.skeletal").joinpath("data/mediapipe_map.json")
    return LandmarkMap.from_json(json.loads(data.read_text()))
