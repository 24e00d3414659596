"""Prediction and evaluation: top-k from the full softmax, top-1 macro/micro.

Macro accuracy averages per-class top-1 over the classes present in the
split, weighting classes equally regardless of sample count.  Ranking ties
break by ascending class index so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset.cache import LandmarkCache, iterate_split
from ..dataset.index import DatasetIndex, GlossVocabulary
from ..errors import InvalidKError, VocabularyMismatchError
from ..preprocess.normalize import normalize_sequence
from ..skeletal.schema import PoseSequence
from .checkpoint import Checkpoint
from .transformer import SignClassifier, forward_logits


def softmax(logits: np.ndarray) -> np.ndarray:
    z = np.asarray(logits, dtype=np.float64)
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def ranked_classes(probs: np.ndarray) -> list[int]:
    """Class indices by descending probability, ties by ascending index."""
    return sorted(range(len(probs)), key=lambda i: (-probs[i], i))


@dataclass(frozen=True)
class Prediction:
    """Ranked (gloss, probability) pairs from the full-class softmax."""

    items: tuple[tuple[str, float], ...]

    def glosses(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.items)

    def probabilities(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.items)


def topk_from_logits(logits: np.ndarray, vocabulary: GlossVocabulary, k: int) -> Prediction:
    if not 1 <= k <= len(vocabulary):
        raise InvalidKError(f"k must be in [1, {len(vocabulary)}], got {k}")
    probs = softmax(logits)
    order = ranked_classes(probs)[:k]
    return Prediction(tuple((vocabulary.gloss_of(i), float(probs[i])) for i in order))


def predict_topk(
    seq: PoseSequence,
    checkpoint: Checkpoint,
    k: int = 5,
    model: SignClassifier | None = None,
) -> Prediction:
    """Top-k prediction for a normalized sequence.

    Probabilities come from the softmax over all classes, not renormalized
    over k.  Pass a prebuilt model to skip rebuilding weights per call.
    """
    if model is None:
        model = checkpoint.build()
    logits = forward_logits(seq, model)
    return topk_from_logits(logits, checkpoint.vocabulary, k)


@dataclass(frozen=True)
class EvalResult:
    top1_macro: float
    top1_micro: float
    top5_micro: float
    per_class_accuracy: dict[str, float]
    num_samples: int


def evaluate_model(
    model: SignClassifier,
    vocabulary: GlossVocabulary,
    index: DatasetIndex,
    cache: LandmarkCache,
    split: str,
) -> EvalResult:
    split_glosses = {e.gloss for e in index.split(split)}
    unknown = sorted(g for g in split_glosses if g not in vocabulary)
    if unknown:
        raise VocabularyMismatchError(
            f"split {split!r} contains glosses outside the checkpoint vocabulary: {unknown}"
        )

    totals: dict[int, int] = {}
    hits1: dict[int, int] = {}
    hits5 = 0
    count = 0
    for seq, label in iterate_split(index, vocabulary, cache, split):
        normalized, _ = normalize_sequence(seq)
        probs = softmax(forward_logits(normalized, model))
        ranking = ranked_classes(probs)
        totals[label] = totals.get(label, 0) + 1
        if ranking[0] == label:
            hits1[label] = hits1.get(label, 0) + 1
        if label in ranking[: min(5, len(ranking))]:
            hits5 += 1
        count += 1

    per_class = {
        vocabulary.gloss_of(c): hits1.get(c, 0) / totals[c] for c in sorted(totals)
    }
    top1_micro = sum(hits1.values()) / count if count else 0.0
    top1_macro = sum(per_class.values()) / len(per_class) if per_class else 0.0
    top5_micro = hits5 / count if count else 0.0
    return EvalResult(top1_macro, top1_micro, top5_micro, per_class, count)


def evaluate(
    checkpoint: Checkpoint, index: DatasetIndex, cache: LandmarkCache, split: str
) -> EvalResult:
    """Evaluate a checkpoint on a materialized split using its own vocabulary."""
    return evaluate_model(checkpoint.build(), checkpoint.vocabulary, index, cache, split)
