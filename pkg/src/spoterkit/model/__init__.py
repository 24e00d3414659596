from .bench import LatencyReport, benchmark_inference
from .checkpoint import Checkpoint
from .config import ModelConfig, TrainConfig
from .metrics import (
    EvalResult,
    Prediction,
    evaluate,
    evaluate_model,
    predict_topk,
    ranked_classes,
    softmax,
    topk_from_logits,
)
from .params import count_parameters
from .train import train
from .transformer import (
    SignClassifier,
    build_model,
    forward_logits,
    sequence_to_tensor,
    set_deterministic,
)

__all__ = [
    "LatencyReport",
    "benchmark_inference",
    "Checkpoint",
    "ModelConfig",
    "TrainConfig",
    "EvalResult",
    "Prediction",
    "evaluate",
    "evaluate_model",
    "predict_topk",
    "ranked_classes",
    "softmax",
    "topk_from_logits",
    "count_parameters",
    "train",
    "SignClassifier",
    "build_model",
    "forward_logits",
    "sequence_to_tensor",
    "set_deterministic",
]
