from .space import FIELD_KEYS, FieldSpec, SearchSpace, sample_configs
from .runner import TrialRecord, best_trial, read_ledger, run_sweep

__all__ = [
    "FIELD_KEYS",
    "FieldSpec",
    "SearchSpace",
    "sample_configs",
    "TrialRecord",
    "best_trial",
    "read_ledger",
    "run_sweep",
]
