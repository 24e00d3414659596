from .index import SPLITS, DatasetIndex, GlossVocabulary, IndexEntry, load_index
from .cache import (
    LandmarkCache,
    MaterializationReport,
    cache_key,
    find_video,
    iterate_split,
    materialize,
    shuffle_order,
)
from .fixture import FIXTURE_GLOSSES, fixture_cache, generate_clip, make_fixture_dataset

__all__ = [
    "SPLITS",
    "DatasetIndex",
    "GlossVocabulary",
    "IndexEntry",
    "load_index",
    "LandmarkCache",
    "MaterializationReport",
    "cache_key",
    "find_video",
    "iterate_split",
    "materialize",
    "shuffle_order",
    "FIXTURE_GLOSSES",
    "fixture_cache",
    "generate_clip",
    "make_fixture_dataset",
]
