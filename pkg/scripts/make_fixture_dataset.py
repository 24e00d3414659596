#!/usr/bin/env python3
"""Generate the synthetic 5-gloss fixture dataset to a directory.

Usage: python scripts/make_fixture_dataset.py [outdir] [--seed N]
"""

import argparse
from pathlib import Path

from spoterkit.dataset import make_fixture_dataset


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="fixture_data")
    parser.add_argument("--seed", type=int, default=20240501)
    args = parser.parse_args()

    index_path, cache, index, vocab = make_fixture_dataset(Path(args.outdir), seed=args.seed)
    print(f"index: {index_path}")
    print(f"cache: {cache.directory}")
    print(f"glosses: {list(vocab)}")
    print(f"splits: {index.split_sizes()}")


if __name__ == "__main__":
    main()
