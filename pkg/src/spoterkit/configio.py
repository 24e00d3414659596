"""Flat ``key: value`` config files (one entry per line, ``#`` comments)."""

from __future__ import annotations

from pathlib import Path

from .errors import ConfigError


def parse_kv_text(text: str, where: str = "<memory>") -> dict[str, str]:
    items: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition(":")
        if not sep or not key.strip():
            raise ConfigError(f"{where}:{lineno}: expected 'key: value', got {line!r}")
        if key.strip() in items:
            raise ConfigError(f"{where}:{lineno}: duplicate key {key.strip()!r}")
        items[key.strip()] = value.strip()
    return items


def read_kv_file(path: str | Path) -> dict[str, str]:
    path = Path(path)
    return parse_kv_text(path.read_text(), where=str(path))


def write_kv_file(path: str | Path, items: dict[str, str]) -> None:
    lines = [f"{k}: {v}" for k, v in items.items()]
    Path(path).write_text("\n".join(lines) + "\n")


def parse_float(items: dict[str, str], key: str, where: str = "config") -> float:
    try:
        return float(items[key])
    except KeyError:
        raise ConfigError(f"{where}: missing key {key!r}") from None
    except ValueError:
        raise ConfigError(f"{where}: {key!r} is not a number: {items[key]!r}") from None
