"""Fixture files shipped with the package (sketches, models, signatures, algebras)."""

from __future__ import annotations

from pathlib import Path

DIR = Path(__file__).resolve().parent


def path(name: str) -> Path:
    p = DIR / name
    if not p.is_file():
        raise FileNotFoundError(f"no corpus file {name}")
    return p


def read(name: str) -> str:
    return path(name).read_text()


def files(suffix: str | None = None) -> list[str]:
    return sorted(p.name for p in DIR.iterdir()
                  if p.is_file() and not p.name.startswith("_") and (suffix is None or p.suffix == suffix))
