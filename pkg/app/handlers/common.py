from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from app.config import RunConfig
from app.errors import OutputError


def frac(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_json(payload: Any) -> str:
    """Deterministic JSON: fixed key order as built, fractions as strings."""
    return json.dumps(payload, indent=2, default=lambda o: frac(o) if isinstance(o, Fraction) else str(o)) + "\n"


def write_file(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OutputError(f"could not write {path}: {e}") from e


def emit(cfg: RunConfig, text: str) -> None:
    """Results go to stdout, and to --output when given."""
    if not text.endswith("\n"):
        text += "\n"
    print(text, end="")
    if cfg.output is not None:
        write_file(cfg.output, text)
