from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt, model_validator

load_dotenv()


@dataclass(frozen=True)
class Settings:
    cap_terms: int = 10**8
    cap_listing: int = 10**6
    cap_brute_force: int = 10**6
    cap_dice_nodes: int = 5 * 10**7
    log_level: str = "WARNING"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r} (.env or environment).")
    if value <= 0:
        raise RuntimeError(f"{name} must be positive, got {value}.")
    return value


def get_settings() -> Settings:
    defaults = Settings()
    return Settings(
        cap_terms=_int_env("NONTRANS_CAP_TERMS", defaults.cap_terms),
        cap_listing=_int_env("NONTRANS_CAP_LISTING", defaults.cap_listing),
        cap_brute_force=_int_env("NONTRANS_CAP_BRUTE_FORCE", defaults.cap_brute_force),
        cap_dice_nodes=_int_env("NONTRANS_CAP_DICE_NODES", defaults.cap_dice_nodes),
        log_level=os.getenv("NONTRANS_LOG_LEVEL", defaults.log_level).strip().upper() or defaults.log_level,
    )


# ======================= per-run configuration =======================

Command = Literal["count", "enumerate", "dice", "moments", "verify", "repro"]


class RunConfig(BaseModel):
    """One CLI invocation, validated; built from argparse output plus Settings."""

    model_config = ConfigDict(frozen=True)

    command: Command
    decks: Optional[list[tuple[NonNegativeInt, ...]]] = None
    k: PositiveInt = 3
    faces: Optional[tuple[PositiveInt, ...]] = None
    denoms: Optional[NonNegativeInt] = None
    reduce: bool = False
    prune: bool = True
    fmt: Literal["text", "json"] = "text"
    cap_terms: PositiveInt = Settings.cap_terms
    cap_listing: PositiveInt = Settings.cap_listing
    cap_brute_force: PositiveInt = Settings.cap_brute_force
    cap_dice_nodes: PositiveInt = Settings.cap_dice_nodes
    output: Optional[Path] = None
    dump_poly: Optional[Path] = None

    # moments
    n: Optional[PositiveInt] = None
    order: Optional[tuple[NonNegativeInt, NonNegativeInt, NonNegativeInt]] = None
    fit: Optional[tuple[NonNegativeInt, NonNegativeInt, NonNegativeInt]] = None
    degree_bound: Optional[NonNegativeInt] = None
    limits: bool = False
    max_order: NonNegativeInt = 5
    table: bool = False
    max_total: NonNegativeInt = 4
    convergence: Optional[tuple[NonNegativeInt, NonNegativeInt, NonNegativeInt]] = None
    n_max: PositiveInt = 10
    tsv: bool = False
    normalization: Optional[str] = None

    # verify / repro
    k4_max_total: NonNegativeInt = 8
    extended: bool = False
    skip_slow: bool = False

    @model_validator(mode="after")
    def _check_command_inputs(self) -> "RunConfig":
        if self.command in ("count", "enumerate") and not self.decks:
            raise ValueError(f"`{self.command}` needs --equal, --decks or --range")
        if self.command == "dice":
            if self.faces is None or self.denoms is None:
                raise ValueError("`dice` needs --faces and --denoms")
            if len(self.faces) != self.k:
                raise ValueError(f"--faces has {len(self.faces)} entries but --k is {self.k}")
        return self
