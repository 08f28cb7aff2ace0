from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from loguru import logger
from pydantic import ValidationError

from app.config import RunConfig, Settings, get_settings
from app.errors import SuckersBetError
from app.handlers.analysis import cmd_moments
from app.handlers.checks import cmd_repro, cmd_verify
from app.handlers.counting import cmd_count, cmd_enumerate
from app.handlers.search import cmd_dice

USAGE_EXIT = 2

HANDLERS: dict[str, Callable[[RunConfig], int]] = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "dice": cmd_dice,
    "moments": cmd_moments,
    "verify": cmd_verify,
    "repro": cmd_repro,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")


def _add_deck_args(p: argparse.ArgumentParser, k_default: int = 3) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--equal", type=int, metavar="N", help="k decks of N cards each")
    g.add_argument("--decks", type=_ints, metavar="A1,...,AK", help="deck sizes")
    g.add_argument("--range", type=_range, metavar="LO..HI", help="equal decks for every N in LO..HI")
    p.add_argument("--k", type=int, default=k_default, help="number of decks with --equal/--range")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", dest="fmt", action="store_const", const="json", default=None)
    p.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.add_argument("--output", type=str, default=None, help="also write the result to this file")
    p.add_argument("--cap-terms", type=int, default=None)
    p.add_argument("--cap-listing", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="suckers-bet", description="Sucker's bet decks, dice and word-statistic moments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="count sucker's-bet deck sets")
    _add_deck_args(p)
    p.add_argument("--dump-poly", type=str, default=None, help="write F to this file, one term per line")
    _add_common(p)

    p = sub.add_parser("enumerate", help="list sucker's-bet deck sets")
    _add_deck_args(p)
    p.add_argument("--reduce", action="store_true", help="one set per cyclic orbit")
    p.add_argument("--no-prune", dest="prune", action="store_false")
    _add_common(p)

    p = sub.add_parser("dice", help="tie-less dice sets with a given number of denominations")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--faces", type=_ints, required=True)
    p.add_argument("--denoms", type=int, required=True)
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--cap-dice-nodes", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("moments", help="exact moments, closed forms and Gaussian limits")
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=_ints)
    p.add_argument("--fit", type=_ints, metavar="I,J,K")
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--limits", action="store_true")
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--table", action="store_true")
    p.add_argument("--max-total", type=int, default=4)
    p.add_argument("--convergence", type=_ints, metavar="I,J,K")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--normalization", type=str, metavar="C", help="N(c) for the trivariate density")
    _add_common(p)

    p = sub.add_parser("verify", help="oracle equivalence and symmetry checks")
    p.add_argument("--max-total", type=int, default=9)
    p.add_argument("--k4-max-total", type=int, default=8)
    p.add_argument("--cap-brute-force", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("repro", help="pass/fail table of every published number")
    p.add_argument("--extended", action="store_true", help="also n=8,9 counts")
    p.add_argument("--skip-slow", action="store_true")
    _add_common(p)

    return parser


def _decks(ns: argparse.Namespace) -> list[tuple[int, ...]] | None:
    if getattr(ns, "decks", None) is not None:
        return [ns.decks]
    if getattr(ns, "equal", None) is not None:
        return [(ns.equal,) * ns.k]
    if getattr(ns, "range", None) is not None:
        lo, hi = ns.range
        return [(n,) * ns.k for n in range(lo, hi + 1)]
    return None


def to_run_config(ns: argparse.Namespace, settings: Settings) -> RunConfig:
    """argparse namespace + env settings -> validated RunConfig (CLI flags win)."""
    raw = {k: v for k, v in vars(ns).items() if v is not None}
    for key in ("equal", "range"):
        raw.pop(key, None)
    decks = _decks(ns)
    if decks is not None:
        raw["decks"] = decks
    else:
        raw.pop("decks", None)
    raw.setdefault("cap_terms", settings.cap_terms)
    raw.setdefault("cap_listing", settings.cap_listing)
    raw.setdefault("cap_brute_force", settings.cap_brute_force)
    raw.setdefault("cap_dice_nodes", settings.cap_dice_nodes)
    if ns.command == "dice" and "faces" in raw:
        raw["faces"] = tuple(raw["faces"])
    if ns.command in ("enumerate", "dice"):
        raw.setdefault("fmt", "json")
    return RunConfig(**raw)


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level, format="{time:HH:mm:ss} | {level:<7} | {message}")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        settings = get_settings()
    except RuntimeError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    configure_logging(settings.log_level)

    try:
        ns = build_parser().parse_args(argv)
        cfg = to_run_config(ns, settings)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE_EXIT
    except ValidationError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE_EXIT

    logger.debug(f"running {cfg.command} with {cfg.model_dump(exclude_defaults=True)}")
    try:
        return HANDLERS[cfg.command](cfg)
    except SuckersBetError as e:
        logger.error(f"{type(e).__name__}: {e}")
        counterexample = getattr(e, "counterexample", None)
        if counterexample is not None:
            print(f"counterexample: {counterexample}")
        return e.exit_code
    except Exception as e:
        logger.exception(e)
        return 1


def run() -> None:
    sys.exit(main())
