from __future__ import annotations

from loguru import logger

from app.config import RunConfig
from app.engine import compute_F, count_table, enumerate_suckers
from app.handlers.common import emit, to_json, write_file
from app.laurent import dumps
from app.words import decks_to_word, stats


def cmd_count(cfg: RunConfig) -> int:
    """count --equal n | --decks a1,...,ak | --range lo..hi"""
    reports = []
    for a in cfg.decks or []:
        poly = compute_F(a, cfg.cap_terms)
        if cfg.dump_poly is not None:
            path = cfg.dump_poly if len(cfg.decks) == 1 else cfg.dump_poly.with_name(
                f"{cfg.dump_poly.stem}_{'-'.join(map(str, a))}{cfg.dump_poly.suffix}"
            )
            write_file(path, dumps(poly))
            logger.info(f"F{tuple(a)} ({len(poly)} terms) written to {path}")
        reports.append(count_table(a, cfg.cap_terms, poly=poly))

    if cfg.fmt == "json":
        emit(cfg, to_json([r.as_dict() for r in reports]))
        return 0

    lines = []
    for r in reports:
        d = r.as_dict()
        line = f"decks={','.join(map(str, r.a))} count={r.count}"
        if r.reduced is not None:
            line += f" reduced={r.reduced}"
        line += f" probability={d['probability']}≈{d['decimal']}"
        lines.append(line)
    emit(cfg, "\n".join(lines))
    return 0


def cmd_enumerate(cfg: RunConfig) -> int:
    """JSON array of {decks, stats, word}, its length being the count; --text adds a count=N line."""
    records = []
    for a in cfg.decks or []:
        for d in enumerate_suckers(a, reduce=cfg.reduce, cap_listing=cfg.cap_listing, prune=cfg.prune):
            w = decks_to_word(d)
            records.append({"decks": d.as_lists(), "stats": list(stats(w)), "word": str(w)})

    if cfg.fmt == "json":
        emit(cfg, to_json(records))
    else:
        lines = [f"{r['word']} decks={r['decks']} stats={r['stats']}" for r in records]
        lines.append(f"count={len(records)}")
        emit(cfg, "\n".join(lines))
    return 0
