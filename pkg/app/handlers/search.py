from __future__ import annotations

from app.config import RunConfig
from app.dice import enumerate_tieless, verify_dice_cycle
from app.handlers.common import emit, to_json


def cmd_dice(cfg: RunConfig) -> int:
    sets = enumerate_tieless(
        cfg.k,
        cfg.faces or (),
        cfg.denoms or 0,
        reduce=cfg.reduce,
        cap_nodes=cfg.cap_dice_nodes,
    )
    records = []
    for d in sets:
        report = verify_dice_cycle(d)
        records.append(
            {
                "dice": d.as_lists(),
                "margins": list(report.margins),
                "pairs": [list(p) for p in report.pairs],
            }
        )

    if cfg.fmt == "json":
        emit(cfg, to_json(records))
    else:
        lines = [f"dice={r['dice']} margins={r['margins']}" for r in records]
        lines.append(f"count={len(records)}")
        emit(cfg, "\n".join(lines))
    return 0
