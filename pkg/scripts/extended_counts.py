from __future__ import annotations

import sys

from app.config import get_settings
from app.engine import count_table, decimal
from app.reference import SUCKERS_SEQUENCE


def main(n_lo: int = 8, n_hi: int = 12) -> int:
    """Long-running tier: three equal decks for n = n_lo..n_hi, checked against the published sequence."""
    settings = get_settings()
    bad = 0
    for n in range(n_lo, n_hi + 1):
        r = count_table((n, n, n), settings.cap_terms)
        want = SUCKERS_SEQUENCE[n - 1]
        status = "OK" if r.count == want else f"MISMATCH (expected {want})"
        print(f"n={n} count={r.count} reduced={r.reduced} p≈{decimal(r.probability)} {status}", flush=True)
        bad += r.count != want
    return 5 if bad else 0


if __name__ == "__main__":
    args = [int(x) for x in sys.argv[1:3]]
    sys.exit(main(*args))
