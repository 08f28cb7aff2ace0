from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from loguru import logger

from app.laurent import TruncatedSeries


@dataclass
class SeriesEntry:
    box: tuple[int, ...]
    D: int
    n_max: int
    series: Dict[int, TruncatedSeries]  # n -> truncated series of F(n, ..., n)

    def covers(self, n: int, box: tuple[int, ...], D: int) -> bool:
        return (
            n <= self.n_max
            and D <= self.D
            and all(need <= have for need, have in zip(box, self.box))
        )


class SeriesCache:
    """Diagonal truncated series, reused across moment requests of one run.

    Any entry whose box and degree dominate a request can answer it.
    """

    def __init__(self, builder: Callable[[int, tuple[int, ...], int], Dict[int, TruncatedSeries]]):
        self._build = builder
        self._entries: List[SeriesEntry] = []

    def invalidate(self) -> None:
        self._entries.clear()

    def find(self, n: int, box: tuple[int, ...], D: int) -> Optional[SeriesEntry]:
        for entry in self._entries:
            if entry.covers(n, box, D):
                return entry
        return None

    def get(self, n: int, box: tuple[int, ...], D: int, n_max: int | None = None) -> TruncatedSeries:
        entry = self.find(n, box, D)
        if entry is None:
            target = max(n, n_max or n)
            logger.info(f"building diagonal series up to n={target} (box={box}, D={D})")
            entry = SeriesEntry(box, D, target, self._build(target, box, D))
            # drop entries the new one dominates
            self._entries = [
                e for e in self._entries if not entry.covers(e.n_max, e.box, e.D)
            ]
            self._entries.append(entry)
        return entry.series[n]
