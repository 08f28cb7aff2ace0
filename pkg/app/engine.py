from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from loguru import logger

from app.errors import DimensionError, InvariantViolation, SizeLimitError, UnsupportedSymmetryError
from app.laurent import LaurentPoly, lp_eval_all_ones, lp_pos, multinomial
from app.words import DeckSet, Word, canonical_cyclic, word_to_decks

CountsVector = tuple[int, ...]

DEFAULT_CAP_TERMS = 10**8
DEFAULT_CAP_LISTING = 10**6


def append_shift(b: Sequence[int], j: int) -> tuple[int, ...]:
    """Exponent shift for appending letter j (0-based) to a word that ends with count vector b.

    Every earlier (j+1) now precedes the new j, every earlier (j-1) precedes it too.
    """
    k = len(b)
    shift = [0] * k
    shift[j] += b[(j + 1) % k]
    shift[(j - 1) % k] -= b[(j - 1) % k]
    return tuple(shift)


def _check_counts(a: Sequence[int]) -> CountsVector:
    a = tuple(int(x) for x in a)
    if not a:
        raise DimensionError("count vector is empty")
    if any(x < 0 for x in a):
        raise DimensionError(f"deck sizes must be >= 0, got {a}")
    return a


def layer(a: CountsVector, total: int) -> Iterator[CountsVector]:
    """Vectors b <= a (componentwise) with sum(b) == total, in lexicographic order."""
    k = len(a)

    def rec(i: int, left: int, prefix: tuple[int, ...]) -> Iterator[CountsVector]:
        if i == k - 1:
            if left <= a[i]:
                yield prefix + (left,)
            return
        room = sum(a[i + 1 :])
        for x in range(max(0, left - room), min(a[i], left) + 1):
            yield from rec(i + 1, left - x, prefix + (x,))

    if 0 <= total <= sum(a):
        yield from rec(0, total, ())


@dataclass(frozen=True)
class _Packing:
    """Exponent vectors packed into one int: digit t is e_t + bound_t in base 2*bound_t + 1.

    Valid while every |e_t| <= bound_t; compute_F checks this per entry.
    """

    bounds: tuple[int, ...]
    weights: tuple[int, ...]

    @classmethod
    def for_counts(cls, a: CountsVector) -> _Packing:
        k = len(a)
        bounds = tuple(a[t] * a[(t + 1) % k] for t in range(k))
        weights = []
        w = 1
        for bound in bounds:
            weights.append(w)
            w *= 2 * bound + 1
        return cls(bounds, tuple(weights))

    def pack(self, e: Sequence[int]) -> int:
        return sum((x + b) * w for x, b, w in zip(e, self.bounds, self.weights))

    def delta(self, shift: Sequence[int]) -> int:
        return sum(x * w for x, w in zip(shift, self.weights))

    def unpack(self, key: int) -> tuple[int, ...]:
        out = []
        for b in self.bounds:
            key, digit = divmod(key, 2 * b + 1)
            out.append(digit - b)
        return tuple(out)


def compute_F(a: Sequence[int], cap_terms: int = DEFAULT_CAP_TERMS) -> LaurentPoly:
    """Weight enumerator of W(a) via the append-a-letter recurrence, one graded layer at a time.

    Each entry carries the componentwise min/max of its exponents. An entry outside the
    packing bounds raises InvariantViolation.
    """
    a = _check_counts(a)
    k = len(a)
    packing = _Packing.for_counts(a)
    origin = (0,) * k
    prev: dict[CountsVector, dict[int, int]] = {origin: {packing.pack(origin): 1}}
    prev_hull: dict[CountsVector, tuple[CountsVector, CountsVector]] = {origin: (origin, origin)}
    stored = 1

    for total in range(1, sum(a) + 1):
        cur: dict[CountsVector, dict[int, int]] = {}
        cur_hull: dict[CountsVector, tuple[CountsVector, CountsVector]] = {}
        for b in layer(a, total):
            acc: dict[int, int] = {}
            lo = hi = None
            for j in range(k):
                if b[j] == 0:
                    continue
                before = b[:j] + (b[j] - 1,) + b[j + 1 :]
                src = prev[before]
                shift = append_shift(b, j)
                src_lo, src_hi = prev_hull[before]
                moved_lo = tuple(x + y for x, y in zip(src_lo, shift))
                moved_hi = tuple(x + y for x, y in zip(src_hi, shift))
                if lo is None:
                    lo, hi = moved_lo, moved_hi
                else:
                    lo = tuple(map(min, lo, moved_lo))
                    hi = tuple(map(max, hi, moved_hi))
                d = packing.delta(shift)
                if not acc:
                    acc = {key + d: c for key, c in src.items()}
                    continue
                get = acc.get
                for key, c in src.items():
                    kk = key + d
                    acc[kk] = get(kk, 0) + c
            if any(x < -bound or y > bound for x, y, bound in zip(lo, hi, packing.bounds)):
                raise InvariantViolation(
                    f"F{a}: entry {b} has exponents in {lo}..{hi}, outside +-{packing.bounds}",
                    counterexample=a,
                )
            cur[b] = acc
            cur_hull[b] = (lo, hi)
            stored += len(acc)
            if stored > cap_terms:
                raise SizeLimitError(
                    f"F{a}: layer N={total} pushes stored terms past {cap_terms} "
                    f"(raise --cap-terms / NONTRANS_CAP_TERMS)"
                )
        stored = sum(len(p) for p in cur.values())
        logger.debug(f"F{a}: layer N={total} done, {len(cur)} entries, {stored} terms")
        prev, prev_hull = cur, cur_hull

    return LaurentPoly(k, {packing.unpack(key): c for key, c in prev[a].items()})


def count_suckers(
    a: Sequence[int],
    cap_terms: int = DEFAULT_CAP_TERMS,
    poly: LaurentPoly | None = None,
) -> int:
    """Number of sucker's bets in W(a); pass `poly` to reuse an F(a) already computed."""
    a = _check_counts(a)
    if len(a) < 3:
        raise DimensionError(f"a sucker's bet needs at least 3 decks, got k={len(a)}")
    if poly is None:
        poly = compute_F(a, cap_terms)
    return lp_eval_all_ones(lp_pos(poly))


def _require_equal(a: CountsVector) -> None:
    if len(set(a)) != 1:
        raise UnsupportedSymmetryError(f"cyclic reduction needs equal deck sizes, got {a}")


def count_suckers_reduced(
    a: Sequence[int],
    cap_terms: int = DEFAULT_CAP_TERMS,
    poly: LaurentPoly | None = None,
) -> int:
    a = _check_counts(a)
    _require_equal(a)
    total = count_suckers(a, cap_terms, poly)
    q, r = divmod(total, len(a))
    if r:
        raise InvariantViolation(f"count {total} for {a} is not divisible by k={len(a)}", counterexample=a)
    return q


def probability(
    a: Sequence[int],
    cap_terms: int = DEFAULT_CAP_TERMS,
    poly: LaurentPoly | None = None,
) -> Fraction:
    a = _check_counts(a)
    return Fraction(count_suckers(a, cap_terms, poly), multinomial(a))


def decimal(x: Fraction, digits: int = 12) -> str:
    """Fixed-point rendering with `digits` digits after the point (round half up)."""
    scale = 10**digits
    n = (abs(x.numerator) * scale * 2 + x.denominator) // (2 * x.denominator)
    sign = "-" if x < 0 and n else ""
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class CountReport:
    a: CountsVector
    total_words: int
    count: int
    reduced: int | None
    probability: Fraction

    def as_dict(self) -> dict:
        return {
            "decks": list(self.a),
            "words": self.total_words,
            "count": self.count,
            "reduced": self.reduced,
            "probability": f"{self.count}/{self.total_words}",
            "decimal": decimal(self.probability),
        }


def count_table(
    a: Sequence[int],
    cap_terms: int = DEFAULT_CAP_TERMS,
    poly: LaurentPoly | None = None,
) -> CountReport:
    """Count, reduced count and probability; pass `poly` to reuse an F(a) already computed."""
    a = _check_counts(a)
    if poly is None:
        poly = compute_F(a, cap_terms)
    count = count_suckers(a, poly=poly)
    reduced = count_suckers_reduced(a, poly=poly) if len(set(a)) == 1 else None
    return CountReport(a, multinomial(a), count, reduced, probability(a, poly=poly))


def sequence_equal_decks(n_max: int, k: int = 3, cap_terms: int = DEFAULT_CAP_TERMS) -> list[int]:
    if n_max < 1:
        raise DimensionError(f"n_max must be >= 1, got {n_max}")
    out = []
    for n in range(1, n_max + 1):
        out.append(count_suckers((n,) * k, cap_terms))
        logger.info(f"n={n}: {out[-1]} sucker's bets")
    return out


# ======================= listing =======================


def iter_sbc_words(a: Sequence[int], prune: bool = True) -> Iterator[Word]:
    """Depth-first construction of every word of W(a) with all cyclic stats >= 1, lexicographic order."""
    a = _check_counts(a)
    k = len(a)
    seen = [0] * k
    s = [0] * k
    letters: list[int] = []
    n = sum(a)

    def hopeless() -> bool:
        # s_i only grows when letter i is placed after letters i+1;
        # each remaining i can add at most a_{i+1}.
        for i in range(k):
            if s[i] + (a[i] - seen[i]) * a[(i + 1) % k] < 1:
                return True
        return False

    def rec() -> Iterator[Word]:
        if len(letters) == n:
            if all(x >= 1 for x in s):
                yield Word(tuple(letters), k)
            return
        if prune and hopeless():
            return
        for j in range(k):
            if seen[j] == a[j]:
                continue
            up = seen[(j + 1) % k]
            down = seen[(j - 1) % k]
            s[j] += up
            s[(j - 1) % k] -= down
            seen[j] += 1
            letters.append(j + 1)
            yield from rec()
            letters.pop()
            seen[j] -= 1
            s[(j - 1) % k] += down
            s[j] -= up

    yield from rec()


def enumerate_suckers(
    a: Sequence[int],
    reduce: bool = False,
    cap_listing: int = DEFAULT_CAP_LISTING,
    prune: bool = True,
) -> list[DeckSet]:
    """All sucker's-bet deck sets for sizes a; with reduce, one per cyclic orbit."""
    a = _check_counts(a)
    if reduce:
        _require_equal(a)
    if not prune:
        logger.warning(f"pruning disabled for {a}; the search visits every word")
    out: list[DeckSet] = []
    for w in iter_sbc_words(a, prune=prune):
        if reduce and canonical_cyclic(w) != w:
            continue
        out.append(word_to_decks(w))
        if len(out) > cap_listing:
            raise SizeLimitError(
                f"listing for {a} exceeds {cap_listing} sets; use `count` for the number only"
            )
    logger.info(f"listed {len(out)} sets for decks {a} (reduce={reduce})")
    return out
