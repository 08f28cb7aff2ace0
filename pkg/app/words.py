from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterator, Sequence

from sympy.utilities.iterables import multiset_permutations

from app.errors import DimensionError, NormalizationError, SizeLimitError
from app.laurent import LaurentPoly, multinomial

StatVector = tuple[int, ...]


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.k < 1:
            raise DimensionError(f"alphabet size must be >= 1, got {self.k}")
        for x in self.letters:
            if not 1 <= x <= self.k:
                raise DimensionError(f"letter {x} outside alphabet 1..{self.k}")

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> Word:
        """'132321213' -> Word; k defaults to the largest letter seen."""
        letters = tuple(int(ch) for ch in text.strip())
        return cls(letters, k if k is not None else max(letters, default=1))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        sep = "" if self.k < 10 else ","
        return sep.join(map(str, self.letters))


@dataclass(frozen=True)
class DeckSet:
    """k decks of card denominations, each sorted ascending."""

    decks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "decks", tuple(tuple(sorted(d)) for d in self.decks))

    @property
    def k(self) -> int:
        return len(self.decks)

    def as_lists(self) -> list[list[int]]:
        return [list(d) for d in self.decks]


# ======================= statistics =======================


def stats(w: Word) -> StatVector:
    """s_i = #(letter i+1 before letter i) - #(letter i before letter i+1), cyclic in i."""
    k = w.k
    s = [0] * k
    seen = [0] * k
    for x in w.letters:
        j = x - 1
        # the new letter comes after every earlier occurrence
        s[j] += seen[(j + 1) % k]
        s[(j - 1) % k] -= seen[(j - 1) % k]
        seen[j] += 1
    return tuple(s)


def is_sbc(w: Word) -> bool:
    return all(x >= 1 for x in stats(w))


# ======================= words <-> decks =======================


def word_to_decks(w: Word) -> DeckSet:
    decks: list[list[int]] = [[] for _ in range(w.k)]
    for pos, x in enumerate(w.letters, 1):
        decks[x - 1].append(pos)
    return DeckSet(tuple(tuple(d) for d in decks))


def decks_to_word(d: DeckSet) -> Word:
    owner: dict[int, int] = {}
    for j, deck in enumerate(d.decks, 1):
        for card in deck:
            if card in owner:
                raise NormalizationError(f"denomination {card} appears more than once; rank-normalize first")
            owner[card] = j
    n = len(owner)
    if sorted(owner) != list(range(1, n + 1)):
        raise NormalizationError("denominations are not exactly 1..N; rank-normalize first")
    return Word(tuple(owner[i] for i in range(1, n + 1)), d.k)


def rank_normalize(decks: Sequence[Sequence[int]]) -> DeckSet:
    """Replace distinct denominations by their ranks 1..N."""
    cards = [c for d in decks for c in d]
    if len(set(cards)) != len(cards):
        raise NormalizationError("rank normalization needs pairwise distinct denominations")
    rank = {c: i for i, c in enumerate(sorted(cards), 1)}
    return DeckSet(tuple(tuple(rank[c] for c in d) for d in decks))


# ======================= decks as dice =======================


def beats_count(deck_a: Sequence[int], deck_b: Sequence[int]) -> tuple[int, int, int]:
    """(wins of A, wins of B, ties) over all |A|*|B| face pairs."""
    b = sorted(deck_b)
    wins_a = wins_b = ties = 0
    for x in deck_a:
        lo = bisect_left(b, x)
        hi = bisect_right(b, x)
        wins_a += lo
        ties += hi - lo
        wins_b += len(b) - hi
    return wins_a, wins_b, ties


def is_suckers_bet(decks: Sequence[Sequence[int]]) -> bool:
    """Deck i strictly beats deck i+1 for every i, cyclically."""
    k = len(decks)
    if k < 3:
        raise DimensionError(f"a sucker's bet needs at least 3 decks, got {k}")
    for i in range(k):
        wins, losses, _ = beats_count(decks[i], decks[(i + 1) % k])
        if wins <= losses:
            return False
    return True


# ======================= symmetries =======================


def relabel(w: Word, shift: int = 1) -> Word:
    """Letter l -> l + shift (mod k)."""
    k = w.k
    return Word(tuple((x - 1 + shift) % k + 1 for x in w.letters), k)


def reverse(w: Word) -> Word:
    return Word(w.letters[::-1], w.k)


def canonical_cyclic(w: Word) -> Word:
    return min((relabel(w, t) for t in range(w.k)), key=lambda u: u.letters)


# ======================= brute-force oracles =======================


def words_of(a: Sequence[int]) -> Iterator[Word]:
    """All words with letter multiplicities a, in lexicographic order."""
    k = len(a)
    base = [j for j in range(1, k + 1) for _ in range(a[j - 1])]
    if not base:
        yield Word((), k)
        return
    for letters in multiset_permutations(base):
        yield Word(tuple(letters), k)


def brute_force_F(a: Sequence[int], cap: int = 10**6) -> LaurentPoly:
    """Sum of q^stats(w) over every word of W(a)."""
    if any(x < 0 for x in a):
        return LaurentPoly.zero(len(a))
    size = multinomial(a)
    if size > cap:
        raise SizeLimitError(f"W{tuple(a)} has {size} words, over the brute-force cap {cap}")
    acc: dict[StatVector, int] = {}
    for w in words_of(a):
        s = stats(w)
        acc[s] = acc.get(s, 0) + 1
    return LaurentPoly(len(a), acc)
