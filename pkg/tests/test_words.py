from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app import reference
from app.errors import DimensionError, NormalizationError, SizeLimitError
from app.laurent import lp_eval_all_ones, lp_pos
from app.words import (
    DeckSet,
    Word,
    beats_count,
    brute_force_F,
    canonical_cyclic,
    decks_to_word,
    is_sbc,
    is_suckers_bet,
    rank_normalize,
    relabel,
    reverse,
    stats,
    word_to_decks,
    words_of,
)

words3 = st.lists(st.integers(1, 3), max_size=9).map(lambda xs: Word(tuple(xs), 3))
words4 = st.lists(st.integers(1, 4), max_size=8).map(lambda xs: Word(tuple(xs), 4))


def test_stats_small_word():
    assert stats(Word.parse("12", 3)) == (-1, 0, 0)
    assert stats(Word((), 3)) == (0, 0, 0)


def test_magic_square_word():
    w = Word.parse(reference.MAGIC_SQUARE_WORD)
    assert stats(w) == (1, 1, 1)
    assert is_sbc(w)
    assert word_to_decks(w) == DeckSet(reference.MAGIC_SQUARE_DECKS)
    assert decks_to_word(DeckSet(reference.MAGIC_SQUARE_DECKS)) == w


def test_word_rejects_foreign_letters():
    with pytest.raises(DimensionError):
        Word((1, 4), 3)


def test_decks_to_word_needs_normalized_decks():
    with pytest.raises(NormalizationError):
        decks_to_word(DeckSet(((1, 2), (2, 3))))
    with pytest.raises(NormalizationError):
        decks_to_word(DeckSet(((1, 5), (2,))))


def test_rank_normalize():
    assert rank_normalize([[10, 60], [30], [45]]) == DeckSet(((1, 4), (2,), (3,)))
    with pytest.raises(NormalizationError):
        rank_normalize([[1, 2], [2]])


def test_beats_count_and_efron():
    assert beats_count([1, 1, 5, 5, 5, 5], [4] * 6) == (24, 12, 0)
    assert beats_count([3, 4], [3]) == (1, 0, 1)
    assert is_suckers_bet(reference.EFRON_DICE)
    assert not is_suckers_bet([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    with pytest.raises(DimensionError):
        is_suckers_bet([[1], [2]])


@given(words3)
def test_stats_positive_iff_decks_beat_cyclically(w):
    assert is_sbc(w) == is_suckers_bet(word_to_decks(w).decks)


@given(words4)
def test_stats_positive_iff_decks_beat_cyclically_four_decks(w):
    assert is_sbc(w) == is_suckers_bet(word_to_decks(w).decks)


@given(words4)
def test_relabel_rotates_stats(w):
    s = stats(w)
    assert stats(relabel(w)) == tuple(s[(i - 1) % 4] for i in range(4))


@given(words3)
def test_reverse_negates_stats(w):
    assert stats(reverse(w)) == tuple(-x for x in stats(w))


@given(words3)
def test_canonical_cyclic_is_idempotent(w):
    c = canonical_cyclic(w)
    assert canonical_cyclic(c) == c
    assert c.letters <= w.letters


def test_cyclic_orbits_have_k_members():
    for w in words_of((2, 2, 2)):
        assert len({relabel(w, t).letters for t in range(3)}) == 3
    assert canonical_cyclic(Word.parse("132321213")) == Word.parse("132321213")


def test_words_of_counts():
    assert sum(1 for _ in words_of((2, 2, 2))) == 90
    assert [str(w) for w in words_of((1, 1, 0))] == ["12", "21"]
    assert [w.letters for w in words_of((0, 0, 0))] == [()]


def test_brute_force_small_cases():
    f = brute_force_F((1, 1, 1))
    assert lp_eval_all_ones(f) == 6
    assert lp_eval_all_ones(lp_pos(f)) == 0
    assert lp_eval_all_ones(lp_pos(brute_force_F((3, 3, 3)))) == 15
    with pytest.raises(SizeLimitError):
        brute_force_F((3, 3, 3), cap=100)
