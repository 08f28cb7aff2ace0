from __future__ import annotations

from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app import reference
from app.dice import (
    DiceSet,
    StepPath,
    canonical_rotation,
    enumerate_tieless,
    generalized_stats,
    iter_tieless_paths,
    path_to_dice,
    rotate,
    verify_dice_cycle,
    word_to_path,
)
from app.errors import DimensionError, SizeLimitError, UnsupportedSymmetryError
from app.words import Word, stats

words = st.lists(st.integers(1, 4), max_size=10).map(lambda xs: Word(tuple(xs), 4))
steps = st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), max_size=6)


@given(words)
def test_unit_steps_reproduce_word_stats(w):
    assert generalized_stats(word_to_path(w)) == stats(w)


@given(steps)
def test_stats_are_cyclic_win_margins(raw):
    p = StepPath(3, tuple(raw))
    d = path_to_dice(p)
    if all(d.dice):
        assert generalized_stats(p) == verify_dice_cycle(d).margins


def test_repeated_axes_keep_separate_denominations():
    p = StepPath(2, ((1, 1), (1, 2), (2, 1)))
    assert p.steps == ((1, 1), (1, 2), (2, 1))
    assert path_to_dice(p) == DiceSet(((1, 2, 2), (3,)))
    with pytest.raises(DimensionError):
        StepPath(3, ((4, 1),))
    with pytest.raises(DimensionError):
        StepPath(3, ((1, 0),))


def _tieless_by_brute_force(faces, m):
    """Every assignment of denominations 1..m to faces, one die per denomination, that beats cyclically."""
    per_die = [list(combinations_with_replacement(range(1, m + 1), f)) for f in faces]
    out = set()
    for dice in product(*per_die):
        owners = [set(d) for d in dice]
        if sum(len(o) for o in owners) != m or set().union(*owners) != set(range(1, m + 1)):
            continue
        if verify_dice_cycle(dice).ok:
            out.add(DiceSet(dice).dice)
    return out


@pytest.mark.parametrize("faces", [(2, 2, 2), (1, 2, 3), (2, 1, 2)])
def test_search_finds_every_tieless_set(faces):
    for m in range(3, sum(faces) + 1):
        found = [d.dice for d in enumerate_tieless(3, faces, m)]
        assert len(found) == len(set(found))
        assert set(found) == _tieless_by_brute_force(faces, m), m


def test_efron_path():
    p = StepPath.from_points(reference.EFRON_POINTS)
    assert len(p) == 7
    assert p.endpoint() == (6, 6, 6, 6)
    assert p.points() == list(reference.EFRON_POINTS)
    d = path_to_dice(p)
    assert d == DiceSet(reference.EFRON_DICE)
    assert d.is_tieless() and d.m == 7
    assert generalized_stats(p) == (12, 12, 12, 12)


def test_from_points_rejects_diagonal_moves():
    with pytest.raises(DimensionError):
        StepPath.from_points([(0, 0, 0), (1, 1, 0)])


def test_efron_cycle_report():
    report = verify_dice_cycle(reference.EFRON_DICE)
    assert report.ok
    assert report.margins == (12, 12, 12, 12)
    assert report.pairs[0] == (24, 12, 0)
    assert not verify_dice_cycle([[1, 2], [3, 4], [5, 6]]).ok


def test_ties_are_reported():
    d = DiceSet(((1, 2), (2, 3), (3, 1)))
    assert not d.is_tieless()
    assert verify_dice_cycle(d).pairs[0] == (0, 3, 1)


def test_rotation():
    p = StepPath(3, ((2, 1), (3, 2), (1, 1)))
    assert rotate(p).steps == ((3, 1), (1, 2), (2, 1))
    c = canonical_rotation(p)
    assert c.steps[0][0] == 1
    assert canonical_rotation(c) == c


def test_unique_six_denomination_set():
    sets = enumerate_tieless(4, (6, 6, 6, 6), 6, reduce=True)
    assert sets == [DiceSet(reference.SIX_DENOMINATION_DICE)]
    assert verify_dice_cycle(sets[0]).ok
    assert len(enumerate_tieless(4, (6, 6, 6, 6), 6)) == 4


def test_every_found_path_is_a_cycle():
    for p in iter_tieless_paths((2, 2, 2), 5):
        assert len(p) == 5
        assert verify_dice_cycle(path_to_dice(p)).ok


def test_dice_argument_checks():
    assert enumerate_tieless(4, (6, 6, 6, 6), 3) == []
    with pytest.raises(DimensionError):
        enumerate_tieless(4, (6, 6, 6), 6)
    with pytest.raises(DimensionError):
        enumerate_tieless(2, (3, 3), 4)
    with pytest.raises(UnsupportedSymmetryError):
        enumerate_tieless(3, (2, 3, 3), 5, reduce=True)
    with pytest.raises(SizeLimitError):
        enumerate_tieless(4, (6, 6, 6, 6), 6, cap_nodes=10)


@pytest.mark.slow
@pytest.mark.parametrize("m", [7, 8])
def test_tieless_counts(m):
    sets = enumerate_tieless(4, (6, 6, 6, 6), m, reduce=True)
    assert len(sets) == reference.TIELESS_COUNTS[m]
    if m == 7:
        assert DiceSet(reference.EFRON_DICE) in sets
        # denomination 1 of the m=6 set split across two adjacent denominations
        assert DiceSet(((1, 2, 6, 6, 6, 6), (5,) * 6, (4,) * 6, (3, 3, 3, 3, 7, 7))) in sets
