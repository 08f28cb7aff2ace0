from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.errors import DimensionError, PrecisionError
from app.laurent import (
    LaurentPoly,
    TruncatedSeries,
    factorial_moment,
    generalized_binomial,
    loads,
    lp_add,
    lp_eval_all_ones,
    lp_moment,
    lp_mul_monomial,
    lp_pos,
    multinomial,
    series_from_laurent,
    ts_moments_from_series,
    ts_mul_binomial,
)

exponents = st.tuples(*[st.integers(-3, 3)] * 3)
polys = st.lists(st.tuples(exponents, st.integers(-5, 5)), max_size=6).map(
    lambda items: LaurentPoly.from_terms(3, items)
)


def test_multinomial():
    assert multinomial((1, 1, 1)) == 6
    assert multinomial((3, 3, 3)) == 1680
    assert multinomial((0, 0, 0)) == 1
    assert multinomial((2, -1, 0)) == 0


def test_generalized_binomial_negative_top():
    assert generalized_binomial(-2, 3) == -4
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(2, 3) == 0
    assert generalized_binomial(7, 0) == 1


def test_zero_coefficients_are_dropped():
    p = LaurentPoly.from_terms(2, [((1, 0), 2), ((1, 0), -2), ((0, -1), 3)])
    assert dict(p.terms) == {(0, -1): 3}
    assert p == LaurentPoly.monomial((0, -1), 3)


def test_iteration_is_graded_lex():
    p = LaurentPoly(2, {(2, 0): 1, (-1, 0): 1, (0, 1): 1, (1, 0): 1})
    assert [e for e, _ in p] == [(-1, 0), (0, 1), (1, 0), (2, 0)]


def test_add_and_shift():
    p = LaurentPoly(3, {(0, 0, 0): 1, (1, -1, 0): 2})
    q = lp_mul_monomial(p, (1, 1, 1), 3)
    assert dict(q.terms) == {(1, 1, 1): 3, (2, 0, 1): 6}
    assert lp_add(p, LaurentPoly.monomial((1, -1, 0), -2)) == LaurentPoly.one(3)
    with pytest.raises(DimensionError):
        lp_add(p, LaurentPoly.one(2))


def test_pos_and_evaluation():
    p = LaurentPoly(2, {(1, 1): 4, (1, 0): 5, (2, 3): 1})
    assert lp_eval_all_ones(p) == 10
    assert dict(lp_pos(p).terms) == {(1, 1): 4, (2, 3): 1}


def test_moment_of_explicit_poly():
    p = LaurentPoly(2, {(2, -1): 3, (1, 1): 1})
    # 3 * 2^2 * (-1) + 1
    assert lp_moment(p, (2, 1)) == -11
    assert lp_moment(p, (0, 0)) == 4


def test_symmetry_helpers():
    p = LaurentPoly(3, {(1, 2, 3): 1})
    assert p.negate_exponents() == LaurentPoly.monomial((-1, -2, -3))
    assert p.permute_variables(1) == LaurentPoly.monomial((3, 1, 2))


def test_dump_format_and_parse():
    p = LaurentPoly(3, {(1, -1, 0): 2, (0, 0, 0): -7})
    text = p.dumps()
    assert text == "-7 0 0 0\n2 1 -1 0\n"
    assert loads(text) == p
    with pytest.raises(DimensionError):
        loads("1 0 0\n2 1 1 1\n")
    with pytest.raises(DimensionError):
        loads("")


@given(exponents)
def test_binomial_shift_matches_direct_expansion(e):
    one = TruncatedSeries.one(3, 4)
    assert ts_mul_binomial(one, e) == series_from_laurent(LaurentPoly.monomial(e), 4)


@given(polys, st.tuples(*[st.integers(0, 2)] * 3))
def test_series_moments_match_direct_moments(p, order):
    s = series_from_laurent(p, 6)
    assert ts_moments_from_series(s, order) == Fraction(lp_moment(p, order))


def test_factorial_moment_reads_one_coefficient():
    # s = 3: falling factorial 3*2 = 6
    s = series_from_laurent(LaurentPoly.monomial((3,)), 3)
    assert factorial_moment(s, (2,)) == 6


def test_truncation_is_enforced():
    s = TruncatedSeries.one(3, 2, box=(1, 1, 2))
    with pytest.raises(PrecisionError):
        s[(0, 0, 3)]
    with pytest.raises(PrecisionError):
        s[(2, 0, 0)]
    with pytest.raises(PrecisionError):
        ts_moments_from_series(s, (0, 2, 0))
    with pytest.raises(PrecisionError):
        TruncatedSeries.one(3, -1)
