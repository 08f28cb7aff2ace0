from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app import reference
from app.errors import DomainError
from app.gaussian import (
    LIMIT_CORRELATION,
    GaussianSpec,
    density,
    diagonal_closed_form,
    gaussian_moment,
    gaussian_moment_by_pairings,
    gaussian_scaled_limit,
    limit_correlation,
    monte_carlo_scaled_moments,
    normalization_constant,
    quadrature_normalization,
    scaled_limit_table,
    wick_pairings,
)

correlations = st.fractions(min_value=Fraction(-1, 2), max_value=1, max_denominator=12)
orders = st.tuples(*[st.integers(0, 3)] * 3)


def test_limit_correlation_is_minus_half():
    assert limit_correlation() == LIMIT_CORRELATION == Fraction(-1, 2)


def test_pairings():
    assert sum(1 for _ in wick_pairings([0] * 6)) == 15
    assert list(wick_pairings([0, 1, 2])) == []
    assert list(wick_pairings([])) == [[]]


@given(orders, correlations)
def test_grouped_wick_sum_matches_pairings(order, r):
    cov = GaussianSpec(r).covariance()
    assert gaussian_moment(order, cov) == gaussian_moment_by_pairings(order, cov)


def test_scaled_limit_table_matches_published_values():
    table = {e.order: e.value for e in scaled_limit_table(5)}
    assert len(table) == 28
    assert table == reference.SCALED_LIMITS


def test_scaled_limit_spot_values():
    assert gaussian_scaled_limit((0, 1, 1)) == Fraction(-1, 2)
    assert gaussian_scaled_limit((0, 0, 4)) == 3
    assert gaussian_scaled_limit((1, 1, 1)) == 0


@pytest.mark.parametrize("n", range(6))
def test_diagonal_closed_form(n):
    assert diagonal_closed_form(n) == gaussian_scaled_limit((2 * n,) * 3)


def test_diagonal_closed_form_small_values():
    assert diagonal_closed_form(0) == 1
    assert diagonal_closed_form(1) == Fraction(3, 2)
    assert diagonal_closed_form(2) == Fraction(135, 2)
    with pytest.raises(DomainError):
        diagonal_closed_form(-1)


def test_gaussian_spec_range():
    with pytest.raises(DomainError):
        GaussianSpec(Fraction(-3, 4))
    assert GaussianSpec(Fraction(1)).covariance()[0][1] == 1


def test_normalization_constant():
    assert normalization_constant(Fraction(0)).evaluate() == pytest.approx((2 * math.pi) ** 1.5, rel=1e-15)
    half = normalization_constant(Fraction(1, 2))
    assert (half.coefficient, half.radicand) == (Fraction(1, 1), Fraction(2))
    assert "sqrt(2)" in str(half)
    for c in (Fraction(1), Fraction(-1, 2), Fraction(3, 2)):
        with pytest.raises(DomainError):
            normalization_constant(c)


def test_normalization_blows_up_towards_one():
    values = [normalization_constant(Fraction(1) - Fraction(1, 10**j)).evaluate() for j in range(1, 6)]
    assert values == sorted(values)
    assert values[-1] > 1e5


def test_density_at_origin():
    assert density(0.0, 0.0, 0.0, Fraction(0)) == pytest.approx((2 * math.pi) ** -1.5)


@pytest.mark.slow
@pytest.mark.parametrize("c", [Fraction(0), Fraction(1, 4), Fraction(1, 2)])
def test_quadrature_matches_closed_form(c):
    assert abs(quadrature_normalization(c) - normalization_constant(c).evaluate()) < 1e-8


@pytest.mark.slow
def test_monte_carlo_agrees_with_exact_limits():
    estimates = monte_carlo_scaled_moments(draws=10**6, seed=1)
    for order, (mean, se) in estimates.items():
        if order not in reference.SCALED_LIMITS:
            continue
        assert abs(mean - float(reference.SCALED_LIMITS[order])) < 5 * se + 1e-12, order
