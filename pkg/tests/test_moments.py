from __future__ import annotations

from fractions import Fraction

import pytest

from app import reference
from app.cache import SeriesCache
from app.errors import DegreeBoundError, DimensionError, DomainError
from app.laurent import TruncatedSeries
from app.moments import (
    MomentPolynomial,
    correlation,
    default_degree_bound,
    diagonal_series,
    exact_moment,
    fit_moment_polynomial,
    interpolate,
    kurtosis,
    kurtosis_closed_form,
    moment_table,
    scaled_convergence,
    scaled_moment,
    variance_closed_form,
)


def test_variance_and_covariance_at_two(series_cache):
    assert exact_moment(2, (0, 0, 2), series_cache) == Fraction(20, 3)
    assert exact_moment(2, (0, 1, 1), series_cache) == Fraction(-8, 3)
    assert exact_moment(2, (1, 1, 1), series_cache) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_series_engine_matches_full_polynomial(n, series_cache):
    for order, value in moment_table(n, 4, series_cache).items():
        assert value == exact_moment(n, order, method="full"), order


def test_moments_are_invariant_under_cyclic_order_shift(series_cache):
    table = moment_table(3, 5, series_cache)
    for (i, j, k), value in table.items():
        assert table[(k, i, j)] == value


@pytest.mark.parametrize("n", range(1, 5))
def test_odd_total_moments_vanish(n, series_cache):
    for order, value in moment_table(n, 5, series_cache).items():
        if sum(order) % 2:
            assert value == 0, order


def test_kurtosis_and_correlation(series_cache):
    assert kurtosis(1, series_cache) == 1
    assert correlation(1, series_cache) == Fraction(-1, 3)
    values = [kurtosis(n, series_cache) for n in range(1, 8)]
    assert values == [kurtosis_closed_form(n) for n in range(1, 8)]
    assert all(a < b < 3 for a, b in zip(values, values[1:]))


def test_scaled_moments(series_cache):
    for n in range(1, 5):
        assert scaled_moment(n, (0, 0, 2), series_cache) == 1
        assert scaled_moment(n, (0, 1, 1), series_cache) == Fraction(-n, 2 * n + 1)
        assert scaled_moment(n, (0, 1, 2), series_cache) == 0


def test_scaled_convergence_shape(series_cache):
    rows = scaled_convergence((0, 1, 1), 6, series_cache)
    assert [n for n, _ in rows] == list(range(1, 7))
    assert rows[-1][1] == Fraction(-6, 13)


def test_interpolate_recovers_cubic():
    f = lambda x: Fraction(2, 3) * x**3 - 5 * x + Fraction(1, 7)
    coeffs = interpolate([(x, f(x)) for x in range(1, 6)])
    assert coeffs == (Fraction(1, 7), Fraction(-5), Fraction(0), Fraction(2, 3))
    assert interpolate([(1, Fraction(4))]) == (Fraction(4),)


def test_moment_polynomial_forms():
    p = MomentPolynomial((0, 0, 2), (Fraction(0), Fraction(0), Fraction(1, 3), Fraction(2, 3)))
    assert p(2) == Fraction(20, 3)
    assert p.degree == 3
    assert p.descending() == [Fraction(2, 3), Fraction(1, 3), 0, 0]
    assert p.integer_form() == (3, [2, 1], 2)
    assert "2*n + 1" in p.factored()


def test_fit_variance_and_covariance(series_cache):
    variance = fit_moment_polynomial((0, 0, 2), cache=series_cache)
    assert variance.coeffs == (0, 0, Fraction(1, 3), Fraction(2, 3))
    assert all(variance(n) == variance_closed_form(n) for n in range(1, 12))
    covariance = fit_moment_polynomial((0, 1, 1), cache=series_cache)
    assert covariance.coeffs == (0, 0, 0, Fraction(-1, 3))


def test_fit_kurtosis_ratio(series_cache):
    fourth = fit_moment_polynomial((0, 0, 4), cache=series_cache)
    second = fit_moment_polynomial((0, 0, 2), cache=series_cache)
    for n in range(1, 30):
        assert fourth(n) / second(n) ** 2 == kurtosis_closed_form(n)


def test_fit_rejects_low_degree_bound(series_cache):
    with pytest.raises(DegreeBoundError):
        fit_moment_polynomial((0, 0, 2), degree_bound=1, cache=series_cache)


def test_default_degree_bound():
    assert default_degree_bound((0, 0, 2)) == 5
    assert default_degree_bound((4, 5, 5)) == 23


def test_argument_checks():
    with pytest.raises(DomainError):
        exact_moment(0, (0, 0, 2))
    with pytest.raises(DimensionError):
        exact_moment(2, (0, 2))
    with pytest.raises(DimensionError):
        exact_moment(2, (0, -1, 2))


def test_series_cache_reuses_dominating_entries():
    built = []

    def builder(n_max, box, D):
        built.append((n_max, box, D))
        return diagonal_series(n_max, box, D)

    cache = SeriesCache(builder)
    s = cache.get(2, (2, 2, 2), 4)
    assert isinstance(s, TruncatedSeries)
    assert cache.get(2, (0, 1, 1), 2) is s
    assert cache.get(1, (1, 1, 1), 3) is not None
    assert len(built) == 1
    cache.get(3, (0, 0, 2), 2)
    assert len(built) == 2
    cache.invalidate()
    cache.get(1, (0, 0, 2), 2)
    assert len(built) == 3


@pytest.mark.slow
def test_convergence_of_222_by_40(series_cache):
    assert abs(scaled_moment(40, (2, 2, 2), series_cache) - Fraction(3, 2)) < Fraction(1, 10)


@pytest.mark.slow
def test_fit_455_matches_published_list():
    p = fit_moment_polynomial((4, 5, 5))
    assert p.degree == 21
    den, ints, low = p.integer_form()
    assert den == reference.M455_DENOMINATOR
    assert low == reference.M455_LOW_POWER
    assert ints == [reference.M455_SIGN * c for c in reference.M455_PUBLISHED]
