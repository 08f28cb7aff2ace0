from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy
from loguru import logger

from app.cache import SeriesCache
from app.engine import append_shift, compute_F, layer
from app.errors import DegreeBoundError, DimensionError, DomainError, InvariantViolation
from app.laurent import TruncatedSeries, lp_moment, multinomial, ts_moments_from_series, ts_mul_binomial

Order = tuple[int, int, int]

VERIFICATION_POINTS = 3


def _check_order(order: Sequence[int]) -> Order:
    order = tuple(int(x) for x in order)
    if len(order) != 3 or any(x < 0 for x in order):
        raise DimensionError(f"moment order must be three non-negative integers, got {order}")
    return order  # type: ignore[return-value]


def _check_n(n: int) -> int:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n


def diagonal_series(n_max: int, box: Sequence[int], D: int, k: int = 3) -> dict[int, TruncatedSeries]:
    """Truncated series of F(n, ..., n) at q = 1 + p for n = 0..n_max, from one DP run."""
    a = (n_max,) * k
    origin = (0,) * k
    prev = {origin: TruncatedSeries.one(k, D, box)}
    out = {0: prev[origin]}
    for total in range(1, k * n_max + 1):
        cur: dict[tuple[int, ...], TruncatedSeries] = {}
        for b in layer(a, total):
            acc: TruncatedSeries | None = None
            for j in range(k):
                if b[j] == 0:
                    continue
                src = prev[b[:j] + (b[j] - 1,) + b[j + 1 :]]
                term = ts_mul_binomial(src, append_shift(b, j))
                acc = term if acc is None else acc + term
            cur[b] = acc
        if total % k == 0:
            n = total // k
            out[n] = cur[(n,) * k]
            logger.debug(f"diagonal series n={n} ready")
        prev = cur
    return out


def new_series_cache() -> SeriesCache:
    return SeriesCache(diagonal_series)


# ======================= exact moments =======================


def exact_moment(
    n: int,
    order: Sequence[int],
    cache: SeriesCache | None = None,
    method: str = "series",
) -> Fraction:
    """E[s_1^i1 s_2^i2 s_3^i3] over W(n, n, n), exactly."""
    _check_n(n)
    order = _check_order(order)
    words = multinomial((n, n, n))
    if method == "full":
        return Fraction(lp_moment(compute_F((n, n, n)), order), words)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    cache = cache or new_series_cache()
    s = cache.get(n, order, sum(order))
    return ts_moments_from_series(s, order) / words


def moment_table(n: int, max_total: int, cache: SeriesCache | None = None) -> dict[Order, Fraction]:
    """All mixed moments with i1 + i2 + i3 <= max_total from a single series."""
    _check_n(n)
    cache = cache or new_series_cache()
    s = cache.get(n, (max_total,) * 3, max_total)
    words = multinomial((n, n, n))
    out: dict[Order, Fraction] = {}
    for total in range(max_total + 1):
        for i in range(total + 1):
            for j in range(total - i + 1):
                order = (i, j, total - i - j)
                out[order] = ts_moments_from_series(s, order) / words
    return out


def variance_closed_form(n: int) -> Fraction:
    return Fraction(n * n * (2 * n + 1), 3)


def kurtosis_closed_form(n: int) -> Fraction:
    return Fraction(3 * (10 * n * n - n - 4), 5 * n * (2 * n + 1))


def kurtosis(n: int, cache: SeriesCache | None = None) -> Fraction:
    m = moment_table(n, 4, cache)
    return m[(0, 0, 4)] / m[(0, 0, 2)] ** 2


def correlation(n: int, cache: SeriesCache | None = None) -> Fraction:
    m = moment_table(n, 2, cache)
    return m[(0, 1, 1)] / m[(0, 0, 2)]


def scaled_moment(n: int, order: Sequence[int], cache: SeriesCache | None = None) -> Fraction:
    """Moment divided by sigma(n)^(i1+i2+i3), sigma(n)^2 = n^2 (2n+1)/3.

    Odd totals vanish by reversal antisymmetry, so the value is always rational.
    """
    order = _check_order(order)
    m = exact_moment(n, order, cache)
    total = sum(order)
    if total % 2:
        if m:
            raise InvariantViolation(f"odd-order moment {order} at n={n} is {m}, expected 0", (n, order))
        return Fraction(0)
    return m / variance_closed_form(n) ** (total // 2)


def scaled_convergence(order: Sequence[int], n_max: int, cache: SeriesCache | None = None) -> list[tuple[int, Fraction]]:
    order = _check_order(order)
    cache = cache or new_series_cache()
    cache.get(1, order, sum(order), n_max=n_max)
    return [(n, scaled_moment(n, order, cache)) for n in range(1, n_max + 1)]


# ======================= closed forms =======================


@dataclass(frozen=True)
class MomentPolynomial:
    """Closed form of M(i1, i2, i3) as a polynomial in n; coeffs in ascending powers."""

    order: Order
    coeffs: tuple[Fraction, ...]

    def __call__(self, n: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def integer_form(self) -> tuple[int, list[int], int]:
        """(D, integer coefficients in descending powers, j) with M = n^j (sum c_i n^i) / D."""
        den = math.lcm(*(c.denominator for c in self.coeffs))
        low = next((i for i, c in enumerate(self.coeffs) if c), 0)
        ints = [int(c * den) for c in self.coeffs[low:]]
        g = math.gcd(den, *ints)
        return den // g, [x // g for x in reversed(ints)], low

    def as_sympy(self, var: str = "n") -> sympy.Expr:
        x = sympy.Symbol(var)
        return sum(
            (sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(self.coeffs)),
            sympy.Integer(0),
        )

    def factored(self, var: str = "n") -> str:
        return str(sympy.factor(self.as_sympy(var)))


def default_degree_bound(order: Sequence[int]) -> int:
    return math.ceil(3 * sum(order) / 2) + 2


def interpolate(points: Sequence[tuple[int, Fraction]]) -> tuple[Fraction, ...]:
    """Exact Newton interpolation; returns ascending monomial coefficients."""
    xs = [Fraction(x) for x, _ in points]
    a = [Fraction(y) for _, y in points]
    m = len(a)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            a[i] = (a[i] - a[i - 1]) / (xs[i] - xs[i - level])
    poly = [a[-1]]
    for i in range(m - 2, -1, -1):
        # poly * (x - xs[i]) + a[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j + 1] += c
            nxt[j] -= xs[i] * c
        nxt[0] += a[i]
        poly = nxt
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def fit_moment_polynomial(
    order: Sequence[int],
    degree_bound: int | None = None,
    cache: SeriesCache | None = None,
) -> MomentPolynomial:
    """Interpolate M(order) through n = 1..bound+1 and check it on the next few n."""
    order = _check_order(order)
    bound = default_degree_bound(order) if degree_bound is None else degree_bound
    if bound < 0:
        raise DegreeBoundError(f"degree bound must be >= 0, got {bound}")
    n_fit = bound + 1
    n_max = n_fit + VERIFICATION_POINTS
    cache = cache or new_series_cache()
    cache.get(1, order, sum(order), n_max=n_max)
    values = [(n, exact_moment(n, order, cache)) for n in range(1, n_max + 1)]
    poly = MomentPolynomial(order, interpolate(values[:n_fit]))
    for n, v in values[n_fit:]:
        if poly(n) != v:
            raise DegreeBoundError(
                f"fit of M{order} with degree bound {bound} misses n={n}: {poly(n)} != {v}; raise the bound"
            )
    logger.info(f"M{order} is a polynomial of degree {poly.degree} in n")
    return poly
