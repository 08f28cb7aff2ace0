from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np
import sympy
from loguru import logger
from scipy import integrate

from app.errors import DomainError

LIMIT_CORRELATION = Fraction(-1, 2)


@dataclass(frozen=True)
class GaussianSpec:
    """Standardized trivariate Gaussian with common pairwise correlation r."""

    r: Fraction
    dimension: int = 3

    def __post_init__(self) -> None:
        lo = Fraction(-1, self.dimension - 1) if self.dimension > 1 else Fraction(-1)
        if not lo <= self.r <= 1:
            raise DomainError(f"correlation {self.r} makes the covariance indefinite (need {lo} <= r <= 1)")

    def covariance(self) -> list[list[Fraction]]:
        d = self.dimension
        return [[Fraction(1) if i == j else self.r for j in range(d)] for i in range(d)]


@dataclass(frozen=True)
class ScaledLimit:
    order: tuple[int, ...]
    value: Fraction


def _to_fraction(x: sympy.Expr) -> Fraction:
    x = sympy.nsimplify(x)
    return Fraction(int(x.p), int(x.q))


def precision_matrix(c: sympy.Expr) -> sympy.Matrix:
    """Quadratic form of f(x, y, z; c): unit diagonal, c off the diagonal."""
    return sympy.Matrix(3, 3, lambda i, j: 1 if i == j else c)


def limit_correlation() -> Fraction:
    """Pairwise correlation of f(x, y, z; c) as c -> 1-, by exact inversion of the precision matrix."""
    c = sympy.Symbol("c", real=True)
    cov = precision_matrix(c).inv()
    corr = sympy.simplify(cov[0, 1] / cov[0, 0])
    limit = sympy.limit(corr, c, 1, dir="-")
    logger.debug(f"correlation of f(x,y,z;c) is {corr}, limit {limit}")
    return _to_fraction(limit)


# ======================= Isserlis / Wick =======================


def wick_pairings(items: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """Every perfect matching of positions 0..len(items)-1, as lists of index pairs."""

    def rec(rest: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
        if not rest:
            yield []
            return
        first = rest[0]
        for pos in range(1, len(rest)):
            other = rest[pos]
            remaining = rest[1:pos] + rest[pos + 1 :]
            for tail in rec(remaining):
                yield [(first, other)] + tail

    if len(items) % 2:
        return
    yield from rec(tuple(range(len(items))))


def _labels(order: Sequence[int]) -> list[int]:
    return [t for t, r in enumerate(order) for _ in range(r)]


def gaussian_moment_by_pairings(order: Sequence[int], cov: Sequence[Sequence[Fraction]]) -> Fraction:
    """E[prod X_t^order_t] summed over matchings one by one; the oracle for gaussian_moment."""
    labels = _labels(order)
    total = Fraction(0)
    for matching in wick_pairings(labels):
        term = Fraction(1)
        for i, j in matching:
            term *= cov[labels[i]][labels[j]]
        total += term
    return total


def gaussian_moment(order: Sequence[int], cov: Sequence[Sequence[Fraction]]) -> Fraction:
    """Centered Gaussian mixed moment via the Wick sum, grouping matchings by label.

    The first remaining item pairs with each other item; items sharing a label
    contribute identically, so E[X^a] = sum_v cov(u, v) * (a_v - [u == v]) * E[X^(a - e_u - e_v)].
    """
    memo: dict[tuple[int, ...], Fraction] = {}

    def rec(a: tuple[int, ...]) -> Fraction:
        if sum(a) % 2:
            return Fraction(0)
        u = next((t for t, x in enumerate(a) if x), None)
        if u is None:
            return Fraction(1)
        if a in memo:
            return memo[a]
        acc = Fraction(0)
        left = list(a)
        left[u] -= 1
        for v, count in enumerate(left):
            if count and cov[u][v]:
                rest = list(left)
                rest[v] -= 1
                acc += cov[u][v] * count * rec(tuple(rest))
        memo[a] = acc
        return acc

    return rec(tuple(int(x) for x in order))


def gaussian_scaled_limit(order: Sequence[int], r: Fraction = LIMIT_CORRELATION) -> Fraction:
    """S(i1, i2, i3): moment of the standardized limit Gaussian with pairwise correlation r."""
    return gaussian_moment(order, GaussianSpec(Fraction(r), len(order)).covariance())


def scaled_limit_table(max_order: int = 5, r: Fraction = LIMIT_CORRELATION) -> list[ScaledLimit]:
    """S over i1 <= i2 <= i3 <= max_order with even total."""
    out = []
    for i1 in range(max_order + 1):
        for i2 in range(i1, max_order + 1):
            for i3 in range(i2, max_order + 1):
                if (i1 + i2 + i3) % 2 == 0:
                    order = (i1, i2, i3)
                    out.append(ScaledLimit(order, gaussian_scaled_limit(order, r)))
    return out


def diagonal_closed_form(n: int) -> Fraction:
    """S(2n, 2n, 2n) = (3n)! (2n)! / (8^n (n!)^2)"""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return Fraction(math.factorial(3 * n) * math.factorial(2 * n), 8**n * math.factorial(n) ** 2)


# ======================= the density f(x, y, z; c) =======================


@dataclass(frozen=True)
class NormalizationConstant:
    """coefficient * (2 pi)^pi_power * sqrt(radicand)"""

    coefficient: Fraction
    pi_power: Fraction
    radicand: Fraction

    def evaluate(self) -> float:
        return float(self.coefficient) * (2 * math.pi) ** float(self.pi_power) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        root = "" if self.radicand == 1 else f" * sqrt({self.radicand})"
        return f"{self.coefficient} * (2*pi)^({self.pi_power}){root}"


def _check_c(c: Fraction) -> Fraction:
    c = Fraction(c)
    if not Fraction(-1, 2) < c < 1:
        raise DomainError(f"c={c} is outside (-1/2, 1), where f is not normalizable")
    return c


def normalization_constant(c: Fraction) -> NormalizationConstant:
    """N(c) = (2 pi)^(3/2) / ((1 - c) sqrt(1 + 2c)), with the root moved to the numerator."""
    c = _check_c(c)
    return NormalizationConstant(
        coefficient=1 / ((1 - c) * (1 + 2 * c)),
        pi_power=Fraction(3, 2),
        radicand=1 + 2 * c,
    )


def density_kernel(x: float, y: float, z: float, c: float) -> float:
    return math.exp(-(x * x + y * y + z * z) / 2 - c * (x * y + x * z + y * z))


def density(x: float, y: float, z: float, c: Fraction) -> float:
    return density_kernel(x, y, z, float(c)) / normalization_constant(c).evaluate()


def quadrature_normalization(c: Fraction, epsabs: float = 1e-10, epsrel: float = 1e-10) -> float:
    """Integral of the unnormalized kernel over R^3, by nested adaptive quadrature."""
    c = _check_c(c)
    cf = float(c)
    # largest covariance eigenvalue is 1/(1 - c) or 1/(1 + 2c)
    sd = math.sqrt(max(1 / (1 - cf), 1 / (1 + 2 * cf)))
    half = 12 * sd
    value, err = integrate.tplquad(
        lambda z, y, x: density_kernel(x, y, z, cf),
        -half, half,
        -half, half,
        -half, half,
        epsabs=epsabs,
        epsrel=epsrel,
    )
    logger.debug(f"quadrature N({c}) = {value} +- {err}")
    return value


def monte_carlo_scaled_moments(
    draws: int = 10**6,
    seed: int = 0,
    max_total: int = 6,
    r: float = -0.5,
) -> dict[tuple[int, int, int], tuple[float, float]]:
    """Sample estimates (mean, standard error) of S for sorted orders with even total <= max_total."""
    cov = np.full((3, 3), r) + (1 - r) * np.eye(3)
    rng = np.random.default_rng(seed)
    x = rng.multivariate_normal(np.zeros(3), cov, size=draws, method="eigh")
    out = {}
    for total in range(2, max_total + 1, 2):
        for i1 in range(total + 1):
            for i2 in range(i1, total - i1 + 1):
                i3 = total - i1 - i2
                if i3 < i2:
                    continue
                prod = x[:, 0] ** i1 * x[:, 1] ** i2 * x[:, 2] ** i3
                out[(i1, i2, i3)] = (float(prod.mean()), float(prod.std(ddof=1) / math.sqrt(draws)))
    return out
