from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from sympy.functions.combinatorial.numbers import stirling

from app.errors import DimensionError, PrecisionError

ExponentVector = tuple[int, ...]


def graded_lex_key(e: ExponentVector) -> tuple[int, ExponentVector]:
    return sum(e), e


def multinomial(a: Sequence[int]) -> int:
    """(a_1+...+a_k)! / (a_1! ... a_k!)"""
    if any(x < 0 for x in a):
        return 0
    out = math.factorial(sum(a))
    for x in a:
        out //= math.factorial(x)
    return out


def generalized_binomial(x: int, j: int) -> int:
    """C(x, j) = x(x-1)...(x-j+1)/j!, also for negative x."""
    if j < 0:
        return 0
    num = 1
    for i in range(j):
        num *= x - i
    return num // math.factorial(j)


def _check_len(vec: Sequence[int], k: int, what: str) -> None:
    if len(vec) != k:
        raise DimensionError(f"{what} has length {len(vec)}, expected k={k}")


# ======================= LaurentPoly =======================


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Sparse Laurent polynomial in q_1..q_k with exact integer coefficients.

    `terms` maps exponent vectors to nonzero coefficients and is read-only.
    """

    k: int
    terms: Mapping[ExponentVector, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[ExponentVector, int] = {}
        for e, c in self.terms.items():
            e = tuple(e)
            _check_len(e, self.k, "exponent vector")
            if c:
                clean[e] = c
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def zero(cls, k: int) -> LaurentPoly:
        return cls(k, {})

    @classmethod
    def one(cls, k: int) -> LaurentPoly:
        return cls(k, {(0,) * k: 1})

    @classmethod
    def monomial(cls, e: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls(len(e), {tuple(e): c})

    @classmethod
    def from_terms(cls, k: int, items: Iterable[tuple[Sequence[int], int]]) -> LaurentPoly:
        acc: dict[ExponentVector, int] = {}
        for e, c in items:
            e = tuple(e)
            acc[e] = acc.get(e, 0) + c
        return cls(k, acc)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[ExponentVector, int]]:
        for e in sorted(self.terms, key=graded_lex_key):
            yield e, self.terms[e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.k == other.k and dict(self.terms) == dict(other.terms)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        return lp_add(self, other)

    def __repr__(self) -> str:
        if not self.terms:
            return f"LaurentPoly(k={self.k}, 0)"
        shown = " + ".join(f"{c}*q^{list(e)}" for e, c in list(self)[:6])
        more = f" + ... ({len(self)} terms)" if len(self) > 6 else ""
        return f"LaurentPoly(k={self.k}, {shown}{more})"

    def negate_exponents(self) -> LaurentPoly:
        """q_i -> 1/q_i"""
        return LaurentPoly(self.k, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def permute_variables(self, shift: int = 1) -> LaurentPoly:
        """Cyclic permutation of the variables: new exponent i is old exponent i - shift."""
        k = self.k
        return LaurentPoly(
            k, {tuple(e[(i - shift) % k] for i in range(k)): c for e, c in self.terms.items()}
        )

    def dumps(self) -> str:
        return dumps(self)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.k != b.k:
        raise DimensionError(f"cannot add polynomials in {a.k} and {b.k} variables")
    acc = dict(a.terms)
    for e, c in b.terms.items():
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly(a.k, acc)


def lp_mul_monomial(p: LaurentPoly, delta: Sequence[int], c: int = 1) -> LaurentPoly:
    _check_len(delta, p.k, "shift")
    return LaurentPoly(
        p.k,
        {tuple(x + d for x, d in zip(e, delta)): v * c for e, v in p.terms.items()},
    )


def lp_eval_all_ones(p: LaurentPoly) -> int:
    return sum(p.terms.values())


def lp_pos(p: LaurentPoly) -> LaurentPoly:
    """Keep the monomials whose exponents are all >= 1."""
    return LaurentPoly(p.k, {e: c for e, c in p.terms.items() if all(x >= 1 for x in e)})


def lp_moment(p: LaurentPoly, order: Sequence[int]) -> int:
    """Sum of coeff * prod(e_t ** order_t), i.e. prod (q_t d/dq_t)^order_t at q = 1."""
    _check_len(order, p.k, "moment order")
    total = 0
    for e, c in p.terms.items():
        term = c
        for x, r in zip(e, order):
            if r:
                term *= x**r
        total += term
    return total


def dumps(p: LaurentPoly) -> str:
    """One `coeff e1 ... ek` line per term, graded-lex order."""
    return "".join(f"{c} {' '.join(map(str, e))}\n" for e, c in p)


def loads(text: str, k: int | None = None) -> LaurentPoly:
    rows: list[tuple[ExponentVector, int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        c, *e = (int(x) for x in parts)
        if k is None:
            k = len(e)
        if len(e) != k:
            raise DimensionError(f"line {lineno}: expected {k} exponents, got {len(e)}")
        rows.append((tuple(e), c))
    if k is None:
        raise DimensionError("cannot infer the number of variables from an empty dump")
    return LaurentPoly.from_terms(k, rows)


# ======================= TruncatedSeries =======================


@lru_cache(maxsize=64)
def _degree_mask(shape: tuple[int, ...], D: int) -> np.ndarray:
    mask = np.indices(shape).sum(axis=0) <= D
    mask.setflags(write=False)
    return mask


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Power series in p_1..p_k (q_t = 1 + p_t) modulo total degree > D.

    Coefficients live in a dense object array indexed by exponent vector; `box`
    optionally caps each variable separately. Both truncations are monomial
    ideals, so every retained coefficient is exact.
    """

    k: int
    D: int
    box: tuple[int, ...]
    array: np.ndarray

    @classmethod
    def one(cls, k: int, D: int, box: Sequence[int] | None = None) -> TruncatedSeries:
        box = _normalize_box(k, D, box)
        arr = np.zeros(tuple(b + 1 for b in box), dtype=object)
        arr[(0,) * k] = 1
        return cls(k, D, box, arr)

    @property
    def coeffs(self) -> dict[ExponentVector, int | Fraction]:
        mask = _degree_mask(self.array.shape, self.D)
        out: dict[ExponentVector, int | Fraction] = {}
        for idx in zip(*np.nonzero(mask)):
            m = tuple(int(x) for x in idx)
            c = self.array[m]
            if c:
                out[m] = c
        return out

    def __getitem__(self, m: Sequence[int]) -> int | Fraction:
        m = tuple(m)
        if sum(m) > self.D or any(x > b for x, b in zip(m, self.box)):
            raise PrecisionError(f"coefficient {m} lies beyond the truncation (D={self.D}, box={self.box})")
        return self.array[m]

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        if (self.k, self.D, self.box) != (other.k, other.D, other.box):
            raise DimensionError("cannot add series with different truncations")
        return TruncatedSeries(self.k, self.D, self.box, self.array + other.array)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]


def _normalize_box(k: int, D: int, box: Sequence[int] | None) -> tuple[int, ...]:
    if D < 0:
        raise PrecisionError(f"truncation degree must be >= 0, got {D}")
    if box is None:
        return (D,) * k
    _check_len(box, k, "box")
    return tuple(min(int(b), D) for b in box)


def ts_mul_binomial(s: TruncatedSeries, delta: Sequence[int], D: int | None = None) -> TruncatedSeries:
    """Multiply by prod (1 + p_t)^delta_t, truncated at total degree D."""
    _check_len(delta, s.k, "shift")
    D = s.D if D is None else min(D, s.D)
    out = s.array
    for t, d in enumerate(delta):
        if d == 0:
            continue
        length = out.shape[t]
        res = out.copy()
        dst = [slice(None)] * s.k
        src = [slice(None)] * s.k
        for j in range(1, length):
            b = generalized_binomial(d, j)
            if b == 0:
                break
            dst[t] = slice(j, None)
            src[t] = slice(0, length - j)
            res[tuple(dst)] += b * out[tuple(src)]
        out = res
    if out is s.array:
        out = out.copy()
    out[~_degree_mask(out.shape, D)] = 0
    return TruncatedSeries(s.k, D, s.box, out)


def series_from_laurent(p: LaurentPoly, D: int, box: Sequence[int] | None = None) -> TruncatedSeries:
    """Expand p(1 + p_1, ..., 1 + p_k) directly; the oracle for the series DP."""
    s = TruncatedSeries.one(p.k, D, box)
    arr = np.zeros_like(s.array)
    mask = _degree_mask(arr.shape, D)
    indices = [tuple(int(x) for x in idx) for idx in zip(*np.nonzero(mask))]
    for e, c in p.terms.items():
        for m in indices:
            term = c
            for x, j in zip(e, m):
                term *= generalized_binomial(x, j)
                if not term:
                    break
            arr[m] += term
    return TruncatedSeries(p.k, D, s.box, arr)


def factorial_moment(s: TruncatedSeries, order: Sequence[int]) -> int | Fraction:
    """Sum over words of prod_t s_t (s_t - 1) ... (s_t - order_t + 1)."""
    order = tuple(order)
    _check_len(order, s.k, "moment order")
    c = s[order]
    for r in order:
        c *= math.factorial(r)
    return c


def ts_moments_from_series(s: TruncatedSeries, order: Sequence[int]) -> Fraction:
    """Power moment sum_w prod_t s_t(w)^order_t recovered from the series.

    x^r = sum_j S(r, j) (x)_j with Stirling numbers of the second kind, and the
    coefficient of p^j is sum_w prod C(s_t, j_t).
    """
    order = tuple(order)
    _check_len(order, s.k, "moment order")
    if sum(order) > s.D or any(r > b for r, b in zip(order, s.box)):
        raise PrecisionError(
            f"moment order {order} needs truncation degree {sum(order)}, series has D={s.D}, box={s.box}"
        )
    weights = [
        [int(stirling(r, j)) * math.factorial(j) for j in range(r + 1)]
        for r in order
    ]
    total = Fraction(0)
    for idx in np.ndindex(*(r + 1 for r in order)):
        w = 1
        for t, j in enumerate(idx):
            w *= weights[t][j]
            if not w:
                break
        if w:
            total += w * s.array[idx]
    return total
