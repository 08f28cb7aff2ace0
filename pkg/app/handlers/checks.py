from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator

import sympy
from loguru import logger

from app import engine, reference
from app.config import RunConfig
from app.dice import enumerate_tieless
from app.errors import InvariantViolation, SuckersBetError
from app.gaussian import (
    LIMIT_CORRELATION,
    diagonal_closed_form,
    gaussian_scaled_limit,
    limit_correlation,
    normalization_constant,
    quadrature_normalization,
    scaled_limit_table,
)
from app.handlers.common import emit, to_json
from app.moments import (
    fit_moment_polynomial,
    kurtosis_closed_form,
    moment_table,
    new_series_cache,
    scaled_moment,
)
from app.words import DeckSet, brute_force_F, decks_to_word, is_sbc, is_suckers_bet, stats, word_to_decks, words_of


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skip
    detail: str = ""
    counterexample: Any = None
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "counterexample": None if self.counterexample is None else str(self.counterexample),
            "seconds": round(self.seconds, 3),
        }


def count_vectors(k: int, max_total: int) -> Iterator[tuple[int, ...]]:
    """Every a in N^k with sum(a) <= max_total, smallest totals first."""
    for total in range(max_total + 1):
        yield from engine.layer((total,) * k, total)


# ======================= oracle checks =======================


def check_dp_vs_brute(k: int, max_total: int, cap: int = 10**6) -> CheckResult:
    """DP weight enumerator against the brute-force sum, termwise."""
    name = f"dp==brute k={k} total<={max_total}"
    checked = 0
    for a in count_vectors(k, max_total):
        dp = engine.compute_F(a)
        bf = brute_force_F(a, cap)
        if dp != bf:
            # smallest total first, so the first mismatch is a minimal one
            diff = sorted(
                (e, dp.terms.get(e, 0), bf.terms.get(e, 0))
                for e in set(dp.terms) | set(bf.terms)
                if dp.terms.get(e, 0) != bf.terms.get(e, 0)
            )
            e, got, want = diff[0]
            return CheckResult(
                name, "fail", f"F{a} at q^{e}: dp={got} brute={want}", counterexample=a
            )
        checked += 1
    return CheckResult(name, "pass", f"{checked} count vectors")


def check_proposition(max_letters: int, k: int = 3) -> CheckResult:
    """(SBC) on the word agrees with pairwise deck dominance for every word of <= max_letters letters."""
    name = f"stats>0 <=> sucker's bet, words<={max_letters}"
    checked = 0
    for a in count_vectors(k, max_letters):
        for w in words_of(a):
            d = word_to_decks(w)
            if is_sbc(w) != is_suckers_bet(d.decks) or decks_to_word(d) != w:
                return CheckResult(name, "fail", f"stats={stats(w)}", counterexample=str(w))
            checked += 1
    return CheckResult(name, "pass", f"{checked} words")


def check_symmetries(n_max: int, k: int = 3) -> CheckResult:
    name = f"reversal and cyclic symmetry n<={n_max}"
    for n in range(1, n_max + 1):
        a = (n,) * k
        f = engine.compute_F(a)
        if f.negate_exponents() != f:
            return CheckResult(name, "fail", f"F{a}(q) != F{a}(1/q)", counterexample=a)
        if f.permute_variables(1) != f:
            return CheckResult(name, "fail", f"F{a} not invariant under q_i -> q_(i+1)", counterexample=a)
    return CheckResult(name, "pass")


def check_odd_moments(n_max: int, max_total: int) -> CheckResult:
    name = f"odd moments vanish n<={n_max} order<={max_total}"
    if n_max < 1:
        return CheckResult(name, "pass", "nothing to check")
    cache = new_series_cache()
    for n in range(1, n_max + 1):
        for order, value in moment_table(n, max_total, cache).items():
            if sum(order) % 2 and value:
                return CheckResult(name, "fail", f"M{order}={value}", counterexample=(n, order))
    return CheckResult(name, "pass")


def _timed(name: str, fn: Callable[[], CheckResult]) -> CheckResult:
    start = time.perf_counter()
    try:
        result = fn()
    except InvariantViolation as e:
        result = CheckResult(name, "fail", str(e), e.counterexample)
    result.seconds = time.perf_counter() - start
    logger.info(f"{result.name}: {result.status} in {result.seconds:.1f}s")
    return result


def _report(cfg: RunConfig, results: list[CheckResult]) -> int:
    if cfg.fmt == "json":
        emit(cfg, to_json([r.as_dict() for r in results]))
    else:
        lines = []
        for r in results:
            line = f"{r.status.upper():5} {r.name}"
            if r.detail:
                line += f"  ({r.detail})"
            if r.counterexample is not None:
                line += f"  counterexample={r.counterexample}"
            lines.append(line)
        emit(cfg, "\n".join(lines))
    return InvariantViolation.exit_code if any(r.status == "fail" for r in results) else 0


def cmd_verify(cfg: RunConfig) -> int:
    t = cfg.max_total
    n_max = t // 3
    results = [
        _timed("dp==brute k=3", lambda: check_dp_vs_brute(3, t, cfg.cap_brute_force)),
        _timed("dp==brute k=4", lambda: check_dp_vs_brute(4, min(cfg.k4_max_total, t), cfg.cap_brute_force)),
        _timed("proposition", lambda: check_proposition(t)),
        _timed("symmetries", lambda: check_symmetries(n_max)),
        _timed("odd moments", lambda: check_odd_moments(n_max, min(t, 5))),
    ]
    return _report(cfg, results)


# ======================= acceptance table =======================


def _crit_counts(cfg: RunConfig) -> CheckResult:
    n_top = 9 if cfg.extended else 7
    got = [engine.count_suckers((n, n, n), cfg.cap_terms) for n in range(1, n_top + 1)]
    want = reference.SUCKERS_SEQUENCE[:n_top]
    if got != want:
        n = next(i for i, (x, y) in enumerate(zip(got, want), 1) if x != y)
        return CheckResult("1 counting sequence", "fail", f"n={n}: {got[n - 1]} != {want[n - 1]}", n)
    return CheckResult("1 counting sequence", "pass", f"n=1..{n_top}")


def _crit_reduced(cfg: RunConfig) -> CheckResult:
    name = "2 reduced counts and probabilities"
    for n in range(3, 8):
        report = engine.count_table((n, n, n), cfg.cap_terms)
        if n <= 6 and report.reduced != reference.REDUCED_SEQUENCE[n - 1]:
            return CheckResult(name, "fail", f"reduced n={n}: {report.reduced}", n)
        if abs(float(report.probability) - float(reference.PROBABILITY_DECIMALS[n - 1])) >= 1e-9:
            return CheckResult(name, "fail", f"probability n={n}: {engine.decimal(report.probability)}", n)
    return CheckResult(name, "pass")


def _crit_listing(cfg: RunConfig) -> CheckResult:
    name = "3 listing"
    magic = DeckSet(reference.MAGIC_SQUARE_DECKS)
    for n, want in ((3, 5), (4, 13), (5, 1732)):
        sets = engine.enumerate_suckers((n, n, n), reduce=True, cap_listing=cfg.cap_listing)
        if len(sets) != want:
            return CheckResult(name, "fail", f"n={n}: {len(sets)} sets, expected {want}", n)
        if n == 3 and magic not in sets:
            return CheckResult(name, "fail", "magic-square set missing at n=3", 3)
        bad = next((d for d in sets if not is_suckers_bet(d.decks)), None)
        if bad is not None:
            return CheckResult(name, "fail", "listed set is not a sucker's bet", bad.as_lists())
    return CheckResult(name, "pass")


def _crit_dice(cfg: RunConfig) -> CheckResult:
    name = "4 tie-less dice"
    found = {}
    for m, want in reference.TIELESS_COUNTS.items():
        sets = enumerate_tieless(4, (6, 6, 6, 6), m, reduce=True, cap_nodes=cfg.cap_dice_nodes)
        found[m] = sets
        if len(sets) != want:
            return CheckResult(
                name, "fail", f"m={m}: {len(sets)} sets, expected {want} (assumes six faces per die)", m
            )
    if found[6][0].dice != reference.SIX_DENOMINATION_DICE:
        return CheckResult(name, "fail", "m=6 set differs from the unique published set", found[6][0].as_lists())
    efron = reference.EFRON_DICE
    rotations = {tuple(tuple(sorted(efron[(i + t) % 4])) for i in range(4)) for t in range(4)}
    if not any(d.dice in rotations for d in found[7]):
        return CheckResult(name, "fail", "Efron's dice missing at m=7")
    return CheckResult(name, "pass", "faces (6,6,6,6)")


def _crit_oracle(cfg: RunConfig) -> CheckResult:
    for r in (
        check_dp_vs_brute(3, 10, cfg.cap_brute_force),
        check_dp_vs_brute(4, 8, cfg.cap_brute_force),
        check_proposition(9),
    ):
        if r.status != "pass":
            r.name = f"5 {r.name}"
            return r
    return CheckResult("5 oracle equivalence", "pass")


def _crit_symmetry(cfg: RunConfig) -> CheckResult:
    for r in (check_symmetries(6), check_odd_moments(6, 6)):
        if r.status != "pass":
            r.name = f"6 {r.name}"
            return r
    return CheckResult("6 symmetries", "pass")


def _crit_closed_forms(cfg: RunConfig) -> CheckResult:
    name = "7 closed forms"
    cache = new_series_cache()
    n = sympy.Symbol("n")
    variance = fit_moment_polynomial((0, 0, 2), cache=cache)
    covariance = fit_moment_polynomial((0, 1, 1), cache=cache)
    fourth = fit_moment_polynomial((0, 0, 4), cache=cache)
    if sympy.expand(variance.as_sympy() - n**2 * (2 * n + 1) / 3) != 0:
        return CheckResult(name, "fail", f"variance fit {variance.factored()}")
    if sympy.expand(covariance.as_sympy() + n**3 / 3) != 0:
        return CheckResult(name, "fail", f"covariance fit {covariance.factored()}")
    kurt = sympy.Rational(3) * (10 * n**2 - n - 4) / (5 * n * (2 * n + 1))
    if sympy.simplify(fourth.as_sympy() / variance.as_sympy() ** 2 - kurt) != 0:
        return CheckResult(name, "fail", "kurtosis fit disagrees with 3(10n^2-n-4)/(5n(2n+1))")
    if fourth(7) / variance(7) ** 2 != kurtosis_closed_form(7):
        return CheckResult(name, "fail", "kurtosis at n=7")
    big = fit_moment_polynomial((4, 5, 5), cache=cache)
    want = (
        reference.M455_DENOMINATOR,
        [reference.M455_SIGN * c for c in reference.M455_PUBLISHED],
        reference.M455_LOW_POWER,
    )
    if big.integer_form() != want:
        return CheckResult(name, "fail", f"M(4,5,5) integer form {big.integer_form()}")
    return CheckResult(name, "pass", "M(4,5,5) matches the published list up to overall sign")


def _crit_limits(cfg: RunConfig) -> CheckResult:
    name = "8 gaussian limits"
    if limit_correlation() != LIMIT_CORRELATION:
        return CheckResult(name, "fail", "limit correlation is not -1/2")
    table = {e.order: e.value for e in scaled_limit_table(5)}
    if table != reference.SCALED_LIMITS:
        bad = next(o for o in reference.SCALED_LIMITS if table.get(o) != reference.SCALED_LIMITS[o])
        return CheckResult(name, "fail", f"S{bad}={table.get(bad)}", bad)
    for n in range(6):
        if diagonal_closed_form(n) != gaussian_scaled_limit((2 * n,) * 3):
            return CheckResult(name, "fail", f"diagonal closed form at n={n}", n)
    if cfg.skip_slow:
        return CheckResult(name, "pass", "n=40 convergence skipped")
    value = scaled_moment(40, (2, 2, 2))
    if abs(value - Fraction(3, 2)) >= Fraction(1, 10):
        return CheckResult(name, "fail", f"S_40(2,2,2)={float(value)}", 40)
    return CheckResult(name, "pass", f"S_40(2,2,2)={float(value):.6f}")


def _crit_normalization(cfg: RunConfig) -> CheckResult:
    name = "9 normalization constant"
    for c in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        closed = normalization_constant(c).evaluate()
        numeric = quadrature_normalization(c)
        if abs(closed - numeric) >= 1e-8:
            return CheckResult(name, "fail", f"c={c}: {closed} vs quadrature {numeric}", c)
    return CheckResult(name, "pass")


@dataclass(frozen=True)
class Criterion:
    run: Callable[[RunConfig], CheckResult]
    label: str
    slow: bool = False


CRITERIA = (
    Criterion(_crit_counts, "1 counting sequence"),
    Criterion(_crit_reduced, "2 reduced counts and probabilities"),
    Criterion(_crit_listing, "3 listing"),
    Criterion(_crit_dice, "4 tie-less dice", slow=True),
    Criterion(_crit_oracle, "5 oracle equivalence"),
    Criterion(_crit_symmetry, "6 symmetries"),
    Criterion(_crit_closed_forms, "7 closed forms", slow=True),
    Criterion(_crit_limits, "8 gaussian limits"),
    Criterion(_crit_normalization, "9 normalization constant", slow=True),
)


def cmd_repro(cfg: RunConfig) -> int:
    results = []
    for crit in CRITERIA:
        if crit.slow and cfg.skip_slow:
            results.append(CheckResult(crit.label, "skip", "slow"))
            continue
        start = time.perf_counter()
        try:
            result = crit.run(cfg)
        except SuckersBetError as e:
            result = CheckResult(crit.label, "fail", f"{type(e).__name__}: {e}")
        result.seconds = time.perf_counter() - start
        logger.info(f"{result.name}: {result.status} in {result.seconds:.1f}s")
        results.append(result)
    return _report(cfg, results)
