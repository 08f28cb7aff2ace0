from __future__ import annotations

from fractions import Fraction

from app.config import RunConfig
from app.engine import decimal
from app.errors import DomainError
from app.gaussian import normalization_constant, scaled_limit_table
from app.handlers.common import emit, frac, to_json
from app.moments import (
    correlation,
    exact_moment,
    fit_moment_polynomial,
    kurtosis,
    kurtosis_closed_form,
    moment_table,
    new_series_cache,
    scaled_convergence,
    variance_closed_form,
)


def _order_str(order) -> str:
    return ",".join(map(str, order))


def _fit(cfg: RunConfig) -> int:
    poly = fit_moment_polynomial(cfg.fit, cfg.degree_bound)
    den, ints, low = poly.integer_form()
    if cfg.fmt == "json":
        emit(
            cfg,
            to_json(
                {
                    "order": list(poly.order),
                    "degree": poly.degree,
                    "coefficients": [frac(c) for c in poly.descending()],
                    "denominator": den,
                    "low_power": low,
                    "integer_coefficients": ints,
                    "factored": poly.factored(),
                }
            ),
        )
        return 0
    emit(
        cfg,
        "\n".join(
            [
                f"M({_order_str(poly.order)}) degree={poly.degree}",
                f"factored: {poly.factored()}",
                f"coefficients (descending): {' '.join(frac(c) for c in poly.descending())}",
                f"integer form: n^{low} * ({' '.join(map(str, ints))}) / {den}",
            ]
        ),
    )
    return 0


def _limits(cfg: RunConfig) -> int:
    table = scaled_limit_table(cfg.max_order)
    if cfg.fmt == "json":
        emit(cfg, to_json([{"order": list(e.order), "value": frac(e.value)} for e in table]))
    else:
        emit(cfg, "\n".join(f"S({_order_str(e.order)}) = {frac(e.value)}" for e in table))
    return 0


def _table(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise DomainError("--table needs --n")
    table = moment_table(cfg.n, cfg.max_total)
    rows = sorted(table.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    if cfg.fmt == "json":
        emit(cfg, to_json([{"order": list(o), "value": frac(v)} for o, v in rows]))
    else:
        emit(cfg, "\n".join(f"M({_order_str(o)}) = {frac(v)}" for o, v in rows))
    return 0


def _convergence(cfg: RunConfig) -> int:
    rows = scaled_convergence(cfg.convergence, cfg.n_max)
    if cfg.fmt == "json":
        emit(
            cfg,
            to_json([{"n": n, "value": frac(v), "decimal": decimal(v)} for n, v in rows]),
        )
    elif cfg.tsv:
        emit(cfg, "n\tvalue\tdecimal\n" + "\n".join(f"{n}\t{frac(v)}\t{decimal(v)}" for n, v in rows))
    else:
        emit(cfg, "\n".join(f"n={n} {frac(v)} ≈ {decimal(v)}" for n, v in rows))
    return 0


def _normalization(cfg: RunConfig) -> int:
    try:
        c = Fraction(cfg.normalization)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"--normalization expects a rational c, got {cfg.normalization!r}")
    nc = normalization_constant(c)
    if cfg.fmt == "json":
        emit(
            cfg,
            to_json(
                {
                    "c": frac(c),
                    "coefficient": frac(nc.coefficient),
                    "pi_power": frac(nc.pi_power),
                    "radicand": frac(nc.radicand),
                    "value": repr(nc.evaluate()),
                }
            ),
        )
    else:
        emit(cfg, f"N({frac(c)}) = {nc} ≈ {nc.evaluate():.12f}")
    return 0


def _summary(cfg: RunConfig) -> int:
    n = cfg.n
    cache = new_series_cache()
    m = moment_table(n, 4, cache)
    rows = {
        "variance": m[(0, 0, 2)],
        "covariance": m[(0, 1, 1)],
        "kurtosis": kurtosis(n, cache),
        "correlation": correlation(n, cache),
    }
    expected = {
        "variance": variance_closed_form(n),
        "covariance": Fraction(-(n**3), 3),
        "kurtosis": kurtosis_closed_form(n),
        "correlation": Fraction(-n, 2 * n + 1),
    }
    if cfg.fmt == "json":
        emit(
            cfg,
            to_json(
                {"n": n, **{k: {"value": frac(v), "closed_form": frac(expected[k])} for k, v in rows.items()}}
            ),
        )
    else:
        emit(
            cfg,
            "\n".join(
                f"{k}={frac(v)} (closed form {frac(expected[k])}{'' if v == expected[k] else ', MISMATCH'})"
                for k, v in rows.items()
            ),
        )
    return 0


def cmd_moments(cfg: RunConfig) -> int:
    """One mode per run, first match wins: normalization, limits, fit, convergence, table, single moment, summary."""
    if cfg.normalization is not None:
        return _normalization(cfg)
    if cfg.limits:
        return _limits(cfg)
    if cfg.fit is not None:
        return _fit(cfg)
    if cfg.convergence is not None:
        return _convergence(cfg)
    if cfg.table:
        return _table(cfg)
    if cfg.n is None:
        raise DomainError("moments needs --n, --fit, --limits, --convergence or --normalization")
    if cfg.order is None:
        return _summary(cfg)

    value = exact_moment(cfg.n, cfg.order)
    if cfg.fmt == "json":
        emit(cfg, to_json({"n": cfg.n, "order": list(cfg.order), "value": frac(value)}))
    else:
        emit(cfg, f"M({_order_str(cfg.order)}) at n={cfg.n} = {frac(value)}")
    return 0
