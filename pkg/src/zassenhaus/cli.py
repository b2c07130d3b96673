"""Command-line front end: compute, verify, bench.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
breach.  Only the cache directory and budgets may come from the
environment (ZASSENHAUS_CACHE, ZASSENHAUS_BUDGET_MEM_MB,
ZASSENHAUS_BUDGET_TIME_S); everything that affects the computation itself
is a flag.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

from . import __version__
from .commutators import (
    CommutatorSeries,
    dynkin_translate,
    oteo_ab_translate,
    oteo_ba_translate,
    verify_translation,
)
from .engine import (
    Budget,
    BudgetExceeded,
    SeriesCache,
    bch_term,
    peak_rss_mb,
    validate_order_invariants,
    zassenhaus_exponent,
)
from .oracle import bch_check, zassenhaus_product_check
from .render import document_json, series_document, series_latex, series_text, KIND_LETTERS
from .store import SeriesStore
from .words import WordSeries

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

ENV_CACHE = "ZASSENHAUS_CACHE"
ENV_BUDGET_MEM = "ZASSENHAUS_BUDGET_MEM_MB"
ENV_BUDGET_TIME = "ZASSENHAUS_BUDGET_TIME_S"

REPRESENTATIONS = ("words", "dynkin", "ba-commutators", "ab-commutators")
FORMATS = ("text", "latex", "json")
KINDS = ("zassenhaus", "bch")


@dataclass
class RunConfig:
    command: str
    kind: str = "zassenhaus"
    order: int | None = None
    max_order: int | None = None
    representation: str = "words"
    fmt: str = "text"
    cache_path: str | None = None
    budget_mem_mb: float | None = None
    budget_time_s: float | None = None

    def budget(self) -> Budget | None:
        if self.budget_mem_mb is None and self.budget_time_s is None:
            return None
        return Budget(max_mem_mb=self.budget_mem_mb, max_time_s=self.budget_time_s)


class UsageError(Exception):
    pass


def _env_float(name: str) -> float | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"{name} must be a number, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zassenhaus",
        description="Exact Zassenhaus / BCH series as words and nested commutators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute one order and print it")
    compute.add_argument("--kind", choices=KINDS, default="zassenhaus")
    compute.add_argument("--order", type=int, required=True)
    compute.add_argument("--rep", choices=REPRESENTATIONS, default="words")
    compute.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    compute.add_argument("--cache", dest="cache_path", default=None, metavar="DIR")

    verify = sub.add_parser("verify", help="run the full per-order check table")
    verify.add_argument("--max-order", type=int, required=True)
    verify.add_argument("--cache", dest="cache_path", default=None, metavar="DIR")

    bench = sub.add_parser("bench", help="cold-cache timing/memory sweep")
    bench.add_argument("--max-order", type=int, required=True)
    bench.add_argument("--budget-mem", type=float, default=None, metavar="MB")
    bench.add_argument("--budget-time", type=float, default=None, metavar="SEC")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.cache_path = getattr(args, "cache_path", None) or os.environ.get(ENV_CACHE)
    cfg.budget_mem_mb = getattr(args, "budget_mem", None)
    if cfg.budget_mem_mb is None:
        cfg.budget_mem_mb = _env_float(ENV_BUDGET_MEM)
    cfg.budget_time_s = getattr(args, "budget_time", None)
    if cfg.budget_time_s is None:
        cfg.budget_time_s = _env_float(ENV_BUDGET_TIME)
    if args.command == "compute":
        cfg.kind = args.kind
        cfg.order = args.order
        cfg.representation = args.rep
        cfg.fmt = args.fmt
        if cfg.order < 2:
            raise UsageError("order must be >= 2")
        if cfg.kind == "bch" and cfg.representation in ("ba-commutators", "ab-commutators"):
            raise UsageError(
                "the ba-/ab-commutator schemes are defined for --kind zassenhaus"
            )
    else:
        cfg.max_order = args.max_order
        if cfg.max_order < 2:
            raise UsageError("max-order must be >= 2")
    return cfg


def _load_into_cache(store: SeriesStore, cache: SeriesCache, kind: str, max_order: int) -> None:
    for order, series in store.load_range(kind, max_order).items():
        if kind == "zassenhaus":
            cache.store_zassenhaus(order, series, validate=False)
        else:
            cache.store_bch(order, series, validate=False)


def _compute_series(cfg: RunConfig, order: int) -> WordSeries:
    cache = SeriesCache()
    store = SeriesStore(cfg.cache_path) if cfg.cache_path else None
    if store is not None:
        _load_into_cache(store, cache, cfg.kind, order)
    budget = cfg.budget()
    started = time.monotonic()
    if cfg.kind == "zassenhaus":
        for m in range(2, order + 1):
            if m in cache.zassenhaus:
                continue
            zassenhaus_exponent(m, cache)
            if store is not None:
                store.save("zassenhaus", m, cache.zassenhaus[m])
            if budget is not None and m < order:
                reason = budget.breach(started)
                if reason:
                    raise BudgetExceeded(f"stopped after order {m}: {reason}", m)
        return cache.zassenhaus[order]
    if order not in cache.bch:
        bch_term(order, cache)
        if store is not None:
            store.save("bch", order, cache.bch[order])
    return cache.bch[order]


def _translate(series: WordSeries, representation: str) -> WordSeries | CommutatorSeries:
    if representation == "words":
        return series
    if representation == "dynkin":
        return dynkin_translate(series)
    if representation == "ba-commutators":
        return oteo_ba_translate(series)
    return oteo_ab_translate(series)


def cmd_compute(cfg: RunConfig) -> int:
    series = _compute_series(cfg, cfg.order)
    rendered = _translate(series, cfg.representation)
    if cfg.fmt == "text":
        sys.stdout.write(series_text(rendered, KIND_LETTERS[cfg.kind]) + "\n")
    elif cfg.fmt == "latex":
        sys.stdout.write(series_latex(rendered, cfg.kind, cfg.order) + "\n")
    else:
        doc = series_document(rendered, cfg.kind, cfg.order, cfg.representation)
        sys.stdout.write(document_json(doc))
    return EXIT_OK


def _check(fn) -> tuple[bool, str, object]:
    try:
        result = fn()
    except Exception as exc:  # surfaced in the table, not a crash
        return False, f"{type(exc).__name__}: {exc}", None
    if isinstance(result, tuple):
        return result
    return (True, "", None) if result else (False, "check failed", None)


def _invariants_ok(series: WordSeries, order: int):
    validate_order_invariants(series, order)
    return True


def cmd_verify(cfg: RunConfig) -> int:
    max_order = cfg.max_order
    cache = SeriesCache()
    store = SeriesStore(cfg.cache_path) if cfg.cache_path else None
    if store is not None:
        _load_into_cache(store, cache, "zassenhaus", max_order)
        _load_into_cache(store, cache, "bch", max_order)

    columns = ("invariants", "dynkin", "ba-comm", "ab-comm", "bch-dynkin")
    failures: list[tuple[str, str, object]] = []
    rows: list[tuple[int, dict[str, bool]]] = []

    for n in range(2, max_order + 1):
        cells: dict[str, bool] = {}

        def run(column: str, fn):
            ok, message, diff = _check(fn)
            cells[column] = ok
            if not ok:
                failures.append((f"order {n}", column, (message, diff)))

        cn: WordSeries | None = None
        zn: WordSeries | None = None

        def get_cn():
            nonlocal cn
            if cn is None:
                cn = zassenhaus_exponent(n, cache)
                if store is not None:
                    store.save("zassenhaus", n, cn)
            return cn

        def get_zn():
            nonlocal zn
            if zn is None:
                zn = bch_term(n, cache)
                if store is not None:
                    store.save("bch", n, zn)
            return zn

        run("invariants", lambda: _invariants_ok(get_cn(), n))

        def translation_check(translate):
            def inner():
                series = get_cn()
                report = verify_translation(series, translate(series))
                return report.passed, report.detail, report.diff

            return inner

        run("dynkin", translation_check(dynkin_translate))
        run("ba-comm", translation_check(oteo_ba_translate))
        run("ab-comm", translation_check(oteo_ab_translate))

        def bch_dynkin():
            series = get_zn()
            report = verify_translation(series, dynkin_translate(series))
            return report.passed, report.detail, report.diff

        run("bch-dynkin", bch_dynkin)
        rows.append((n, cells))

    width = max(len(c) for c in columns) + 2
    header = "order" + "".join(c.rjust(width) for c in columns)
    print(header)
    for n, cells in rows:
        line = f"{n:>5}" + "".join(
            ("pass" if cells.get(c) else "FAIL").rjust(width) for c in columns
        )
        print(line)

    for name, check, source in (
        ("product check (zassenhaus)", zassenhaus_product_check, cache.zassenhaus),
        ("product check (bch)", bch_check, cache.bch),
    ):
        missing = [m for m in range(2, max_order + 1) if m not in source]
        if missing:
            print(f"{name}, N={max_order}: SKIPPED (orders {missing} unavailable)")
            failures.append((name, "availability", (f"missing orders {missing}", None)))
            continue
        report = check(source, max_order)
        print(f"{name}, N={max_order}: {'pass' if report.passed else 'FAIL'}")
        if not report.passed:
            failures.append((name, "oracle", (report.detail, report.diff)))

    if not failures:
        print(f"RESULT: PASS (orders 2..{max_order})")
        return EXIT_OK
    where, column, (message, diff) = failures[0]
    print(f"RESULT: FAIL ({len(failures)} failed check(s))")
    print(f"first failure: {where} [{column}]: {message}")
    if diff:
        print(f"first failing diff: {series_text(diff)}")
    return EXIT_VERIFY_FAILED


def cmd_bench(cfg: RunConfig) -> int:
    import json

    budget = cfg.budget()
    cache = SeriesCache()
    rows = []
    breached: str | None = None
    started = time.monotonic()
    for order in range(2, cfg.max_order + 1):
        t0 = time.perf_counter()
        zassenhaus_exponent(order, cache)
        seconds = time.perf_counter() - t0
        rows.append(
            {
                "order": order,
                "seconds": round(seconds, 6),
                "cumulative_seconds": round(time.monotonic() - started, 6),
                "peak_rss_mb": round(peak_rss_mb(), 1),
                "terms": len(cache.zassenhaus[order]),
            }
        )
        if budget is not None and order < cfg.max_order:
            reason = budget.breach(started)
            if reason:
                breached = reason
                break
    report = {
        "command": "bench",
        "kind": "zassenhaus",
        "max_order": cfg.max_order,
        "orders": rows,
        "total_seconds": round(time.monotonic() - started, 6),
        "peak_rss_mb": round(peak_rss_mb(), 1),
        "budget": {"mem_mb": cfg.budget_mem_mb, "time_s": cfg.budget_time_s},
        "breached": breached,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_BUDGET if breached else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.command == "compute":
            return cmd_compute(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_bench(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
