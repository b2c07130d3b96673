"""Extraction of Zassenhaus exponents and BCH terms.

Zassenhaus exponents come from a recursion over triangular tau matrices: for
order n, the row-1 product of the inverse-exponential factors of all lower
orders with the L*K*H seed has a single surviving entry in its upper-right
corner whose tau polynomial translates to the order-n series.  Only row 1 is
ever needed, so the engine works with a row vector instead of full matrix
products; tests pin the equivalence to the naive product.

BCH terms use the finite matrix logarithm of exp(P)*exp(Q).
"""

from __future__ import annotations

import resource
import time
from dataclasses import dataclass, field
from typing import Callable

from .rationals import Q
from .taumatrix import (
    MultilinearPoly,
    TriMatrix,
    build_h,
    build_k,
    build_l,
    build_p,
    build_q,
    mat_mul,
    nilpotent_exp,
    nilpotent_log,
    row_times_matrix,
    series_to_matrix,
    u_translate,
)
from .words import Word, WordSeries

ENGINE_VERSION = "0.1.0"


class ProductStructureError(RuntimeError):
    """The pre-translation product row violated its zero pattern."""


class CacheInvariantError(ValueError):
    """A series being stored failed the structural checks for its order."""


class BudgetExceeded(RuntimeError):
    """Raised when a configured memory/time budget is breached.

    Orders completed before the breach stay in the cache.
    """

    def __init__(self, message: str, last_completed: int):
        super().__init__(message)
        self.last_completed = last_completed


@dataclass(frozen=True)
class Provenance:
    engine_version: str
    seconds: float


@dataclass
class Budget:
    """Optional limits checked between orders (never mid-order)."""

    max_mem_mb: float | None = None
    max_time_s: float | None = None

    def breach(self, started: float) -> str | None:
        if self.max_time_s is not None:
            elapsed = time.monotonic() - started
            if elapsed > self.max_time_s:
                return f"time budget exceeded ({elapsed:.1f}s > {self.max_time_s:.1f}s)"
        if self.max_mem_mb is not None:
            rss = peak_rss_mb()
            if rss > self.max_mem_mb:
                return f"memory budget exceeded ({rss:.0f} MB > {self.max_mem_mb:.0f} MB)"
        return None


def peak_rss_mb() -> float:
    """Process peak resident set size in MB (ru_maxrss is KiB on Linux)."""
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


@dataclass
class SeriesCache:
    """Computed orders, append-only; entries are never replaced."""

    zassenhaus: dict[int, WordSeries] = field(default_factory=dict)
    bch: dict[int, WordSeries] = field(default_factory=dict)
    provenance: dict[tuple[str, int], Provenance] = field(default_factory=dict)

    def store_zassenhaus(
        self, order: int, series: WordSeries, seconds: float = 0.0, validate: bool = True
    ) -> None:
        if validate:
            validate_order_invariants(series, order)
        self.zassenhaus.setdefault(order, series)
        self.provenance.setdefault(
            ("zassenhaus", order), Provenance(ENGINE_VERSION, seconds)
        )

    def store_bch(
        self, order: int, series: WordSeries, seconds: float = 0.0, validate: bool = True
    ) -> None:
        if validate:
            validate_order_invariants(series, order)
        self.bch.setdefault(order, series)
        self.provenance.setdefault(("bch", order), Provenance(ENGINE_VERSION, seconds))


def validate_order_invariants(series: WordSeries, order: int) -> None:
    """Structural checks every computed order must satisfy.

    Homogeneity of the right degree, vanishing coefficient sum (scalar
    specialization), and no pure single-letter words.
    """
    if order < 2:
        raise CacheInvariantError("orders start at 2")
    try:
        degree = series.homogeneous_degree()
    except ValueError as exc:
        raise CacheInvariantError(str(exc)) from exc
    if degree != order:
        raise CacheInvariantError(f"series has degree {degree}, expected {order}")
    if series.coefficient_sum():
        raise CacheInvariantError("coefficient sum must vanish")
    if series.get(Word(0, order)) or series.get(Word((1 << order) - 1, order)):
        raise CacheInvariantError("pure single-letter words must have zero coefficient")


def corner_row(n: int, cache: SeriesCache) -> list[MultilinearPoly]:
    """Row 1 of the full factor product for order n, before translation.

    Positions 1..n+1 at list indices 0..n; all orders below n must already
    be in the cache.  The L*K*H seed is built once at this size; the factor
    for each lower order is the inverse exponential of its embedded series.
    """
    if n < 2:
        raise ValueError("order must be >= 2")
    size = n + 1
    lkh = mat_mul(mat_mul(build_l(n), build_k(n)), build_h(n))
    if n == 2:
        return lkh.row(1)
    row = nilpotent_exp(-series_to_matrix(cache.zassenhaus[n - 1], size)).row(1)
    for m in range(n - 2, 1, -1):
        factor = nilpotent_exp(-series_to_matrix(cache.zassenhaus[m], size))
        row = row_times_matrix(row, factor)
    return row_times_matrix(row, lkh)


def _check_row_structure(row: list[MultilinearPoly], n: int) -> None:
    one = MultilinearPoly.constant(n, 1)
    if row[0] != one:
        raise ProductStructureError(f"order {n}: product row does not start with 1")
    for j in range(2, n + 1):
        if not row[j - 1].is_zero():
            raise ProductStructureError(
                f"order {n}: product row has a nonzero entry at position {j}"
            )


def zassenhaus_exponent(n: int, cache: SeriesCache | None = None) -> WordSeries:
    """Order-n Zassenhaus exponent as a word series, computing (and caching)
    every missing lower order along the way."""
    if n < 2:
        raise ValueError("order must be >= 2")
    if cache is None:
        cache = SeriesCache()
    for m in range(2, n + 1):
        if m in cache.zassenhaus:
            continue
        t0 = time.perf_counter()
        row = corner_row(m, cache)
        _check_row_structure(row, m)
        series = u_translate(row[m])
        cache.store_zassenhaus(m, series, time.perf_counter() - t0)
    return cache.zassenhaus[n]


def zassenhaus_all(
    max_order: int,
    cache: SeriesCache | None = None,
    budget: Budget | None = None,
    on_order: Callable[[int, WordSeries], None] | None = None,
) -> SeriesCache:
    """Populate the cache for orders 2..max_order, ascending.

    `on_order` runs after each newly completed order (used for persistence).
    A budget breach raises BudgetExceeded with the last completed order;
    completed orders remain cached.
    """
    if max_order < 2:
        raise ValueError("max_order must be >= 2")
    if cache is None:
        cache = SeriesCache()
    started = time.monotonic()
    last_done = max((o for o in cache.zassenhaus if o <= max_order), default=1)
    for m in range(2, max_order + 1):
        fresh = m not in cache.zassenhaus
        zassenhaus_exponent(m, cache)
        if fresh and on_order is not None:
            on_order(m, cache.zassenhaus[m])
        last_done = m
        if budget is not None and m < max_order:
            reason = budget.breach(started)
            if reason:
                raise BudgetExceeded(
                    f"stopped after order {last_done}: {reason}", last_done
                )
    return cache


def bch_term(n: int, cache: SeriesCache | None = None) -> WordSeries:
    """Degree-n term of log(e^x e^y) as a word series.

    Letter convention: first letter = x (tau absent), second = y (tau
    present).  Obtained as the upper-right corner of the matrix logarithm of
    exp(P)*exp(Q) at size n+1.
    """
    if n < 2:
        raise ValueError("order must be >= 2")
    if cache is not None and n in cache.bch:
        return cache.bch[n]
    t0 = time.perf_counter()
    product = mat_mul(nilpotent_exp(build_p(n)), nilpotent_exp(build_q(n)))
    log = nilpotent_log(product)
    series = u_translate(log.entry(1, n + 1))
    if cache is not None:
        cache.store_bch(n, series, time.perf_counter() - t0)
    return series


def bch_all(
    max_order: int,
    cache: SeriesCache | None = None,
    budget: Budget | None = None,
    on_order: Callable[[int, WordSeries], None] | None = None,
) -> SeriesCache:
    """Populate cache.bch for orders 2..max_order."""
    if max_order < 2:
        raise ValueError("max_order must be >= 2")
    if cache is None:
        cache = SeriesCache()
    started = time.monotonic()
    for m in range(2, max_order + 1):
        fresh = m not in cache.bch
        bch_term(m, cache)
        if fresh and on_order is not None:
            on_order(m, cache.bch[m])
        if budget is not None and m < max_order:
            reason = budget.breach(started)
            if reason:
                raise BudgetExceeded(f"stopped after order {m}: {reason}", m)
    return cache
