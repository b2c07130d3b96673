"""Brute-force verification in the degree-capped free algebra.

This module re-derives both product identities directly from exponential
series of words and compares them, coefficient by coefficient, against the
engine's output.  It deliberately shares no machinery with the tau-matrix
route: only the word/series primitives are used, so a bug in the matrix
pipeline cannot certify itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Mapping

from .rationals import ONE, Q
from .words import EMPTY_WORD, VerificationReport, Word, WordSeries, series_mul

LETTER_A = Word(0, 1)
LETTER_B = Word(1, 1)


@dataclass(frozen=True)
class GradedSeries:
    """A series mixing degrees 0..cap; the empty word is the scalar unit."""

    terms: WordSeries
    cap: int

    def __post_init__(self):
        if self.cap < 0:
            raise ValueError("cap must be >= 0")
        _, hi = self.terms.degree_range()
        if hi > self.cap:
            raise ValueError(f"series holds degree {hi} above cap {self.cap}")

    def restrict(self, degree: int) -> WordSeries:
        return self.terms.restrict_degree(degree)


def graded_unit(cap: int) -> GradedSeries:
    return GradedSeries(WordSeries({EMPTY_WORD: ONE}), cap)


def graded_mul(a: GradedSeries, b: GradedSeries, cap: int) -> GradedSeries:
    return GradedSeries(series_mul(a.terms, b.terms, cap), cap)


def truncated_exp(series: GradedSeries, cap: int) -> GradedSeries:
    """Sum of powers/k! with every product truncated at the cap as it forms."""
    if series.terms.get(EMPTY_WORD):
        raise ValueError("exponential input must have a zero constant term")
    total = WordSeries({EMPTY_WORD: ONE})
    power = WordSeries({EMPTY_WORD: ONE})
    for k in range(1, cap + 1):
        power = series_mul(power, series.terms, cap)
        if not power:
            break
        total = total + power.scale(Q(1, factorial(k)))
    return GradedSeries(total, cap)


def _first_degree_diff(
    lhs: GradedSeries, rhs: GradedSeries, max_degree: int
) -> tuple[int, WordSeries] | None:
    for degree in range(max_degree + 1):
        diff = lhs.restrict(degree) - rhs.restrict(degree)
        if diff:
            return degree, diff
    return None


def _series_by_order(source, kind: str) -> Mapping[int, WordSeries]:
    return getattr(source, kind, source)


def zassenhaus_product_check(cache, max_order: int) -> VerificationReport:
    """Expand e^(a+b) and e^a e^b e^(c_2)...e^(c_N) to degree N and compare.

    `cache` may be a SeriesCache or a plain {order: WordSeries} mapping with
    orders 2..max_order present.
    """
    series_by_order = _series_by_order(cache, "zassenhaus")
    _require_orders(series_by_order, max_order)
    cap = max_order
    both = GradedSeries(WordSeries({LETTER_A: ONE, LETTER_B: ONE}), cap)
    lhs = truncated_exp(both, cap)
    rhs = truncated_exp(GradedSeries(WordSeries({LETTER_A: ONE}), cap), cap)
    rhs = graded_mul(
        rhs, truncated_exp(GradedSeries(WordSeries({LETTER_B: ONE}), cap), cap), cap
    )
    for order in range(2, max_order + 1):
        factor = truncated_exp(GradedSeries(series_by_order[order], cap), cap)
        rhs = graded_mul(rhs, factor, cap)
    failure = _first_degree_diff(lhs, rhs, cap)
    if failure is None:
        return VerificationReport(True)
    degree, diff = failure
    return VerificationReport(
        False,
        detail=f"product identity fails at degree {degree}",
        diff=diff,
        failing_degree=degree,
    )


def bch_check(bch: Mapping[int, WordSeries] | object, max_order: int) -> VerificationReport:
    """Expand e^x e^y and e^(x + y + sum z_n) to degree N and compare."""
    series_by_order = _series_by_order(bch, "bch")
    _require_orders(series_by_order, max_order)
    cap = max_order
    lhs = truncated_exp(GradedSeries(WordSeries({LETTER_A: ONE}), cap), cap)
    lhs = graded_mul(
        lhs, truncated_exp(GradedSeries(WordSeries({LETTER_B: ONE}), cap), cap), cap
    )
    exponent = WordSeries({LETTER_A: ONE, LETTER_B: ONE})
    for order in range(2, max_order + 1):
        exponent = exponent + series_by_order[order]
    rhs = truncated_exp(GradedSeries(exponent, cap), cap)
    failure = _first_degree_diff(lhs, rhs, cap)
    if failure is None:
        return VerificationReport(True)
    degree, diff = failure
    return VerificationReport(
        False,
        detail=f"exponential identity fails at degree {degree}",
        diff=diff,
        failing_degree=degree,
    )


def _require_orders(series_by_order: Mapping[int, WordSeries], max_order: int) -> None:
    if max_order < 2:
        raise ValueError("max_order must be >= 2")
    missing = [n for n in range(2, max_order + 1) if n not in series_by_order]
    if missing:
        raise ValueError(f"orders missing from input: {missing}")
