"""Translation of word series into left-normed nested commutators.

A commutator series is a weighted list of skeleton words; the skeleton
t1 t2 ... tn stands for [[...[[t1,t2],t3],...],tn].  Three translation
schemes are provided: the classical one-term-per-word prescription with
weight 1/n, and the two sparser schemes that keep only words starting with
'ba' (weight 1/count of b) or 'ab' (weight 1/count of a).  Every translation
can be verified exactly by expanding the commutators back into words.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .rationals import Q, ZERO
from .words import VerificationReport, Word, WordSeries, expand_left_normed


class CommutatorSeries:
    """Ordered rational-weighted list of left-normed commutator skeletons."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[object, Word]] = ()):
        acc: dict[Word, object] = {}
        length = None
        for coeff, skeleton in terms:
            if length is None:
                length = skeleton.length
            elif skeleton.length != length:
                raise ValueError("skeletons of one series must share a length")
            q = Q(coeff)
            if q:
                v = acc.get(skeleton, ZERO) + q
                if v:
                    acc[skeleton] = v
                elif skeleton in acc:
                    del acc[skeleton]
        self._terms = tuple(
            (acc[w], w) for w in sorted(acc, key=Word.sort_key)
        )

    def terms(self) -> tuple[tuple[object, Word], ...]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[object, Word]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, CommutatorSeries) and self._terms == other._terms

    def __repr__(self) -> str:
        inner = ", ".join(f"({c}, {w.to_string()!r})" for c, w in self._terms)
        return f"CommutatorSeries([{inner}])"


def _homogeneous_degree(series: WordSeries) -> int:
    degree = series.homogeneous_degree()
    if degree < 2:
        raise ValueError("translation needs degree >= 2")
    return degree


def dynkin_translate(series: WordSeries) -> CommutatorSeries:
    """One skeleton per word, weighted by 1/degree.

    Skeletons whose first two letters agree expand to zero and are dropped
    at construction.
    """
    n = _homogeneous_degree(series)
    inv_n = Q(1, n)
    return CommutatorSeries(
        (c * inv_n, w)
        for w, c in series.items()
        if (w.bits & 1) != ((w.bits >> 1) & 1)
    )


def oteo_ba_translate(series: WordSeries) -> CommutatorSeries:
    """Keep only words starting 'ba', weighted by 1/(number of b letters)."""
    _homogeneous_degree(series)
    return CommutatorSeries(
        (c / w.count_b(), w)
        for w, c in series.items()
        if (w.bits & 3) == 1
    )


def oteo_ab_translate(series: WordSeries) -> CommutatorSeries:
    """Keep only words starting 'ab', weighted by 1/(number of a letters)."""
    _homogeneous_degree(series)
    return CommutatorSeries(
        (c / w.count_a(), w)
        for w, c in series.items()
        if (w.bits & 3) == 2
    )


def commutator_to_words(series: CommutatorSeries) -> WordSeries:
    """Expand every skeleton and sum: the linear extension of the left-normed
    expansion."""
    total: dict[Word, object] = {}
    for coeff, skeleton in series:
        for w, c in expand_left_normed(skeleton)._terms.items():
            v = total.get(w, ZERO) + coeff * c
            if v:
                total[w] = v
            elif w in total:
                del total[w]
    return WordSeries._raw(total)


def verify_translation(series: WordSeries, commutators: CommutatorSeries) -> VerificationReport:
    """Exact check that the commutator series expands back to the word series."""
    diff = series - commutator_to_words(commutators)
    if not diff:
        return VerificationReport(True)
    return VerificationReport(
        False,
        detail=f"expansion differs on {len(diff)} word(s)",
        diff=diff,
    )
