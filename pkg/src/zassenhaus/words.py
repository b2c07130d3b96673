"""Words over a two-letter alphabet and sparse series with exact coefficients.

A word of length n is stored as an integer bitmask plus the length: bit i-1
holds letter i, with 0 encoding the first letter ('a') and 1 the second
('b').  Equality and hashing are O(1), and the translation between words and
square-free tau monomials elsewhere in the package is the identity on bit
patterns.

Series are finite maps word -> rational.  Zero coefficients are dropped
eagerly by every operation; iteration at output boundaries is canonical
(shorter words first, then lexicographic with 'a' < 'b').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .rationals import ONE, Q, ZERO

MAX_WORD_LENGTH = 64


class Word:
    """Immutable word over {a, b}, packed as (bits, length)."""

    __slots__ = ("bits", "length")

    def __init__(self, bits: int, length: int):
        if length < 0 or length > MAX_WORD_LENGTH:
            raise ValueError(f"word length {length} outside 0..{MAX_WORD_LENGTH}")
        if bits < 0 or bits >> length:
            raise ValueError(f"bits {bits:#x} do not fit a length-{length} word")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "length", length)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_string(cls, text: str, alphabet: str = "ab") -> "Word":
        lo, hi = alphabet
        bits = 0
        for pos, ch in enumerate(text):
            if ch == hi:
                bits |= 1 << pos
            elif ch != lo:
                raise ValueError(f"letter {ch!r} not in alphabet {alphabet!r}")
        return cls(bits, len(text))

    def to_string(self, alphabet: str = "ab") -> str:
        return "".join(alphabet[(self.bits >> p) & 1] for p in range(self.length))

    def letter_bit(self, position: int) -> int:
        """Bit of the letter at 1-based position (0 = 'a', 1 = 'b')."""
        if not 1 <= position <= self.length:
            raise IndexError(f"position {position} outside 1..{self.length}")
        return (self.bits >> (position - 1)) & 1

    def append(self, bit: int) -> "Word":
        return Word(self.bits | (bit << self.length), self.length + 1)

    def prepend(self, bit: int) -> "Word":
        return Word((self.bits << 1) | bit, self.length + 1)

    def concat(self, other: "Word") -> "Word":
        return Word(self.bits | (other.bits << self.length), self.length + other.length)

    def count_b(self) -> int:
        return self.bits.bit_count()

    def count_a(self) -> int:
        return self.length - self.bits.bit_count()

    def sort_key(self) -> tuple[int, int]:
        # Lexicographic order needs the first letter most significant.
        rev = 0
        for p in range(self.length):
            rev = (rev << 1) | ((self.bits >> p) & 1)
        return (self.length, rev)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.length == other.length
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.length, self.bits))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Word({self.to_string()!r})"


EMPTY_WORD = Word(0, 0)


class WordSeries:
    """Finite rational-weighted sum of words (a free-algebra element)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, object] = {}
        for word, coeff in items:
            q = Q(coeff) if not isinstance(coeff, type(ZERO)) else coeff
            if q:
                acc[word] = acc.get(word, ZERO) + q
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "WordSeries":
        # Internal fast path: terms must already be zero-free with Q values.
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    def get(self, word: Word):
        return self._terms.get(word, ZERO)

    def items(self) -> Iterator[tuple[Word, object]]:
        """Terms in canonical order (length, then lexicographic)."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key()))

    def support(self) -> set[Word]:
        return set(self._terms)

    def coefficient_sum(self):
        """Sum of all stored coefficients (the scalar specialization a = b = 1)."""
        total = ZERO
        for c in self._terms.values():
            total += c
        return total

    def degree_range(self) -> tuple[int, int]:
        lengths = [w.length for w in self._terms]
        return (min(lengths), max(lengths)) if lengths else (0, 0)

    def homogeneous_degree(self) -> int:
        """Common word length, or ValueError if the series mixes lengths."""
        if not self._terms:
            raise ValueError("empty series has no degree")
        lo, hi = self.degree_range()
        if lo != hi:
            raise ValueError(f"series mixes degrees {lo}..{hi}")
        return lo

    def restrict_degree(self, degree: int) -> "WordSeries":
        return WordSeries._raw(
            {w: c for w, c in self._terms.items() if w.length == degree}
        )

    def scale(self, factor) -> "WordSeries":
        q = Q(factor)
        if not q:
            return WordSeries._raw({})
        return WordSeries._raw({w: c * q for w, c in self._terms.items()})

    def __add__(self, other: "WordSeries") -> "WordSeries":
        small, big = sorted((self, other), key=lambda s: len(s._terms))
        acc = dict(big._terms)
        for w, c in small._terms.items():
            v = acc.get(w, ZERO) + c
            if v:
                acc[w] = v
            elif w in acc:
                del acc[w]
        return WordSeries._raw(acc)

    def __neg__(self) -> "WordSeries":
        return WordSeries._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "WordSeries") -> "WordSeries":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, WordSeries) and self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        inner = ", ".join(f"{w.to_string()}: {c}" for w, c in self.items())
        return f"WordSeries({{{inner}}})"


def series_add(s1: WordSeries, s2: WordSeries) -> WordSeries:
    return s1 + s2


def series_mul(s1: WordSeries, s2: WordSeries, degree_cap: int) -> WordSeries:
    """Concatenation product, discarding words longer than degree_cap."""
    if degree_cap < 0:
        raise ValueError("degree_cap must be >= 0")
    acc: dict[Word, object] = {}
    for w1, c1 in s1._terms.items():
        room = degree_cap - w1.length
        if room < 0:
            continue
        for w2, c2 in s2._terms.items():
            if w2.length > room:
                continue
            w = w1.concat(w2)
            v = acc.get(w, ZERO) + c1 * c2
            if v:
                acc[w] = v
            elif w in acc:
                del acc[w]
    return WordSeries._raw(acc)


def expand_left_normed(word: Word) -> WordSeries:
    """Free-algebra expansion of the left-normed commutator spelled by `word`.

    Length 1 is the letter itself; otherwise [X, t] = X t - t X applied along
    the letter sequence.  Every resulting word keeps the input's length.
    """
    if word.length == 0:
        raise ValueError("cannot expand the empty word")
    current: dict[Word, object] = {Word(word.bits & 1, 1): ONE}
    for pos in range(2, word.length + 1):
        bit = word.letter_bit(pos)
        nxt: dict[Word, object] = {}
        for w, c in current.items():
            left = w.append(bit)
            v = nxt.get(left, ZERO) + c
            if v:
                nxt[left] = v
            elif left in nxt:
                del nxt[left]
            right = w.prepend(bit)
            v = nxt.get(right, ZERO) - c
            if v:
                nxt[right] = v
            elif right in nxt:
                del nxt[right]
        current = nxt
    return WordSeries._raw(current)


def coefficient_sum(series: WordSeries):
    return series.coefficient_sum()


def word_series(spec: Mapping[str, object], alphabet: str = "ab") -> WordSeries:
    """Convenience constructor from {"bab": coeff, ...} string maps."""
    return WordSeries(
        {Word.from_string(text, alphabet): coeff for text, coeff in spec.items()}
    )


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an exact check, with the offending difference on failure."""

    passed: bool
    detail: str = ""
    diff: WordSeries | None = field(default=None, compare=False)
    failing_degree: int | None = None

    def __bool__(self) -> bool:
        return self.passed
