"""Multilinear polynomials in commuting variables tau_1..tau_n and
upper-triangular matrices over them.

A monomial is a subset of {1..n} encoded as an n-bit mask (bit i-1 set means
tau_i is present); polynomials are sparse mask -> rational maps.  Matrices
are stored by superdiagonal band: most matrices built here are band-sparse,
and products only ever combine monomials with disjoint variable ranges (an
overlap would square a tau variable and is reported as a structural bug).
"""

from __future__ import annotations

from math import factorial
from typing import Iterator

from .rationals import ONE, Q, ZERO
from .words import Word, WordSeries


class SupportOverlapError(RuntimeError):
    """Two monomials with a shared tau variable were multiplied.

    The range structure of every matrix this module builds makes that
    impossible, so hitting this means an internal bug, not bad user input.
    """


class MultilinearPoly:
    """Rational-weighted sum of square-free tau monomials over tau_1..tau_n."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        if n < 0:
            raise ValueError("variable count must be >= 0")
        self.n = n
        acc: dict[int, object] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mask, coeff in items:
                if mask < 0 or mask >> n:
                    raise ValueError(f"monomial {mask:#x} outside tau_1..tau_{n}")
                q = Q(coeff)
                if q:
                    v = acc.get(mask, ZERO) + q
                    if v:
                        acc[mask] = v
                    elif mask in acc:
                        del acc[mask]
        self._terms = acc

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "MultilinearPoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, value) -> "MultilinearPoly":
        q = Q(value)
        return cls._raw(n, {0: q} if q else {})

    @classmethod
    def monomial(cls, n: int, mask: int, coeff=ONE) -> "MultilinearPoly":
        return cls(n, {mask: coeff})

    def items(self) -> Iterator[tuple[int, object]]:
        return iter(sorted(self._terms.items()))

    def get(self, mask: int):
        return self._terms.get(mask, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def support_union(self) -> int:
        out = 0
        for mask in self._terms:
            out |= mask
        return out

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if self.n != other.n:
            raise ValueError("ambient variable counts differ")
        acc = dict(self._terms)
        for mask, c in other._terms.items():
            v = acc.get(mask, ZERO) + c
            if v:
                acc[mask] = v
            elif mask in acc:
                del acc[mask]
        return MultilinearPoly._raw(self.n, acc)

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + (-other)

    def scale(self, factor) -> "MultilinearPoly":
        q = Q(factor)
        if not q:
            return MultilinearPoly._raw(self.n, {})
        return MultilinearPoly._raw(self.n, {m: c * q for m, c in self._terms.items()})

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if self.n != other.n:
            raise ValueError("ambient variable counts differ")
        acc: dict[int, object] = {}
        _mul_into(acc, self._terms, other._terms)
        return MultilinearPoly._raw(self.n, acc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultilinearPoly)
            and self.n == other.n
            and self._terms == other._terms
        )

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "MultilinearPoly(0)"

        def mono(mask):
            if not mask:
                return "1"
            return "*".join(f"t{i + 1}" for i in range(self.n) if mask >> i & 1)

        body = " + ".join(f"({c})*{mono(m)}" for m, c in self.items())
        return f"MultilinearPoly({body})"


def _mul_into(acc: dict, a_terms: dict, b_terms: dict) -> None:
    """acc += a * b, raising SupportOverlapError on a shared variable."""
    if len(a_terms) > len(b_terms):
        a_terms, b_terms = b_terms, a_terms
    for m1, c1 in a_terms.items():
        for m2, c2 in b_terms.items():
            if m1 & m2:
                raise SupportOverlapError(
                    f"monomials {m1:#x} and {m2:#x} share a tau variable"
                )
            key = m1 | m2
            v = acc.get(key, ZERO) + c1 * c2
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]


class TriMatrix:
    """Upper-triangular matrix of MultilinearPoly, stored by superdiagonal.

    bands[d] is the list of entries (i, i+d) for 1-based rows i = 1..size-d;
    a missing band is identically zero.  Entries below the diagonal do not
    exist structurally.
    """

    __slots__ = ("size", "_bands")

    def __init__(self, size: int, bands: dict[int, list[MultilinearPoly]] | None = None):
        if size < 1:
            raise ValueError("matrix size must be >= 1")
        self.size = size
        self._bands = {}
        if bands:
            for d, entries in bands.items():
                if not 0 <= d < size:
                    raise ValueError(f"band offset {d} outside 0..{size - 1}")
                if len(entries) != size - d:
                    raise ValueError(f"band {d} needs {size - d} entries")
                if any(not e.is_zero() for e in entries):
                    self._bands[d] = list(entries)

    @classmethod
    def _raw(cls, size: int, bands: dict) -> "TriMatrix":
        obj = cls.__new__(cls)
        obj.size = size
        obj._bands = bands
        return obj

    @classmethod
    def zero(cls, size: int) -> "TriMatrix":
        return cls._raw(size, {})

    @classmethod
    def identity(cls, size: int) -> "TriMatrix":
        n = size - 1
        one = MultilinearPoly.constant(n, ONE)
        return cls._raw(size, {0: [one] * size})

    def entry(self, i: int, j: int) -> MultilinearPoly:
        """Entry at 1-based (row, col); zero for strictly-lower positions."""
        if not (1 <= i <= self.size and 1 <= j <= self.size):
            raise IndexError(f"({i}, {j}) outside a {self.size}x{self.size} matrix")
        band = self._bands.get(j - i)
        if j < i or band is None:
            return MultilinearPoly.zero(self.size - 1)
        return band[i - 1]

    def row(self, i: int) -> list[MultilinearPoly]:
        """Row i as a dense list of polys, positions 1..size at indices 0..size-1."""
        zero = MultilinearPoly.zero(self.size - 1)
        out = [zero] * self.size
        for d, entries in self._bands.items():
            if i <= self.size - d:
                out[i - 1 + d] = entries[i - 1]
        return out

    def band_offsets(self) -> list[int]:
        return sorted(self._bands)

    def lowest_band(self) -> int | None:
        return min(self._bands) if self._bands else None

    def is_zero(self) -> bool:
        return not self._bands

    def is_strictly_upper(self) -> bool:
        return 0 not in self._bands

    def is_unitriangular(self) -> bool:
        diag = self._bands.get(0)
        one = MultilinearPoly.constant(self.size - 1, ONE)
        return diag is not None and all(e == one for e in diag)

    def __add__(self, other: "TriMatrix") -> "TriMatrix":
        if self.size != other.size:
            raise ValueError("matrix sizes differ")
        bands: dict[int, list[MultilinearPoly]] = {}
        for d in set(self._bands) | set(other._bands):
            a = self._bands.get(d)
            b = other._bands.get(d)
            if a is None:
                bands[d] = list(b)
            elif b is None:
                bands[d] = list(a)
            else:
                merged = [x + y for x, y in zip(a, b)]
                if any(not e.is_zero() for e in merged):
                    bands[d] = merged
        return TriMatrix._raw(self.size, bands)

    def __neg__(self) -> "TriMatrix":
        return TriMatrix._raw(
            self.size, {d: [-e for e in entries] for d, entries in self._bands.items()}
        )

    def __sub__(self, other: "TriMatrix") -> "TriMatrix":
        return self + (-other)

    def scale(self, factor) -> "TriMatrix":
        q = Q(factor)
        if not q:
            return TriMatrix._raw(self.size, {})
        return TriMatrix._raw(
            self.size,
            {d: [e.scale(q) for e in entries] for d, entries in self._bands.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriMatrix) or self.size != other.size:
            return False
        for d in set(self._bands) | set(other._bands):
            a = self._bands.get(d)
            b = other._bands.get(d)
            n = self.size - 1
            zero = MultilinearPoly.zero(n)
            for r in range(self.size - d):
                if (a[r] if a else zero) != (b[r] if b else zero):
                    return False
        return True

    def __repr__(self) -> str:
        return f"TriMatrix(size={self.size}, bands={sorted(self._bands)})"


def build_h(n: int) -> TriMatrix:
    """Unit-diagonal matrix with (i,j) = 1/(j-i)! * prod_{k=i}^{j-1}(1+tau_k)."""
    _require_order(n)
    size = n + 1
    bands: dict[int, list[MultilinearPoly]] = {}
    for d in range(size):
        inv_fact = Q(1, factorial(d))
        entries = []
        for i0 in range(size - d):
            full = ((1 << d) - 1) << i0
            # All submasks of the variable range share the 1/(j-i)! weight.
            terms = {}
            sub = full
            while True:
                terms[sub] = inv_fact
                if sub == 0:
                    break
                sub = (sub - 1) & full
            entries.append(MultilinearPoly._raw(n, terms))
        bands[d] = entries
    return TriMatrix._raw(size, bands)


def build_k(n: int) -> TriMatrix:
    """Constant matrix with (i,j) = (-1)^(i+j) / (j-i)!."""
    _require_order(n)
    size = n + 1
    bands = {}
    for d in range(size):
        coeff = Q((-1) ** d, factorial(d))
        entries = [MultilinearPoly.constant(n, coeff) for _ in range(size - d)]
        bands[d] = entries
    return TriMatrix._raw(size, bands)


def build_l(n: int) -> TriMatrix:
    """Matrix with (i,j) = (-1)^(i+j)/(j-i)! * tau_i...tau_{j-1}."""
    _require_order(n)
    size = n + 1
    bands = {}
    for d in range(size):
        coeff = Q((-1) ** d, factorial(d))
        entries = [
            MultilinearPoly._raw(n, {((1 << d) - 1) << i0: coeff})
            for i0 in range(size - d)
        ]
        bands[d] = entries
    return TriMatrix._raw(size, bands)


def build_p(n: int) -> TriMatrix:
    """Shift matrix: ones on the first superdiagonal."""
    _require_order(n)
    size = n + 1
    one = MultilinearPoly.constant(n, ONE)
    return TriMatrix._raw(size, {1: [one] * (size - 1)})


def build_q(n: int) -> TriMatrix:
    """Weighted shift: tau_i at (i, i+1)."""
    _require_order(n)
    size = n + 1
    entries = [MultilinearPoly._raw(n, {1 << i0: ONE}) for i0 in range(size - 1)]
    return TriMatrix._raw(size, {1: entries})


def _require_order(n: int) -> None:
    if n < 1:
        raise ValueError("order must be >= 1")


def mat_mul(a: TriMatrix, b: TriMatrix) -> TriMatrix:
    """Matrix product; band-sparse, exact."""
    if a.size != b.size:
        raise ValueError("matrix sizes differ")
    size = a.size
    n = size - 1
    acc: dict[int, list[dict]] = {}
    for da, rows_a in a._bands.items():
        for db, rows_b in b._bands.items():
            d = da + db
            if d >= size:
                continue
            target = acc.setdefault(d, [None] * (size - d))
            for i0 in range(size - d):
                left = rows_a[i0]._terms
                right = rows_b[i0 + da]._terms
                if not left or not right:
                    continue
                cell = target[i0]
                if cell is None:
                    cell = target[i0] = {}
                _mul_into(cell, left, right)
    bands = {}
    for d, cells in acc.items():
        entries = [
            MultilinearPoly._raw(n, cell) if cell else MultilinearPoly.zero(n)
            for cell in cells
        ]
        if any(not e.is_zero() for e in entries):
            bands[d] = entries
    return TriMatrix._raw(size, bands)


def row_times_matrix(row: list[MultilinearPoly], m: TriMatrix) -> list[MultilinearPoly]:
    """Row vector times matrix; row[k] is position k+1."""
    if len(row) != m.size:
        raise ValueError("row length does not match matrix size")
    size = m.size
    n = size - 1
    acc: list[dict | None] = [None] * size
    for d, entries in m._bands.items():
        for i0 in range(size - d):
            left = row[i0]._terms
            right = entries[i0]._terms
            if not left or not right:
                continue
            cell = acc[i0 + d]
            if cell is None:
                cell = acc[i0 + d] = {}
            _mul_into(cell, left, right)
    return [
        MultilinearPoly._raw(n, cell) if cell else MultilinearPoly.zero(n)
        for cell in acc
    ]


def nilpotent_exp(mat: TriMatrix) -> TriMatrix:
    """exp of a strictly upper-triangular matrix as the finite sum of powers."""
    if not mat.is_strictly_upper():
        raise ValueError("matrix must have a zero diagonal")
    acc = TriMatrix.identity(mat.size)
    power = TriMatrix.identity(mat.size)
    for k in range(1, mat.size):
        power = mat_mul(power, mat)
        if power.is_zero():
            break
        acc = acc + power.scale(Q(1, factorial(k)))
    return acc


def nilpotent_log(mat: TriMatrix) -> TriMatrix:
    """log of a unitriangular matrix as the finite alternating sum."""
    if not mat.is_unitriangular():
        raise ValueError("matrix must have a unit diagonal")
    x = mat - TriMatrix.identity(mat.size)
    acc = TriMatrix.zero(mat.size)
    power = TriMatrix.identity(mat.size)
    for k in range(1, mat.size):
        power = mat_mul(power, x)
        if power.is_zero():
            break
        acc = acc + power.scale(Q((-1) ** (k + 1), k))
    return acc


def u_translate(poly: MultilinearPoly) -> WordSeries:
    """Translate tau monomials to words: tau_i present means letter i is 'b'.

    The bitmask of a monomial is exactly the bit packing of the word, so this
    is the identity on bit patterns.
    """
    if poly.n < 1:
        raise ValueError("need at least one tau variable")
    n = poly.n
    return WordSeries._raw({Word(mask, n): c for mask, c in poly._terms.items()})


def word_to_matrix(word: Word, size: int) -> TriMatrix:
    """Matrix product of shift factors spelled by the word ('b' picks the
    tau-weighted shift), supported on the word-length superdiagonal."""
    m = word.length
    if m < 1:
        raise ValueError("word must be nonempty")
    if size < m + 1:
        raise ValueError(f"size {size} too small for a length-{m} word")
    n = size - 1
    entries = [
        MultilinearPoly._raw(n, {word.bits << i0: ONE}) for i0 in range(size - m)
    ]
    return TriMatrix._raw(size, {m: entries})


def series_to_matrix(series: WordSeries, size: int) -> TriMatrix:
    """Embed a homogeneous series as a matrix on its degree superdiagonal."""
    m = series.homogeneous_degree()
    if size < m + 1:
        raise ValueError(f"size {size} too small for degree {m}")
    n = size - 1
    entries = [
        MultilinearPoly._raw(n, {w.bits << i0: c for w, c in series._terms.items()})
        for i0 in range(size - m)
    ]
    return TriMatrix._raw(size, {m: entries})


def validate_range_property(mat: TriMatrix) -> None:
    """Check every entry (i, j) only involves tau_i..tau_{j-1}.

    O(total terms); meant for tests and debug runs, not hot loops.
    """
    for d, entries in mat._bands.items():
        for i0, poly in enumerate(entries):
            allowed = ((1 << d) - 1) << i0
            stray = poly.support_union() & ~allowed
            if stray:
                raise AssertionError(
                    f"entry ({i0 + 1}, {i0 + 1 + d}) uses tau variables "
                    f"outside its range (mask {stray:#x})"
                )
