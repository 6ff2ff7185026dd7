"""Exact scalar arithmetic and the canonical containers.

Every element is an exact rational.  The scalar type is
:class:`fractions.Fraction` (re-exported as ``Rational``); integral
values are canonicalised to plain ``int`` so that the integer fast
paths can recognise them cheaply.  ``Fraction`` and ``int`` hash and
compare consistently, so the two may be mixed freely inside a
container.

Containers:

* :class:`OrderedSet` -- a strictly increasing tuple of rationals.
* :class:`SparseCounts` -- a sorted association value -> multiplicity,
  the representation-function type.  Convolution of two
  ``SparseCounts`` realises the additivity of representation counts:
  ``r_{A+B}(x) = sum_y r_A(y) * r_B(x - y)``.
"""

from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO, Union

from . import kernels
from .errors import InputError

Rational = Fraction
Scalar = Union[int, Fraction]

#: Default memory budget in bytes (4 GiB); used when a caller passes none.
DEFAULT_MEMORY_BUDGET = 2**32

# Rough per-entry cost of a Python dict holding scalar keys and counts,
# used only for pre-allocation estimates.
DICT_ENTRY_BYTES = 120

# Dense convolution allocates (span) int64 slots; refuse when that is
# far larger than the sparse work n_a * n_b would be.
_DENSE_SPAN_FACTOR = 32


def canon(x: Scalar) -> Scalar:
    """Collapse integral Fractions to int; reject non-rational input."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise InputError(f"not an exact rational: {x!r}")


_ELEMENT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_element(text: str) -> Scalar:
    """Parse one set-file element: a signed integer or 'p/q' with q > 0."""
    text = text.strip()
    if not _ELEMENT_RE.match(text):
        raise InputError(f"malformed element {text!r} (expected integer or p/q)")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise InputError(f"zero denominator in {text!r}")
        return canon(Fraction(int(num), int(den)))
    return int(text)


def format_element(x: Scalar) -> str:
    x = canon(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class OrderedSet:
    """A finite set of rationals stored as a strictly increasing tuple."""

    __slots__ = ("elements", "_is_integer")

    def __init__(self, elements: Iterable[Scalar]) -> None:
        elems = tuple(canon(x) for x in elements)
        if not elems:
            raise InputError("OrderedSet must be non-empty")
        for a, b in zip(elems, elems[1:]):
            if not a < b:
                raise InputError("OrderedSet elements must be strictly increasing")
        self.elements = elems
        self._is_integer = all(isinstance(x, int) for x in elems)

    @property
    def is_integer(self) -> bool:
        """True when every element is an integer (enables dense kernels)."""
        return self._is_integer

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, x) -> bool:
        i = bisect_left(self.elements, x)
        return i < len(self.elements) and self.elements[i] == x

    def index(self, x: Scalar) -> int:
        i = bisect_left(self.elements, x)
        if i == len(self.elements) or self.elements[i] != x:
            raise KeyError(x)
        return i

    def __eq__(self, other) -> bool:
        return isinstance(other, OrderedSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        if len(self) <= 8:
            body = ", ".join(format_element(x) for x in self)
        else:
            head = ", ".join(format_element(x) for x in self.elements[:3])
            body = f"{head}, ... ({len(self)} elements)"
        return f"OrderedSet({{{body}}})"

    def negate(self) -> "OrderedSet":
        """{-a : a in A}."""
        return OrderedSet([-x for x in reversed(self.elements)])


def make_set(values: Iterable[Scalar]) -> OrderedSet:
    """Sort and deduplicate ``values`` into an OrderedSet.

    Raises InputError on empty input.  Duplicates collapse silently;
    multiplicities live only in :class:`SparseCounts`.
    """
    vals = sorted({canon(v) for v in values})
    if not vals:
        raise InputError("cannot build a set from no values")
    return OrderedSet(vals)


class SparseCounts:
    """Sorted value -> multiplicity map with exact integer counts."""

    __slots__ = ("values", "counts", "_mass", "_is_integer")

    def __init__(self, values: Sequence[Scalar], counts: Sequence[int]) -> None:
        if len(values) != len(counts):
            raise InputError("values/counts length mismatch")
        if not values:
            raise InputError("SparseCounts must be non-empty")
        vals = tuple(canon(v) for v in values)
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise InputError("SparseCounts values must be strictly increasing")
        cnts = tuple(int(c) for c in counts)
        if any(c < 1 for c in cnts):
            raise InputError("SparseCounts counts must be positive")
        self.values = vals
        self.counts = cnts
        self._mass = sum(cnts)
        self._is_integer = all(isinstance(v, int) for v in vals)

    @classmethod
    def from_dict(cls, mapping: dict) -> "SparseCounts":
        values = sorted(mapping)
        return cls(values, [mapping[v] for v in values])

    @classmethod
    def from_set(cls, A: OrderedSet) -> "SparseCounts":
        """Representation function of a single set: every count is 1."""
        return cls(A.elements, [1] * len(A))

    @classmethod
    def point(cls, value: Scalar = 0, count: int = 1) -> "SparseCounts":
        return cls([value], [count])

    @property
    def mass(self) -> int:
        """Total multiplicity; multiplies under convolution."""
        return self._mass

    @property
    def is_integer_valued(self) -> bool:
        return self._is_integer

    def __len__(self) -> int:
        return len(self.values)

    def items(self) -> Iterator[tuple[Scalar, int]]:
        return zip(self.values, self.counts)

    def count_of(self, value: Scalar) -> int:
        i = bisect_left(self.values, value)
        if i < len(self.values) and self.values[i] == value:
            return self.counts[i]
        return 0

    def max_count(self) -> int:
        return max(self.counts)

    def support(self) -> OrderedSet:
        """The set of values carrying positive count."""
        return OrderedSet(self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseCounts)
            and self.values == other.values
            and self.counts == other.counts
        )

    def __hash__(self) -> int:
        return hash((self.values, self.counts))

    def __repr__(self) -> str:
        n = len(self.values)
        if n <= 6:
            body = ", ".join(f"{format_element(v)}:{c}" for v, c in self.items())
            return f"SparseCounts({{{body}}})"
        return f"SparseCounts(<{n} values, mass {self.mass}>)"


def convolve(
    p: SparseCounts, q: SparseCounts, mem_limit: int | None = None
) -> SparseCounts:
    """Exact convolution: entry at v gets sum_u p(u) * q(v - u).

    Commutative and associative; total mass multiplies.  Integer-valued
    inputs whose value span is modest go through the dense int64 kernel
    (compiled when available), everything else through exact dict
    accumulation.  ``mem_limit`` only steers the dense/sparse choice; it
    never changes the result.
    """
    budget = DEFAULT_MEMORY_BUDGET if mem_limit is None else mem_limit
    if p.is_integer_valued and q.is_integer_valued:
        work = len(p) * len(q)
        span = (p.values[-1] + q.values[-1]) - (p.values[0] + q.values[0]) + 1
        span_limit = min(budget // 16, _DENSE_SPAN_FACTOR * work)
        values, counts = kernels.convolve_integer(
            p.values,
            p.counts,
            q.values,
            q.counts,
            span_limit=span_limit,
            mass_product=p.mass * q.mass,
        )
        return SparseCounts(values, counts)

    acc: dict = {}
    for v, c in p.items():
        for w, d in q.items():
            key = v + w
            if key in acc:
                acc[key] += c * d
            else:
                acc[key] = c * d
    return SparseCounts.from_dict(acc)


def mass_of_squares(p: SparseCounts) -> int:
    """sum of count(v)**2 over all values; the 2nd-moment kernel."""
    return sum(c * c for c in p.counts)


def moment_sum(p: SparseCounts, m: int) -> int:
    """sum of count(v)**m (exact, integer m >= 1)."""
    if m < 1:
        raise InputError("moment order must be >= 1")
    return sum(c**m for c in p.counts)


# ---------------------------------------------------------------------------
# Set file I/O: one element per line, '#' starts a comment line.


def read_set(source: Union[str, TextIO]) -> OrderedSet:
    """Read a set file (elements need not be sorted on disk)."""
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            return read_set(fh)
    values = []
    for line in source:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        values.append(parse_element(line))
    if not values:
        raise InputError("set file contains no elements")
    return make_set(values)


def write_set(A: OrderedSet, dest: Union[str, TextIO]) -> None:
    if isinstance(dest, str):
        with open(dest, "w", encoding="utf-8") as fh:
            write_set(A, fh)
        return
    for x in A:
        dest.write(format_element(x) + "\n")


def count_in_halfopen(values: Sequence[Scalar], lo: Scalar, hi: Scalar) -> int:
    """|{v in values : lo < v <= hi}| for a sorted sequence."""
    if hi < lo:
        lo, hi = hi, lo
    return bisect_right(values, hi) - bisect_right(values, lo)
