"""Cell decompositions of triple sumsets and lucky-pair enumeration.

Setting: sets B_1..B_k with monotone maps g_i, image sets A_i = g_i(B_i),
and a richness level r.  Each axis partitions its triple sumset
B_i + B_i - B_i into t = ceil(r**(1/(k-1)) / c) intervals of near-equal
element count; the product boxes are the *cells*.  Two distinct solution
tuples of g_1(b_1) + ... + g_k(b_k) = x form a *lucky pair* when they
produce the same sum x and, on every axis, few triple-sumset elements
separate them: n_{B_i}(b_i, b_i') <= ceil(c * |B_i+B_i-B_i| / r**(1/(k-1))).
Tuples sharing a cell always qualify, and a sum with r_x solutions yields
at least r_x minus the number of occupied cells such pairs — at least
r_x - k * t**(k-1), because the solution hyperplane meets at most
k * t**(k-1) cells of a t x ... x t grid.

All index arithmetic (t, the witness cap) uses exact integer roots,
never floating point, so results reproduce across platforms.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convexity import FunctionSpec, evaluate
from .core import OrderedSet, Scalar, count_in_halfopen
from .engine import representation, signed_sumset
from .errors import InputError
from .intmath import ceil_div, ceil_root


class TripleSumset:
    """B + B - B with half-open interval counting by binary search."""

    __slots__ = ("base", "values")

    def __init__(self, B: OrderedSet) -> None:
        self.base = B
        self.values = signed_sumset([B, B, B], (1, 1, -1)).elements

    def __len__(self) -> int:
        return len(self.values)

    def count_between(self, b: Scalar, b_prime: Scalar) -> int:
        """Elements of B+B-B in (min, max] of the two endpoints."""
        return count_in_halfopen(self.values, b, b_prime)


def count_between(B: OrderedSet, b: Scalar, b_prime: Scalar) -> int:
    """Convenience wrapper building the triple sumset on the fly."""
    return TripleSumset(B).count_between(b, b_prime)


def cells_per_axis(r: int, k: int, c: int) -> int:
    """t = ceil(r**(1/(k-1)) / c), exactly: smallest t with (t*c)**(k-1) >= r."""
    return ceil_div(ceil_root(r, k - 1), c)


def witness_cap(sumset_size: int, r: int, k: int, c: int) -> int:
    """ceil(c * M / r**(1/(k-1))): the per-axis closeness threshold.

    Exact: the smallest integer q with q**(k-1) * r >= (c*M)**(k-1).
    """
    return ceil_root(ceil_div((c * sumset_size) ** (k - 1), r), k - 1)


@dataclass(frozen=True)
class AxisPartition:
    """One axis of a grid: its triple sumset and t interval cut points.

    The t intervals are (cut[j-1], cut[j]] with implicit infinite outer
    cuts; interior cuts sit strictly between consecutive sumset elements
    so no element ever lies on a boundary.
    """

    sumset: TripleSumset
    cuts: tuple
    t: int
    capacity: int

    def interval_index(self, value: Scalar) -> int:
        return bisect_left(self.cuts, value)


@dataclass(frozen=True)
class GridPartition:
    axes: tuple[AxisPartition, ...]
    k: int
    r: int
    c: int
    t: int
    degenerate: bool

    def cell_of(self, point: Sequence[Scalar]) -> tuple[int, ...]:
        return tuple(ax.interval_index(p) for ax, p in zip(self.axes, point))


def build_partition(
    B_list: Sequence[OrderedSet], r: int, c: int = 4
) -> GridPartition:
    """Partition each B_i + B_i - B_i into t near-equal chunks.

    For r < c**(k-1) the partition degenerates to a single cell per axis
    and is returned with the ``degenerate`` flag set instead of raising.
    """
    k = len(B_list)
    if k < 2:
        raise InputError("cell partitions need at least 2 axes")
    if r < 1 or c < 1:
        raise InputError("r and c must be positive")
    degenerate = r < c ** (k - 1)
    t = 1 if degenerate else cells_per_axis(r, k, c)
    axes = []
    for B in B_list:
        triple = TripleSumset(B)
        values = triple.values
        m = len(values)
        tt = min(t, m)
        chunk = ceil_div(m, tt)
        cuts = []
        for j in range(chunk, m, chunk):
            prev, nxt = values[j - 1], values[j]
            cuts.append(_midpoint(prev, nxt))
        axes.append(AxisPartition(triple, tuple(cuts), len(cuts) + 1, chunk))
    return GridPartition(tuple(axes), k, r, c, t, degenerate)


def _midpoint(a: Scalar, b: Scalar) -> Scalar:
    mid = Fraction(a + b, 2)
    return mid.numerator if mid.denominator == 1 else mid


@dataclass(frozen=True)
class LuckyPair:
    """Two distinct solution tuples for the same sum, close on every axis."""

    left: tuple
    right: tuple
    witnesses: tuple[int, ...]


def solution_tuples(
    B_list: Sequence[OrderedSet],
    g_list: Sequence[FunctionSpec],
    x: Scalar,
) -> list[tuple]:
    """All (b_1, ..., b_k) with g_1(b_1) + ... + g_k(b_k) = x.

    Enumerates the first k-1 axes with partial-sum range pruning and
    resolves the last axis by exact inverse lookup (g_k is monotone, so
    its values on B_k are distinct).
    """
    if len(B_list) != len(g_list):
        raise InputError("need one function per set")
    images = [[evaluate(g, b) for b in B] for g, B in zip(g_list, B_list)]
    last_inverse = {v: b for v, b in zip(images[-1], B_list[-1])}
    if len(last_inverse) != len(B_list[-1]):
        raise InputError("map is not injective on its set")
    mins = [min(img) for img in images]
    maxs = [max(img) for img in images]
    suffix_min = [sum(mins[i:]) for i in range(len(B_list) + 1)]
    suffix_max = [sum(maxs[i:]) for i in range(len(B_list) + 1)]

    out: list[tuple] = []
    k = len(B_list)

    def rec(axis: int, prefix: tuple, acc: Scalar) -> None:
        if axis == k - 1:
            b_last = last_inverse.get(x - acc)
            if b_last is not None:
                out.append(prefix + (b_last,))
            return
        for b, v in zip(B_list[axis], images[axis]):
            rest = acc + v
            if rest + suffix_min[axis + 1] > x or rest + suffix_max[axis + 1] < x:
                continue
            rec(axis + 1, prefix + (b,), rest)

    rec(0, (), 0)
    return out


def lucky_pairs_for_sum(
    B_list: Sequence[OrderedSet],
    g_list: Sequence[FunctionSpec],
    x: Scalar,
    r: int,
    c: int = 4,
    partition: GridPartition | None = None,
) -> list[LuckyPair]:
    """All unordered pairs of distinct solution tuples sharing a cell.

    Every returned pair satisfies both lucky-pair conditions: the two
    tuples solve the sum equation for x, and each per-axis witness
    n_{B_i}(b_i, b_i') stays within the partition's interval capacity
    (hence within ceil(c * |B_i+B_i-B_i| / r**(1/(k-1)))).  A sum with
    r_x solutions yields at least r_x - (occupied cells) pairs.
    """
    solutions = solution_tuples(B_list, g_list, x)
    if not solutions:
        raise InputError(f"{x} has no representation as a sum")
    if partition is None:
        partition = build_partition(B_list, r, c)
    groups: dict[tuple[int, ...], list[tuple]] = {}
    for sol in solutions:
        groups.setdefault(partition.cell_of(sol), []).append(sol)
    pairs: list[LuckyPair] = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                left, right = members[i], members[j]
                witnesses = tuple(
                    ax.sumset.count_between(a, b)
                    for ax, a, b in zip(partition.axes, left, right)
                )
                pairs.append(LuckyPair(left, right, witnesses))
    return pairs


@dataclass(frozen=True)
class LuckyCensusRow:
    """Per-sum census: found pairs vs. the pigeonhole guarantee."""

    x: Scalar
    r_x: int
    pairs_found: int
    lower_bound: int
    occupied_cells: int


def lucky_census(
    B_list: Sequence[OrderedSet],
    g_list: Sequence[FunctionSpec],
    r: int,
    c: int = 4,
) -> list[LuckyCensusRow]:
    """Census over every sum in the dyadic richness class [r, 2r).

    The lower bound column is r_x - k * t**(k-1), the hyperplane-based
    guarantee (may be negative for thin sums; found pairs always meet it).
    """
    images = [
        OrderedSet(sorted(evaluate(g, b) for b in B))
        for g, B in zip(g_list, B_list)
    ]
    rep = representation(images)
    partition = build_partition(B_list, r, c)
    k = len(B_list)
    guarantee_cells = k * partition.t ** (k - 1)
    rows = []
    for x, count in rep.items():
        if not r <= count < 2 * r:
            continue
        solutions = solution_tuples(B_list, g_list, x)
        groups: dict[tuple[int, ...], int] = {}
        for sol in solutions:
            cell = partition.cell_of(sol)
            groups[cell] = groups.get(cell, 0) + 1
        found = sum(m * (m - 1) // 2 for m in groups.values())
        rows.append(
            LuckyCensusRow(x, count, found, count - guarantee_cells, len(groups))
        )
    return rows


# ---------------------------------------------------------------------------
# Generic-hyperplane cell counting and the diagonal cover.


def hyperplane_cell_count(
    boundaries: Sequence[Sequence[Scalar]], C: Scalar
) -> int:
    """Number of grid cells whose interior meets the plane sum(x_i) = C.

    ``boundaries`` holds per-axis sorted cut sequences (t_i + 1 cuts
    make t_i cells).  A cell is crossed iff sum(lower_i) < C <
    sum(upper_i), strictly: touching a corner does not count.  If C
    equals some corner-coordinate sum, it is nudged up by half the
    minimal gap between distinct corner sums so the plane is generic.
    The result never exceeds k * r**(k-1) with r the maximum cell count
    per axis.
    """
    k = len(boundaries)
    if k < 2:
        raise InputError("need at least 2 axes")
    for axis in boundaries:
        if len(axis) < 2:
            raise InputError("each axis needs at least 2 boundary points")
        if any(not a < b for a, b in zip(axis, axis[1:])):
            raise InputError("boundaries must be strictly increasing")

    C = _make_generic(boundaries, C)

    lows = [axis[:-1] for axis in boundaries]
    highs = [axis[1:] for axis in boundaries]
    min_low = [sum(lo[0] for lo in lows[i:]) for i in range(k + 1)]
    max_high = [sum(hi[-1] for hi in highs[i:]) for i in range(k + 1)]

    def rec(axis: int, low_acc: Scalar, high_acc: Scalar) -> int:
        if axis == k:
            return 1 if low_acc < C < high_acc else 0
        if low_acc + min_low[axis] >= C or high_acc + max_high[axis] <= C:
            return 0
        total = 0
        for lo, hi in zip(lows[axis], highs[axis]):
            total += rec(axis + 1, low_acc + lo, high_acc + hi)
        return total

    return rec(0, 0, 0)


def _make_generic(boundaries: Sequence[Sequence[Scalar]], C: Scalar) -> Scalar:
    corner_sums = {0}
    for axis in boundaries:
        corner_sums = {s + b for s in corner_sums for b in axis}
    if C not in corner_sums:
        return C
    ordered = sorted(corner_sums)
    min_gap = min(b - a for a, b in zip(ordered, ordered[1:]))
    return C + Fraction(min_gap, 2)


def diagonal_cover(k: int, r: int) -> list[list[tuple[int, ...]]]:
    """Partition the index grid [r]^k into its r**k - (r-1)**k diagonals.

    Each diagonal starts at a cell with some coordinate equal to 1 and
    steps by (1, ..., 1) while all coordinates stay within [r].  A plane
    sum(x_i) = C crosses the interiors of at most one cell per diagonal,
    which is what caps the crossing count at k * r**(k-1).
    """
    if k < 2 or r < 1:
        raise InputError("need k >= 2 and r >= 1")
    import itertools

    diagonals = []
    for start in itertools.product(range(1, r + 1), repeat=k):
        if min(start) != 1:
            continue
        length = r - max(start) + 1
        diagonals.append(
            [tuple(e + a for e in start) for a in range(length)]
        )
    return diagonals


# ---------------------------------------------------------------------------
# The few-values property of nearby pairs in small-doubling sets: if at
# most Z elements of B+B-B lie in (b', b], then b - b' is one of the Z
# smallest positive differences of B.


def smallest_positive_differences(B: OrderedSet, limit: int | None = None) -> list:
    diffs = sorted({b - a for a in B for b in B if b > a})
    return diffs if limit is None else diffs[:limit]
