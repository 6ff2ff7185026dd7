"""Exact computation of representation functions, energies and spectra.

The k-fold representation function of A_1 + ... + A_k assigns to each
value x the number of ordered tuples summing to x; its total mass is
the product of the set sizes.  Everything downstream (energies = second
moments, higher moments, rich-sum spectra, sumset sizes, doubling
constants) is derived from it with exact integer arithmetic.

Three interchangeable algorithms compute it:

* ``naive`` -- enumerate all tuples (the N**k expansion);
* ``mitm``  -- balanced convolution tree: convolve the representation
  functions of the two halves;
* ``dense`` -- integer-only folding over a dense count array keyed by
  value offset.

``auto`` selects by estimated cost.  All modes agree exactly and are
cross-checked in the test suite.  Operations estimate their memory
before allocating and raise ResourceError when the configured budget
(default 4 GiB) would be exceeded.

Everything here is pure and deterministic; independent computations can
run concurrently with bit-identical results.
"""

from __future__ import annotations

import itertools
import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from . import kernels
from .core import (
    DEFAULT_MEMORY_BUDGET,
    DICT_ENTRY_BYTES,
    _DENSE_SPAN_FACTOR,
    OrderedSet,
    SparseCounts,
    convolve,
    mass_of_squares,
    moment_sum,
)
from .errors import InputError, ResourceError, VerificationError

Signs = Union[str, Sequence[int], None]

_ALGOS = ("auto", "naive", "mitm", "dense")

# Relative per-operation cost units used by the auto planner: a Python
# dict update is the unit; compiled/numpy element ops count as 1/50.
_COMPILED_OP = 0.02
_NAIVE_TUPLE = 3.0


def parse_signs(signs: Signs, k: int) -> tuple[int, ...]:
    """Normalize a sign pattern ('++-', [1,1,-1], None) to a tuple."""
    if signs is None:
        return (1,) * k
    if isinstance(signs, str):
        table = {"+": 1, "-": -1, "−": -1}
        try:
            out = tuple(table[ch] for ch in signs)
        except KeyError as exc:
            raise InputError(f"bad sign character in {signs!r}") from exc
    else:
        out = tuple(int(s) for s in signs)
        if any(s not in (-1, 1) for s in out):
            raise InputError("signs must be +1 or -1")
    if len(out) != k:
        raise InputError(f"expected {k} signs, got {len(out)}")
    return out


def apply_signs(sets: Sequence[OrderedSet], signs: Signs) -> list[OrderedSet]:
    eps = parse_signs(signs, len(sets))
    return [A if e == 1 else A.negate() for A, e in zip(sets, eps)]


# ---------------------------------------------------------------------------
# Verify mode: cross-checks embedded in the hot paths, activated by the
# `verification()` context.  Checks raise VerificationError on failure.


@dataclass
class VerifyStats:
    mass_checks: int = 0
    sandwich_checks: int = 0
    cauchy_schwarz_checks: int = 0


_verify_ctx: ContextVar[VerifyStats | None] = ContextVar(
    "sumsetlab_verify", default=None
)


@contextmanager
def verification() -> Iterator[VerifyStats]:
    """Enable internal invariant checks for the enclosed computations."""
    stats = VerifyStats()
    token = _verify_ctx.set(stats)
    try:
        yield stats
    finally:
        _verify_ctx.reset(token)


def _verify_representation(rep: SparseCounts, sets: Sequence[OrderedSet]) -> None:
    stats = _verify_ctx.get()
    if stats is None:
        return
    expected = 1
    for A in sets:
        expected *= len(A)
    if rep.mass != expected:
        raise VerificationError(
            f"representation mass {rep.mass} != product of sizes {expected}"
        )
    stats.mass_checks += 1
    total = mass_of_squares(rep)
    weighted = sum(4 ** (c.bit_length() - 1) for c in rep.counts)
    if not weighted <= total < 4 * weighted:
        raise VerificationError("dyadic spectrum sandwich violated")
    stats.sandwich_checks += 1


# ---------------------------------------------------------------------------
# Planning: entry estimates and memory/cost estimates per algorithm.


@dataclass(frozen=True)
class _Node:
    entries: int
    lo: object
    hi: object
    integer: bool


def _leaf(A: OrderedSet) -> _Node:
    return _Node(len(A), A[0], A[-1], A.is_integer)


def _join(p: _Node, q: _Node, budget: int) -> tuple[_Node, int, float]:
    """Estimate (output node, bytes, cost) for convolving p with q."""
    work = p.entries * q.entries
    lo, hi = p.lo + q.lo, p.hi + q.hi
    if p.integer and q.integer:
        span = hi - lo + 1
        out = min(work, span)
        node = _Node(out, lo, hi, True)
        span_limit = min(budget // 16, _DENSE_SPAN_FACTOR * work)
        if kernels.BACKEND == "cython" and span <= span_limit:
            return node, span * 8 + out * 16, work * _COMPILED_OP + span * _COMPILED_OP
        return node, out * DICT_ENTRY_BYTES, float(work)
    node = _Node(work, lo, hi, False)
    return node, work * DICT_ENTRY_BYTES, float(work)


def _plan_mitm(sets: Sequence[OrderedSet], budget: int) -> tuple[int, float]:
    def rec(lo: int, hi: int) -> tuple[_Node, int, float]:
        if hi - lo == 1:
            return _leaf(sets[lo]), 0, 0.0
        mid = (lo + hi + 1) // 2
        left, b1, c1 = rec(lo, mid)
        right, b2, c2 = rec(mid, hi)
        node, b3, c3 = _join(left, right, budget)
        return node, max(b1, b2, b3), c1 + c2 + c3

    _, peak, cost = rec(0, len(sets))
    return peak, cost


def _plan_naive(sets: Sequence[OrderedSet]) -> tuple[int, float]:
    mass = 1
    for A in sets:
        mass *= len(A)
    if all(A.is_integer for A in sets):
        span = sum(A[-1] for A in sets) - sum(A[0] for A in sets) + 1
        out = min(mass, span)
    else:
        out = mass
    return out * DICT_ENTRY_BYTES, mass * _NAIVE_TUPLE


def _plan_dense(sets: Sequence[OrderedSet]) -> tuple[int, float]:
    if not all(A.is_integer for A in sets):
        return -1, math.inf
    span = sum(A[-1] for A in sets) - sum(A[0] for A in sets) + 1
    fold_elems = span * sum(len(A) for A in sets[1:])
    return span * 16, fold_elems * _COMPILED_OP


# ---------------------------------------------------------------------------
# The three representation algorithms.


def _rep_naive(sets: Sequence[OrderedSet]) -> SparseCounts:
    acc: dict = {}
    for tup in itertools.product(*(A.elements for A in sets)):
        s = sum(tup)
        if s in acc:
            acc[s] += 1
        else:
            acc[s] = 1
    return SparseCounts.from_dict(acc)


def _rep_mitm(sets: Sequence[OrderedSet], budget: int) -> SparseCounts:
    if len(sets) == 1:
        return SparseCounts.from_set(sets[0])
    mid = (len(sets) + 1) // 2
    left = _rep_mitm(sets[:mid], budget)
    right = _rep_mitm(sets[mid:], budget)
    return convolve(left, right, budget)


def _rep_dense(sets: Sequence[OrderedSet]) -> SparseCounts:
    if not all(A.is_integer for A in sets):
        raise InputError("dense mode requires integer-valued sets")
    mass = 1
    for A in sets:
        mass *= len(A)
    first = sets[0]
    cur_lo = first[0]
    if mass < 2**62 and abs(sum(A[0] for A in sets)) < 2**62 and abs(
        sum(A[-1] for A in sets)
    ) < 2**62:
        import numpy as np

        cur = np.zeros(first[-1] - first[0] + 1, dtype=np.int64)
        for a in first:
            cur[a - cur_lo] = 1
        for A in sets[1:]:
            new_lo = cur_lo + A[0]
            new = np.zeros(cur.shape[0] + (A[-1] - A[0]), dtype=np.int64)
            for a in A:
                off = cur_lo + a - new_lo
                new[off : off + cur.shape[0]] += cur
            cur, cur_lo = new, new_lo
        nz = np.flatnonzero(cur)
        return SparseCounts((nz + cur_lo).tolist(), cur[nz].tolist())

    # Arbitrary-precision fallback for masses beyond int64 (rare).
    row = [0] * (first[-1] - first[0] + 1)
    for a in first:
        row[a - cur_lo] = 1
    for A in sets[1:]:
        new_lo = cur_lo + A[0]
        new = [0] * (len(row) + (A[-1] - A[0]))
        for a in A:
            off = cur_lo + a - new_lo
            for i, c in enumerate(row):
                if c:
                    new[off + i] += c
        row, cur_lo = new, new_lo
    values = [cur_lo + i for i, c in enumerate(row) if c]
    return SparseCounts(values, [c for c in row if c])


def representation(
    sets: Sequence[OrderedSet],
    *,
    signs: Signs = None,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> SparseCounts:
    """Exact representation function of A_1 +/- ... +/- A_k.

    Raises ResourceError (before allocating) when the estimated memory
    of the requested algorithm exceeds the budget; in auto mode the
    cheapest feasible algorithm is chosen.
    """
    if not sets:
        raise InputError("need at least one set")
    if algo not in _ALGOS:
        raise InputError(f"unknown algorithm {algo!r}")
    budget = DEFAULT_MEMORY_BUDGET if mem_budget is None else mem_budget
    signed = apply_signs(sets, signs)

    if len(signed) == 1:
        rep = SparseCounts.from_set(signed[0])
        _verify_representation(rep, signed)
        return rep

    plans = {
        "naive": _plan_naive(signed),
        "mitm": _plan_mitm(signed, budget),
        "dense": _plan_dense(signed),
    }
    if algo == "auto":
        feasible = {
            name: cost
            for name, (bytes_, cost) in plans.items()
            if 0 <= bytes_ <= budget
        }
        if not feasible:
            best = min(b for b, _ in plans.values() if b >= 0)
            raise ResourceError(best, budget, "representation")
        # Stable tie-break: mitm, then dense, then naive.
        order = {"mitm": 0, "dense": 1, "naive": 2}
        algo = min(feasible, key=lambda name: (feasible[name], order[name]))
    else:
        bytes_, _ = plans[algo]
        if bytes_ < 0:
            raise InputError("dense mode requires integer-valued sets")
        if bytes_ > budget:
            raise ResourceError(bytes_, budget, f"representation[{algo}]")

    if algo == "naive":
        rep = _rep_naive(signed)
    elif algo == "mitm":
        rep = _rep_mitm(signed, budget)
    else:
        rep = _rep_dense(signed)
    _verify_representation(rep, signed)
    return rep


# ---------------------------------------------------------------------------
# Energies and moments.


def energy_T(
    sets: Sequence[OrderedSet],
    *,
    signs: Signs = None,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> int:
    """Number of 2k-tuples with equal k-fold sums (exact)."""
    rep = representation(sets, signs=signs, algo=algo, mem_budget=mem_budget)
    total = mass_of_squares(rep)
    if len(sets) >= 1 and all(A == sets[0] for A in sets):
        n, k = len(sets[0]), len(sets)
        assert n**k <= total <= n ** (2 * k - 1), "universal energy bounds violated"
    return total


def energy_cross(
    A: OrderedSet,
    C: OrderedSet,
    *,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> int:
    """E(A, C): the two-summand energy."""
    total = energy_T([A, C], algo=algo, mem_budget=mem_budget)
    stats = _verify_ctx.get()
    if stats is not None:
        ea = mass_of_squares(representation([A, A], algo=algo, mem_budget=mem_budget))
        ec = mass_of_squares(representation([C, C], algo=algo, mem_budget=mem_budget))
        if total * total > ea * ec:
            raise VerificationError("Cauchy-Schwarz cross bound violated")
        stats.cauchy_schwarz_checks += 1
    return total


def moment(
    sets: Sequence[OrderedSet],
    m: int,
    *,
    signs: Signs = None,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> int:
    """Integer moment: sum of r(x)**m (m = 2 recovers the energy)."""
    rep = representation(sets, signs=signs, algo=algo, mem_budget=mem_budget)
    return moment_sum(rep, m)


def fractional_moment(
    sets: Sequence[OrderedSet],
    p: Union[int, float, Fraction],
    *,
    signs: Signs = None,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> float:
    """sum of r(x)**(1+p) for 0 < p < 2, in floating point.

    The only non-exact computation in the engine: counts are exact
    integers, exponentiation is IEEE double (counts stay below 2**53 at
    desk scale, so each term is correct to ~1 ulp and the compensated
    sum keeps the relative error within 1e-12).
    """
    pf = float(p)
    if not 0 < pf < 2:
        raise InputError("fractional moment exponent p must lie in (0, 2)")
    rep = representation(sets, signs=signs, algo=algo, mem_budget=mem_budget)
    return math.fsum(float(c) ** (1.0 + pf) for c in rep.counts)


# ---------------------------------------------------------------------------
# Spectra, sumsets, doubling, popular class.


@dataclass(frozen=True)
class Spectrum:
    """Dyadic classes of a representation function.

    Class j collects the sums x with 2**j <= r(x) < 2**(j+1); empty
    classes are omitted.  The weighted sum 4**j * size sandwiches the
    energy: weighted <= T < 4 * weighted.
    """

    classes: tuple[tuple[int, int], ...]
    total_T: int

    def weighted_sum(self) -> int:
        return sum(4**j * size for j, size in self.classes)

    def size_of(self, j: int) -> int:
        for jj, size in self.classes:
            if jj == j:
                return size
        return 0


def spectrum_of(rep: SparseCounts) -> Spectrum:
    sizes: dict[int, int] = {}
    for c in rep.counts:
        j = c.bit_length() - 1
        sizes[j] = sizes.get(j, 0) + 1
    classes = tuple(sorted(sizes.items()))
    return Spectrum(classes, mass_of_squares(rep))


def spectrum(
    sets: Sequence[OrderedSet],
    *,
    signs: Signs = None,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> Spectrum:
    rep = representation(sets, signs=signs, algo=algo, mem_budget=mem_budget)
    return spectrum_of(rep)


def rich_tail(rep: SparseCounts, r: int) -> int:
    """|{x : r(x) >= r}|."""
    return sum(1 for c in rep.counts if c >= r)


def signed_sumset(
    sets: Sequence[OrderedSet],
    signs: Signs,
    *,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> OrderedSet:
    """The set {e_1 a_1 + ... + e_k a_k}; first sign must be +1."""
    eps = parse_signs(signs, len(sets))
    if eps[0] != 1:
        raise InputError("sign patterns are normalized to start with +")
    rep = representation(sets, signs=eps, algo=algo, mem_budget=mem_budget)
    return rep.support()


@dataclass(frozen=True)
class DoublingReport:
    """Size and doubling constant of a patterned self-sumset of B."""

    pattern: str
    size: int
    K: Fraction


def doubling(
    B: OrderedSet,
    pattern: str,
    *,
    algo: str = "auto",
    mem_budget: int | None = None,
) -> DoublingReport:
    """Exact |B +/- B +/- ... +/- B| and K = size / |B| for a sign string."""
    if not pattern:
        raise InputError("pattern must have length >= 1")
    eps = parse_signs(pattern, len(pattern))
    rep = representation([B] * len(eps), signs=eps, algo=algo, mem_budget=mem_budget)
    size = len(rep)
    return DoublingReport(pattern, size, Fraction(size, len(B)))


@dataclass(frozen=True)
class PopularClass:
    """The dyadic class of differences maximizing |D| * Delta**2."""

    differences: OrderedSet
    delta: int
    score: int


def popular_dyadic_class(
    A: OrderedSet, *, algo: str = "auto", mem_budget: int | None = None
) -> PopularClass:
    """Scan the difference representation r_{A-A} (zero and both signs
    included) for the dyadic class with maximal |D| * Delta**2; ties go
    to the larger Delta.
    """
    if len(A) < 2:
        raise InputError("popular class needs at least 2 elements")
    rep = representation([A, A], signs=(1, -1), algo=algo, mem_budget=mem_budget)
    by_class: dict[int, list] = {}
    for v, c in rep.items():
        by_class.setdefault(c.bit_length() - 1, []).append(v)
    best: PopularClass | None = None
    for j, values in sorted(by_class.items()):
        delta = 2**j
        score = len(values) * delta * delta
        if best is None or score > best.score or (
            score == best.score and delta > best.delta
        ):
            best = PopularClass(OrderedSet(sorted(values)), delta, score)
    assert best is not None
    return best


def popular_bound_factor(n: int) -> int:
    """4 * (floor(log2(2N)) + 1): the class-count factor in the energy
    bound E(A) <= factor * |D| * Delta**2."""
    return 4 * (2 * n).bit_length()


def check_popular_bound(
    A: OrderedSet, *, algo: str = "auto", mem_budget: int | None = None
) -> tuple[int, int, bool]:
    """Return (E(A), bound, E <= bound) for the popular-class bound."""
    pop = popular_dyadic_class(A, algo=algo, mem_budget=mem_budget)
    e = energy_T([A, A], algo=algo, mem_budget=mem_budget)
    bound = popular_bound_factor(len(A)) * pop.score
    return e, bound, e <= bound
