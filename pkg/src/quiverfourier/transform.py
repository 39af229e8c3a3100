"""The combinatorial Fourier transform on triangular arrays.

Two mutually inverse bijections between the arrays for ``w`` and those for
the reversed vector ``w*`` are built from single-entry raises and lowers:

* :func:`fourier_transform` peels the last ladder, recurses, and rebuilds
  by cascades of raises whose multiplicities are the last-ladder
  differences;
* :func:`fourier_transform_inverse` repeatedly extracts a lowered segment
  from the top chute, recurses on the rest, and adjoins the extraction
  counts as the new bottom ladder.

Both realize the bijection that the Fourier-Sato transform induces on
orbit labels, and they are in fact the same map; the geometry module
provides an independent check of this through generic commuting
representations.

Every function is pure.  Pass ``trace=[]`` to the traversal-heavy
operations to collect a line-oriented log of each elementary move.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import TriangularArray
from .errors import (
    EmptyTopChute,
    InternalError,
    LadderViolation,
    NegativeEntry,
    NotDecreasing,
    ShapeError,
    SizeError,
    UndefinedMove,
)

#: Sentinel for "no such column"; compares exactly against any int.
INFINITY = math.inf

ExtendedIndex = float  # an int column index, or INFINITY


def _emit(trace, line):
    if trace is not None:
        trace.append(line)


def _replace(array, i, j, value):
    chutes = list(array.chutes)
    chute = list(chutes[i - 1])
    chute[j - 1] = value
    chutes[i - 1] = tuple(chute)
    return TriangularArray(tuple(chutes))


# ---------------------------------------------------------------------------
# Elementary operations
# ---------------------------------------------------------------------------

def del_chute(array: TriangularArray) -> TriangularArray:
    """Drop the first chute, shrinking the size by one."""
    if array.n == 1:
        raise SizeError("cannot delete the only chute of a size-1 array")
    return TriangularArray(array.chutes[1:])


def del_ladder(array: TriangularArray) -> TriangularArray:
    """Drop the last ladder, shrinking the size by one."""
    if array.n == 1:
        raise SizeError("cannot delete the only ladder of a size-1 array")
    return TriangularArray(tuple(chute[:-1] for chute in array.chutes[:-1]))


def top_chute(array: TriangularArray) -> tuple:
    return array.chutes[0]


def adjoin_chute(array: TriangularArray, q) -> TriangularArray:
    """Make ``q`` (length n+1) the new topmost chute.

    Requires ``q[j] <= y[1][j-1]`` for j >= 2 so the result still has weakly
    decreasing ladders.
    """
    q = tuple(q)
    n = array.n
    if len(q) != n + 1:
        raise ShapeError(f"new chute needs {n + 1} entries, got {len(q)}")
    for j, entry in enumerate(q, start=1):
        if not isinstance(entry, int):
            raise ShapeError(f"new chute entry {j} is not an integer: {entry!r}")
        if entry < 0:
            raise NegativeEntry(f"new chute entry {j} is negative: {entry}")
    for j in range(2, n + 2):
        if q[j - 1] > array.entry(1, j - 1):
            raise LadderViolation(
                f"new top entry q_{j}={q[j - 1]} exceeds entry "
                f"(1,{j - 1})={array.entry(1, j - 1)}"
            )
    return TriangularArray((q,) + array.chutes)


def adjoin_ladder(array: TriangularArray, q) -> TriangularArray:
    """Adjoin ``q`` (length n+1, weakly decreasing) as the new last ladder."""
    q = tuple(q)
    n = array.n
    if len(q) != n + 1:
        raise ShapeError(f"new ladder needs {n + 1} entries, got {len(q)}")
    for j, entry in enumerate(q, start=1):
        if not isinstance(entry, int):
            raise ShapeError(f"new ladder entry {j} is not an integer: {entry!r}")
        if entry < 0:
            raise NegativeEntry(f"new ladder entry {j} is negative: {entry}")
    if any(q[t] < q[t + 1] for t in range(n)):
        raise NotDecreasing(f"new ladder must be weakly decreasing, got {q}")
    chutes = tuple(array.chutes[i] + (q[n - i],) for i in range(n))
    return TriangularArray(chutes + ((q[0],),))


def raise_entry(array: TriangularArray, i: int, j: int, trace=None) -> TriangularArray:
    """Increase entry (i, j) by one.  Defined iff j = 1 or the entry is
    strictly below its ladder neighbour ``y[i+1][j-1]``."""
    value = array.entry(i, j)
    if j > 1 and value >= array.entry(i + 1, j - 1):
        raise UndefinedMove(
            f"cannot raise ({i},{j}): entry {value} not below "
            f"({i + 1},{j - 1})={array.entry(i + 1, j - 1)}"
        )
    _emit(trace, f"raise i={i} j={j}")
    return _replace(array, i, j, value + 1)


def lower_entry(array: TriangularArray, i: int, j: int, trace=None) -> TriangularArray:
    """Decrease entry (i, j) by one.  Defined iff the entry stays a valid
    triangle: positive when i = 1, strictly above ``y[i-1][j+1]`` otherwise."""
    value = array.entry(i, j)
    if i == 1:
        if value <= 0:
            raise UndefinedMove(f"cannot lower ({i},{j}): entry is zero")
    elif value <= array.entry(i - 1, j + 1):
        raise UndefinedMove(
            f"cannot lower ({i},{j}): entry {value} not above "
            f"({i - 1},{j + 1})={array.entry(i - 1, j + 1)}"
        )
    _emit(trace, f"lower i={i} j={j}")
    return _replace(array, i, j, value - 1)


# ---------------------------------------------------------------------------
# Column scans
# ---------------------------------------------------------------------------

def first_positive_column(array: TriangularArray, k: int) -> ExtendedIndex:
    """Smallest column j >= k with a positive top-chute entry, else INFINITY."""
    n = array.n
    if not 1 <= k <= n:
        raise IndexError(f"column bound {k} outside 1..{n}")
    for j in range(k, n + 1):
        if array.entry(1, j) > 0:
            return j
    return INFINITY


def next_raisable_column(array: TriangularArray, k: int) -> ExtendedIndex:
    """Smallest column j strictly after :func:`first_positive_column` where a
    top-chute raise is legal (``y[1][j] < y[2][j-1]``), else INFINITY."""
    start = first_positive_column(array, k)
    if start == INFINITY:
        return INFINITY
    for j in range(start + 1, array.n + 1):
        if array.entry(1, j) < array.entry(2, j - 1):
            return j
    return INFINITY


def last_raisable_column(array: TriangularArray, i: int, k: int) -> int:
    """Largest column j <= k where a raise in chute i is legal; at worst 1."""
    n = array.n
    if not (1 <= k <= n and 1 <= i <= n - k + 1):
        raise IndexError(f"chute {i}, bound {k} outside a size-{n} triangle")
    best = 1
    for j in range(2, k + 1):
        if array.entry(i, j) < array.entry(i + 1, j - 1):
            best = j
    return best


# ---------------------------------------------------------------------------
# Cascades
# ---------------------------------------------------------------------------

class CascadeState(NamedTuple):
    array: TriangularArray
    chute: int
    bound: int


class CascadeResult(NamedTuple):
    array: TriangularArray
    span: int  # number of leading chutes whose sums dropped by one


def cascade_step(state: CascadeState, trace=None) -> CascadeState:
    """One step of a raise cascade: raise in the current chute at the last
    raisable column within the bound, then move to the chute above."""
    array, i, k = state
    if i < 1:
        raise IndexError(f"cascade already finished (chute index {i})")
    column = last_raisable_column(array, i, k)
    _emit(trace, f"cascade chute={i} bound={k} column={column}")
    return CascadeState(raise_entry(array, i, column, trace), i - 1, column)


def raise_cascade(array: TriangularArray, i: int, trace=None) -> TriangularArray:
    """Raise one entry in each of chutes i, i-1, ..., 1, the column bound
    tightening as it goes.  Adds (1, ..., 1, 0, ..., 0) — one for each of the
    first i chutes — to the dimension vector."""
    n = array.n
    if not 1 <= i <= n:
        raise IndexError(f"chute {i} outside a size-{n} triangle")
    state = CascadeState(array, i, n - i + 1)
    for _ in range(i):
        state = cascade_step(state, trace)
    return state.array


def lower_cascade(array: TriangularArray, k: int, trace=None,
                  _level: int = 1) -> CascadeResult:
    """Extract one segment from the array by lowers: the inverse of a raise
    cascade.

    Returns ``(result, span)`` where the dimension vector drops by exactly
    one in each of chutes 1..span; :func:`raise_cascade` at ``span`` undoes
    it.  Requires a positive top-chute entry at or after column ``k``.
    """
    start = first_positive_column(array, k)
    if start == INFINITY:
        raise EmptyTopChute(f"no positive top-chute entry at column >= {k}")
    branch = next_raisable_column(array, k)
    _emit(
        trace,
        f"extract level={_level} k={k} first_positive={start} "
        f"next_raisable={branch}",
    )
    if branch == INFINITY:
        result = CascadeResult(lower_entry(array, 1, start, trace), 1)
    else:
        inner = lower_cascade(del_chute(array), branch - 1, trace, _level + 1)
        rebuilt = adjoin_chute(inner.array, top_chute(array))
        result = CascadeResult(lower_entry(rebuilt, 1, start, trace), inner.span + 1)
    got = result.array.dim_vector
    expected = tuple(
        v - 1 if idx < result.span else v
        for idx, v in enumerate(array.dim_vector)
    )
    if got != expected:
        raise InternalError(
            f"extraction changed dimensions to {got}, expected {expected}"
        )
    return result


# ---------------------------------------------------------------------------
# The transform and its inverse
# ---------------------------------------------------------------------------

def fourier_transform(array: TriangularArray, trace=None) -> TriangularArray:
    """Map an array for ``w`` to the matching array for the reverse ``w*``.

    Size 1 is a fixed point.  Otherwise peel the last ladder, transform the
    remainder, adjoin a zero top chute, and apply raise cascades: for each
    chute i = n..1, cascade up to chute n-i+1 exactly
    ``y[i][n-i+1] - y[i-1][n-i+2]`` times (a difference along the peeled
    ladder, nonnegative by the ladder constraint).
    """
    n = array.n
    _emit(trace, f"transform enter n={n}")
    if n == 1:
        return array
    out = adjoin_chute(fourier_transform(del_ladder(array), trace), (0,) * n)
    for i in range(n, 0, -1):
        times = array.entry(i, n - i + 1)
        if i > 1:
            times -= array.entry(i - 1, n - i + 2)
        if times < 0:
            raise InternalError(
                f"negative cascade multiplicity {times} at chute {i}"
            )
        _emit(trace, f"transform apply chute={n - i + 1} times={times}")
        for _ in range(times):
            out = raise_cascade(out, n - i + 1, trace)
    return out


def fourier_transform_inverse(array: TriangularArray, trace=None) -> TriangularArray:
    """Inverse of :func:`fourier_transform` (and pointwise equal to it).

    Extract segments via :func:`lower_cascade` at column bound 1 until the
    top chute is exhausted; the extraction spans are weakly decreasing, and
    their histogram becomes the last ladder of the result, wrapped around
    the recursively transformed remainder.
    """
    n = array.n
    w1 = array.dim_vector[0]
    _emit(trace, f"inverse enter n={n} extractions={w1}")
    if n == 1:
        return array
    current = array
    spans = []
    for _ in range(w1):
        current, span = lower_cascade(current, 1, trace)
        spans.append(span)
    if any(spans[t] < spans[t + 1] for t in range(len(spans) - 1)):
        raise InternalError(f"extraction spans not weakly decreasing: {spans}")
    ladder = tuple(sum(1 for s in spans if s >= j) for j in range(1, n + 1))
    _emit(trace, f"inverse ladder P={ladder}")
    inner = fourier_transform_inverse(del_chute(current), trace)
    return adjoin_ladder(inner, ladder)
