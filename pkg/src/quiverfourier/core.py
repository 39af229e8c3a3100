"""Triangular arrays labelling orbits of equioriented type-A quiver moduli.

A triangular array of size n is a triangle of nonnegative integers
``y[i][j]`` (chute i = 1..n, column j = 1..n-i+1) whose anti-diagonals
("ladders") are weakly decreasing: ``y[i][j] >= y[i-1][j+1]``.  The chute
sums form the dimension vector ``w``, and the arrays with a fixed ``w``
classify the orbits of ``GL(w_1) x ... x GL(w_n)`` acting on the space of
representations ``C^{w_1} -> C^{w_2} -> ... -> C^{w_n}``.

This module provides the arrays themselves, their bijection with
multisegments (multiplicity tables of the indecomposable representations),
the closure partial order in three equivalent forms, orbit dimension
formulas, and the orbit poset with its Hasse diagram.

All indices in the public API are 1-based, matching the usual drawing of
the triangle.  All values are immutable; all functions are pure.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import (
    DimMismatch,
    InternalError,
    LadderViolation,
    NegativeEntry,
    ParseError,
    ShapeError,
    SizeMismatch,
)

DimVector = tuple  # alias: a tuple of nonnegative ints, one per quiver vertex

_WHITESPACE = re.compile(r"\s+")


def validate_dim_vector(w) -> tuple:
    """Return ``w`` as a validated tuple of nonnegative integers."""
    w = tuple(w)
    if len(w) == 0:
        raise ShapeError("dimension vector must have at least one entry")
    for idx, entry in enumerate(w, start=1):
        if not isinstance(entry, int):
            raise ShapeError(f"dimension vector entry {idx} is not an integer: {entry!r}")
        if entry < 0:
            raise NegativeEntry(f"dimension vector entry {idx} is negative: {entry}")
    return w


def reverse_dim_vector(w) -> tuple:
    return tuple(reversed(tuple(w)))


@dataclass(frozen=True)
class TriangularArray:
    """An integer triangle with fixed chute sums and weakly decreasing ladders.

    ``chutes[i-1]`` is chute i (a row of the triangle, length n-i+1); ladder k
    is the anti-diagonal ``y[k][1], y[k-1][2], ..., y[1][k]``.  Text form is
    chute-by-chute, e.g. ``"0,1,2/1,2/3"``.
    """

    chutes: tuple

    def __post_init__(self):
        chutes = tuple(tuple(chute) for chute in self.chutes)
        object.__setattr__(self, "chutes", chutes)
        n = len(chutes)
        if n == 0:
            raise ShapeError("a triangular array needs at least one chute")
        for i, chute in enumerate(chutes, start=1):
            if len(chute) != n - i + 1:
                raise ShapeError(
                    f"chute {i} must have {n - i + 1} entries, got {len(chute)}"
                )
            for j, entry in enumerate(chute, start=1):
                if not isinstance(entry, int):
                    raise ShapeError(f"entry ({i},{j}) is not an integer: {entry!r}")
                if entry < 0:
                    raise NegativeEntry(f"entry ({i},{j}) is negative: {entry}")
        for i in range(2, n + 1):
            for j in range(1, n - i + 2):
                if chutes[i - 1][j - 1] < chutes[i - 2][j]:
                    raise LadderViolation(
                        f"entry ({i},{j})={chutes[i - 1][j - 1]} is smaller than "
                        f"entry ({i - 1},{j + 1})={chutes[i - 2][j]}"
                    )

    @property
    def n(self) -> int:
        return len(self.chutes)

    @property
    def dim_vector(self) -> tuple:
        """Chute sums ``(w_1, ..., w_n)``."""
        return tuple(sum(chute) for chute in self.chutes)

    def entry(self, i: int, j: int) -> int:
        """Entry in chute i, column j (1-based)."""
        if not (1 <= i <= self.n and 1 <= j <= self.n - i + 1):
            raise IndexError(f"position ({i},{j}) outside a size-{self.n} triangle")
        return self.chutes[i - 1][j - 1]

    def chute(self, i: int) -> tuple:
        if not 1 <= i <= self.n:
            raise IndexError(f"chute {i} outside a size-{self.n} triangle")
        return self.chutes[i - 1]

    def ladder(self, k: int) -> tuple:
        """Ladder k read outward: ``y[k][1], y[k-1][2], ..., y[1][k]``."""
        if not 1 <= k <= self.n:
            raise IndexError(f"ladder {k} outside a size-{self.n} triangle")
        return tuple(self.chutes[k - 1 - t][t] for t in range(k))

    def column(self, j: int) -> tuple:
        if not 1 <= j <= self.n:
            raise IndexError(f"column {j} outside a size-{self.n} triangle")
        return tuple(self.chutes[i][j - 1] for i in range(self.n - j + 1))

    def text(self) -> str:
        """Canonical text form, e.g. ``"0,1,2/1,2/3"``."""
        return "/".join(",".join(str(e) for e in chute) for chute in self.chutes)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"TriangularArray({self.text()!r})"

    @classmethod
    def parse(cls, text: str) -> "TriangularArray":
        """Parse the slash/comma text form; whitespace is ignored."""
        stripped = _WHITESPACE.sub("", text)
        if not stripped:
            raise ParseError("empty triangle literal")
        chutes = []
        for ci, chunk in enumerate(stripped.split("/"), start=1):
            if not chunk:
                raise ParseError(f"chute {ci} is empty")
            entries = []
            for ei, token in enumerate(chunk.split(","), start=1):
                try:
                    entries.append(int(token))
                except ValueError:
                    raise ParseError(
                        f"chute {ci}, entry {ei}: not an integer: {token!r}"
                    ) from None
            chutes.append(tuple(entries))
        return cls(tuple(chutes))

    def to_json(self) -> dict:
        return {"n": self.n, "chutes": [list(chute) for chute in self.chutes]}

    @classmethod
    def from_json(cls, obj) -> "TriangularArray":
        try:
            n = obj["n"]
            chutes = obj["chutes"]
        except (TypeError, KeyError) as exc:
            raise ParseError(f"triangle JSON needs 'n' and 'chutes': {obj!r}") from exc
        array = cls(tuple(tuple(chute) for chute in chutes))
        if array.n != n:
            raise ShapeError(f"declared size {n} but {array.n} chutes given")
        return array


def new_triangle(n: int, entries) -> TriangularArray:
    """Build and validate a triangular array of size ``n`` from ragged rows."""
    chutes = tuple(tuple(chute) for chute in entries)
    if len(chutes) != n:
        raise ShapeError(f"expected {n} chutes, got {len(chutes)}")
    return TriangularArray(chutes)


def parse_triangle(text: str) -> TriangularArray:
    return TriangularArray.parse(text)


def dim_vector(array: TriangularArray) -> tuple:
    return array.dim_vector


def zero_orbit(w) -> TriangularArray:
    """The array with all mass in column 1: the zero representation's label."""
    w = validate_dim_vector(w)
    n = len(w)
    return TriangularArray(
        tuple((w[i],) + (0,) * (n - i - 1) for i in range(n))
    )


# ---------------------------------------------------------------------------
# Multisegments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Multisegment:
    """Multiplicities ``b[i][j]`` (1 <= i <= j <= n) of the segments [i, j].

    ``b[i][j]`` counts the indecomposable summands supported on vertices
    i..j; ``rows[i-1]`` stores ``(b[i][i], ..., b[i][n])``.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0:
            raise ShapeError("a multisegment needs size at least one")
        for i, row in enumerate(rows, start=1):
            if len(row) != n - i + 1:
                raise ShapeError(f"row {i} must have {n - i + 1} entries, got {len(row)}")
            for j, entry in enumerate(row, start=i):
                if not isinstance(entry, int):
                    raise ShapeError(f"multiplicity ({i},{j}) is not an integer: {entry!r}")
                if entry < 0:
                    raise NegativeEntry(f"multiplicity ({i},{j}) is negative: {entry}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def multiplicity(self, i: int, j: int) -> int:
        if not 1 <= i <= j <= self.n:
            raise IndexError(f"pair ({i},{j}) outside 1 <= i <= j <= {self.n}")
        return self.rows[i - 1][j - i]

    @property
    def dim_vector(self) -> tuple:
        """Sum of segment dimension vectors: ``w_k = sum b[i][j] over i<=k<=j``."""
        n = self.n
        w = [0] * n
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                m = self.rows[i - 1][j - i]
                for k in range(i, j + 1):
                    w[k - 1] += m
        return tuple(w)

    @classmethod
    def from_dict(cls, n: int, table) -> "Multisegment":
        """Build from a ``{(i, j): multiplicity}`` mapping; missing pairs are 0."""
        rows = [[0] * (n - i + 1) for i in range(1, n + 1)]
        for (i, j), m in table.items():
            if not 1 <= i <= j <= n:
                raise IndexError(f"pair ({i},{j}) outside 1 <= i <= j <= {n}")
            rows[i - 1][j - i] = m
        return cls(tuple(tuple(row) for row in rows))

    def to_dict(self) -> dict:
        return {
            (i, j): self.rows[i - 1][j - i]
            for i in range(1, self.n + 1)
            for j in range(i, self.n + 1)
            if self.rows[i - 1][j - i]
        }


def to_multisegment(array: TriangularArray) -> Multisegment:
    """Segment multiplicities of an array: ``b[i][j] = y[i][j-i+1] - y[i-1][j-i+2]``.

    The subtraction is nonnegative by the ladder constraint, so every array
    yields a valid multisegment, and the map is a bijection (see
    :func:`from_multisegment`).
    """
    n = array.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(i, n + 1):
            value = array.entry(i, j - i + 1)
            if i > 1:
                value -= array.entry(i - 1, j - i + 2)
            row.append(value)
        rows.append(tuple(row))
    return Multisegment(tuple(rows))


def from_multisegment(segments: Multisegment) -> TriangularArray:
    """Inverse of :func:`to_multisegment`: ``y[i][j] = sum_{h<=i} b[h][i+j-1]``."""
    n = segments.n
    chutes = []
    for i in range(1, n + 1):
        chute = []
        for j in range(1, n - i + 2):
            m = i + j - 1
            chute.append(sum(segments.multiplicity(h, m) for h in range(1, i + 1)))
        chutes.append(tuple(chute))
    return TriangularArray(tuple(chutes))


def reverse_multisegment(segments: Multisegment) -> Multisegment:
    """Flip segments end-for-end: ``b'[i][j] = b[n-j+1][n-i+1]``; an involution."""
    n = segments.n
    rows = tuple(
        tuple(segments.multiplicity(n - j + 1, n - i + 1) for j in range(i, n + 1))
        for i in range(1, n + 1)
    )
    return Multisegment(rows)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _bounded_compositions(total, length, bounds):
    """Tuples of ``length`` nonnegative ints summing to ``total``, with entry
    j+1 bounded by ``bounds[j-1]`` for j >= 1 (entry 1 unbounded)."""
    out = []
    part = [0] * length

    def fill(pos, remaining):
        if pos == length - 1:
            if pos == 0 or remaining <= bounds[pos - 1]:
                part[pos] = remaining
                out.append(tuple(part))
            return
        cap = remaining if pos == 0 else min(remaining, bounds[pos - 1])
        for value in range(cap + 1):
            part[pos] = value
            fill(pos + 1, remaining - value)

    if length == 1:
        return [(total,)]
    fill(0, total)
    return out


def enumerate_arrays(w) -> list:
    """All triangular arrays with chute sums ``w``, in canonical order.

    Canonical order is descending lexicographic on the concatenated chutes,
    which lists the zero representation first and the dense orbit last.
    """
    w = validate_dim_vector(w)
    n = len(w)
    results = []
    stack = []

    def build(i, below):
        # chutes are generated bottom-up; "below" is chute i+1, which bounds
        # the entries of chute i from column 2 on
        if i == 0:
            results.append(TriangularArray(tuple(reversed(stack))))
            return
        for chute in _bounded_compositions(w[i - 1], n - i + 1, below):
            stack.append(chute)
            build(i - 1, chute)
            stack.pop()

    build(n, ())
    results.sort(key=lambda a: tuple(e for c in a.chutes for e in c), reverse=True)
    return results


# ---------------------------------------------------------------------------
# Partial orders
# ---------------------------------------------------------------------------

def leq_chutewise(left: TriangularArray, right: TriangularArray) -> bool:
    """Chutewise dominance: ``left <= right`` iff every partial sum along
    every chute of ``left`` is >= the matching partial sum of ``right``.

    Smaller means deeper in the closure: the zero representation (all mass
    in column 1) is the unique minimum.
    """
    if left.dim_vector != right.dim_vector:
        raise DimMismatch(
            f"dimension vectors differ: {left.dim_vector} vs {right.dim_vector}"
        )
    for chute_l, chute_r in zip(left.chutes, right.chutes):
        sum_l = sum_r = 0
        for a, b in zip(chute_l, chute_r):
            sum_l += a
            sum_r += b
            if sum_l < sum_r:
                return False
    return True


@dataclass(frozen=True)
class AdaptedRootOrder:
    """The fixed enumeration of the positive roots of type A_n used by the
    coweight form of the order: segments (i, j) listed with i descending and,
    within each i, j descending.  The chamber coweights are indexed by the
    same pairs in the same order."""

    n: int
    roots: tuple

    @property
    def coweights(self) -> tuple:
        return self.roots


def adapted_root_order(n: int) -> AdaptedRootOrder:
    if n < 1:
        raise ShapeError(f"size must be at least 1, got {n}")
    roots = tuple((i, j) for i in range(n, 0, -1) for j in range(n, i - 1, -1))
    return AdaptedRootOrder(n=n, roots=roots)


def coweight_pairing(l: int, k: int, i: int, j: int, n: int) -> int:
    """Pairing of the chamber coweight indexed by (l, k) with the segment
    (i, j), in closed form: 1 iff ``j >= k`` and ``k >= i >= l``.

    Valid whenever the segment (i, j) does not come after (l, k) in the
    adapted root order, which is the only way it is used here.
    """
    if not (1 <= l <= k <= n):
        raise IndexError(f"coweight pair ({l},{k}) outside 1 <= l <= k <= {n}")
    if not (1 <= i <= j <= n):
        raise IndexError(f"root pair ({i},{j}) outside 1 <= i <= j <= {n}")
    return 1 if (j >= k and k >= i >= l) else 0


def _segment_profile(segments: Multisegment) -> tuple:
    """For each (l, k) with l <= k: the count of segments [i, j] with
    l <= i <= k <= j.  Componentwise >= between profiles is the closure order."""
    n = segments.n
    profile = []
    for l in range(1, n + 1):
        for k in range(l, n + 1):
            profile.append(
                sum(
                    segments.multiplicity(i, j)
                    for i in range(l, k + 1)
                    for j in range(k, n + 1)
                )
            )
    return tuple(profile)


def _coweight_profile(segments: Multisegment, order: AdaptedRootOrder) -> tuple:
    """Prefix sums of coweight pairings against the adapted root order."""
    n = order.n
    values = []
    for t, (l, k) in enumerate(order.coweights, start=1):
        total = 0
        for s in range(t):
            i, j = order.roots[s]
            total += coweight_pairing(l, k, i, j, n) * segments.multiplicity(i, j)
        values.append(total)
    return tuple(values)


def leq_geometric(left: TriangularArray, right: TriangularArray,
                  method: str = "segments") -> bool:
    """The closure order computed from segment multiplicities.

    ``method="segments"`` compares, for every window (l, k), the number of
    segments [i, j] with l <= i <= k <= j.  ``method="coweights"`` compares
    prefix sums of chamber-coweight pairings along the adapted root order.
    Both agree with :func:`leq_chutewise`.
    """
    if left.dim_vector != right.dim_vector:
        raise DimMismatch(
            f"dimension vectors differ: {left.dim_vector} vs {right.dim_vector}"
        )
    seg_l = to_multisegment(left)
    seg_r = to_multisegment(right)
    if method == "segments":
        prof_l = _segment_profile(seg_l)
        prof_r = _segment_profile(seg_r)
    elif method == "coweights":
        order = adapted_root_order(left.n)
        prof_l = _coweight_profile(seg_l, order)
        prof_r = _coweight_profile(seg_r, order)
    else:
        raise ValueError(f"unknown method {method!r}")
    return all(a >= b for a, b in zip(prof_l, prof_r))


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------

def flag_dim(array: TriangularArray) -> int:
    """Dimension of the variety of kernel flags of this type:
    ``sum y[i][j] * y[i][k]`` over i and column pairs j < k."""
    n = array.n
    total = 0
    for i in range(1, n):
        length = n - i + 1
        for j in range(1, length):
            for k in range(j + 1, length + 1):
                total += array.entry(i, j) * array.entry(i, k)
    return total


def fiber_dim(array: TriangularArray) -> int:
    """Dimension of the space of representations preserving a fixed kernel
    flag of this type: ``sum y[i+1][j] * y[i][k]`` over i and j < k."""
    n = array.n
    total = 0
    for i in range(1, n):
        length = n - i + 1
        for j in range(1, length):
            for k in range(j + 1, length + 1):
                total += array.entry(i + 1, j) * array.entry(i, k)
    return total


def orbit_dim(array: TriangularArray) -> int:
    """Dimension of the orbit labelled by the array: flag part + fiber part."""
    return flag_dim(array) + fiber_dim(array)


# ---------------------------------------------------------------------------
# Miscellaneous structure
# ---------------------------------------------------------------------------

def direct_sum(left: TriangularArray, right: TriangularArray) -> TriangularArray:
    """Entrywise sum; labels the direct sum of the two representations."""
    if left.n != right.n:
        raise SizeMismatch(f"sizes differ: {left.n} vs {right.n}")
    return TriangularArray(
        tuple(
            tuple(a + b for a, b in zip(chute_l, chute_r))
            for chute_l, chute_r in zip(left.chutes, right.chutes)
        )
    )


def is_injective(array: TriangularArray) -> bool:
    """True iff the labelled representation is injective: constant ladders."""
    n = array.n
    return all(
        array.entry(i, j) == array.entry(i - 1, j + 1)
        for i in range(2, n + 1)
        for j in range(1, n - i + 2)
    )


def is_projective(array: TriangularArray) -> bool:
    """True iff the labelled representation is projective: nonzero entries
    only on the last ladder (i + j = n + 1)."""
    n = array.n
    return all(
        array.entry(i, j) == 0
        for i in range(1, n + 1)
        for j in range(1, n - i + 2)
        if i + j < n + 1
    )


# ---------------------------------------------------------------------------
# Orbit poset
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitPoset:
    """The set of arrays for one dimension vector with the closure order.

    ``elements`` is in canonical enumeration order; ``leq`` is the full
    relation as a boolean matrix over element indices; ``covers`` is its
    transitive reduction (the Hasse diagram), each pair directed from the
    smaller to the larger element; ``dims`` are the orbit dimensions.
    """

    dim_vector: tuple
    elements: tuple
    leq: tuple
    covers: tuple
    dims: tuple
    _index: dict = field(repr=False, compare=False, hash=False, default=None)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, array: TriangularArray) -> int:
        if self._index is None:
            object.__setattr__(
                self, "_index", {a: i for i, a in enumerate(self.elements)}
            )
        try:
            return self._index[array]
        except KeyError:
            raise ValueError(f"{array} is not in this poset") from None

    def less_equal(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def minimum(self) -> int:
        return self._unique_extreme(smaller=True)

    def maximum(self) -> int:
        return self._unique_extreme(smaller=False)

    def _unique_extreme(self, smaller: bool) -> int:
        m = len(self.elements)
        found = [
            a
            for a in range(m)
            if all(
                (self.leq[a][b] if smaller else self.leq[b][a]) for b in range(m)
            )
        ]
        if len(found) != 1:
            raise InternalError(
                f"expected a unique {'minimum' if smaller else 'maximum'}, "
                f"found {len(found)}"
            )
        return found[0]

    def to_json(self) -> dict:
        return {
            "dim_vector": list(self.dim_vector),
            "elements": [a.to_json() for a in self.elements],
            "covers": [list(pair) for pair in self.covers],
            "dims": list(self.dims),
        }

    def to_dot(self) -> str:
        """Hasse diagram in DOT form; node labels carry text + dimension and
        edges point from the smaller orbit to the larger."""
        lines = ["digraph orbit_closure {", "  rankdir=BT;"]
        for idx, array in enumerate(self.elements):
            lines.append(f'  n{idx} [label="{array.text()} ({self.dims[idx]})"];')
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines)


def hasse(w) -> OrbitPoset:
    """Build the orbit poset for ``w``: full order, covers, and dimensions."""
    elements = tuple(enumerate_arrays(w))
    m = len(elements)
    leq = tuple(
        tuple(leq_chutewise(elements[a], elements[b]) for b in range(m))
        for a in range(m)
    )
    covers = []
    for a in range(m):
        for b in range(m):
            if a == b or not leq[a][b]:
                continue
            if any(c != a and c != b and leq[a][c] and leq[c][b] for c in range(m)):
                continue
            covers.append((a, b))
    dims = tuple(orbit_dim(a) for a in elements)
    return OrbitPoset(
        dim_vector=validate_dim_vector(w),
        elements=elements,
        leq=leq,
        covers=tuple(sorted(covers)),
        dims=dims,
    )


def poset_to_json_text(poset: OrbitPoset) -> str:
    return json.dumps(poset.to_json())
