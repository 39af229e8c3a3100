"""Exact-arithmetic realization of orbits and the transform's geometric oracle.

A point of the representation space for ``w`` is a tuple of rational
matrices ``x_i: Q^{w_i} -> Q^{w_{i+1}}``.  The label of its orbit is
recovered from kernel dimensions of composite maps, computed with exact
fraction-free rank elimination (no floating point anywhere).

The oracle: for ``x`` of label Y, the solution space of the commuting
equations ``x_i y_{n-i} + y_{n-i-1} x_{i+1} = 0`` is a linear subspace of
the representation space for the reversed vector; the label of the orbit
meeting it densely is the Fourier transform of Y.  Random integer points
of the space, drawn from a fixed deterministic generator, identify that
dense orbit as the maximum of the sampled labels in the closure order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import (
    TriangularArray,
    leq_chutewise,
    reverse_dim_vector,
    validate_dim_vector,
)
from .errors import InternalError, LadderViolation, NegativeEntry, ShapeError

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny fixed PRNG (splitmix64); identical output on every platform."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound

    def symmetric(self, radius: int) -> int:
        """Uniform-ish integer in [-radius, radius]."""
        return self.below(2 * radius + 1) - radius


def trial_stream(seed: int, trial: int) -> SplitMix64:
    """Independent per-trial generator stream derived from (seed, trial)."""
    return SplitMix64((seed ^ ((trial + 1) * 0x9E3779B97F4A7C15)) & _MASK64)


# ---------------------------------------------------------------------------
# Exact matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals (arbitrary-precision Fractions)."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(
            tuple(Fraction(e) for e in row) for row in self.entries
        )
        object.__setattr__(self, "entries", entries)
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative matrix shape {self.rows}x{self.cols}")
        if len(entries) != self.rows:
            raise ShapeError(f"expected {self.rows} rows, got {len(entries)}")
        for row in entries:
            if len(row) != self.cols:
                raise ShapeError(
                    f"expected {self.cols} columns, got {len(row)}"
                )

    @classmethod
    def from_rows(cls, data, cols: int | None = None) -> "RationalMatrix":
        data = [list(row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(rows=len(data), cols=cols, entries=tuple(map(tuple, data)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    def entry_at(self, r: int, c: int) -> Fraction:
        return self.entries[r][c]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        entries = tuple(
            tuple(
                sum((self.entries[r][t] * other.entries[t][c] for t in range(self.cols)),
                    Fraction(0))
                for c in range(other.cols)
            )
            for r in range(self.rows)
        )
        return RationalMatrix(self.rows, other.cols, entries)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix shapes differ")
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(row_a, row_b))
                for row_a, row_b in zip(self.entries, other.entries)
            ),
        )

    def scale(self, factor) -> "RationalMatrix":
        factor = Fraction(factor)
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(tuple(factor * e for e in row) for row in self.entries),
        )

    def to_json(self) -> list:
        return [[str(e) for e in row] for row in self.entries]

    @classmethod
    def from_json(cls, data, cols: int | None = None) -> "RationalMatrix":
        return cls.from_rows(
            [[Fraction(token) for token in row] for row in data], cols=cols
        )


def _integer_rows(matrix: RationalMatrix) -> list:
    """Clear denominators row by row (rank- and kernel-preserving)."""
    out = []
    for row in matrix.entries:
        lcm = 1
        for e in row:
            d = e.denominator
            lcm = lcm * d // gcd(lcm, d)
        out.append([int(e * lcm) for e in row])
    return out


def _bareiss_echelon(rows: list, cols: int):
    """Fraction-free (integer-preserving) elimination to row echelon form.

    Mutates ``rows`` in place; returns the list of pivot column indices.
    Every interior division is exact; a nonzero remainder would mean a bug.
    """
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(r + 1, len(rows)):
            head = rows[i][c]
            for j in range(c + 1, cols):
                q, rem = divmod(rows[r][c] * rows[i][j] - head * rows[r][j], prev)
                if rem:
                    raise InternalError("inexact division in fraction-free elimination")
                rows[i][j] = q
            rows[i][c] = 0
        prev = rows[r][c]
        pivots.append(c)
        r += 1
    return pivots


def exact_rank(matrix: RationalMatrix) -> int:
    """Rank over the rationals via fraction-free integer elimination."""
    rows = _integer_rows(matrix)
    return len(_bareiss_echelon(rows, matrix.cols))


def kernel_basis(matrix: RationalMatrix) -> tuple:
    """A basis of the right kernel, as primitive integer vectors (Fractions).

    One basis vector per free column: set that free variable to 1, the other
    free variables to 0, and back-substitute through the echelon form.
    """
    cols = matrix.cols
    rows = _integer_rows(matrix)
    pivots = _bareiss_echelon(rows, cols)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((Fraction(rows[r][j]) * vec[j] for j in range(c + 1, cols)),
                    Fraction(0))
            vec[c] = -s / rows[r][c]
        lcm = 1
        for e in vec:
            d = e.denominator
            lcm = lcm * d // gcd(lcm, d)
        ints = [int(e * lcm) for e in vec]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        basis.append(tuple(Fraction(v) for v in ints))
    return tuple(basis)


def invert(matrix: RationalMatrix) -> RationalMatrix:
    """Exact inverse of a square matrix (Gauss-Jordan over Fractions)."""
    if matrix.rows != matrix.cols:
        raise ShapeError(f"cannot invert {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    work = [list(row) for row in matrix.entries]
    out = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        work[c], work[pivot_row] = work[pivot_row], work[c]
        out[c], out[pivot_row] = out[pivot_row], out[c]
        pivot = work[c][c]
        work[c] = [e / pivot for e in work[c]]
        out[c] = [e / pivot for e in out[c]]
        for i in range(n):
            if i == c or work[i][c] == 0:
                continue
            factor = work[i][c]
            work[i] = [a - factor * b for a, b in zip(work[i], work[c])]
            out[i] = [a - factor * b for a, b in zip(out[i], out[c])]
    return RationalMatrix.from_rows(out, cols=n)


# ---------------------------------------------------------------------------
# Quiver representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuiverRep:
    """A point of the representation space: matrices ``maps[i]`` of shape
    ``w[i+1] x w[i]`` for the arrows of the linear quiver."""

    w: tuple
    maps: tuple

    def __post_init__(self):
        w = validate_dim_vector(self.w)
        object.__setattr__(self, "w", w)
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        if len(maps) != len(w) - 1:
            raise ShapeError(f"expected {len(w) - 1} maps, got {len(maps)}")
        for idx, m in enumerate(maps):
            if (m.rows, m.cols) != (w[idx + 1], w[idx]):
                raise ShapeError(
                    f"map {idx + 1} has shape {m.rows}x{m.cols}, "
                    f"expected {w[idx + 1]}x{w[idx]}"
                )

    @classmethod
    def zeros(cls, w) -> "QuiverRep":
        w = validate_dim_vector(w)
        return cls(
            w,
            tuple(
                RationalMatrix.zeros(w[i + 1], w[i]) for i in range(len(w) - 1)
            ),
        )

    def to_json(self) -> dict:
        return {"dim_vector": list(self.w), "maps": [m.to_json() for m in self.maps]}


def jordan_rep(array: TriangularArray) -> QuiverRep:
    """The normal-form representative of the orbit labelled by the array.

    At vertex i the basis vectors are indexed by (column j, copy k) with
    1 <= k <= y[i][j], ordered by (j, k); the arrow at i sends (j, k) to
    (j-1, k) at vertex i+1, and column-1 vectors to zero.  All entries are
    0 or 1.
    """
    w = array.dim_vector
    n = array.n

    def offsets(i):
        # starting position of column j's block in the vertex-i basis
        off = [0]
        for j in range(1, n - i + 2):
            off.append(off[-1] + array.entry(i, j))
        return off

    maps = []
    for i in range(1, n):
        off_src = offsets(i)
        off_dst = offsets(i + 1)
        entries = [[0] * w[i - 1] for _ in range(w[i])]
        for j in range(2, n - i + 2):
            for k in range(array.entry(i, j)):
                entries[off_dst[j - 2] + k][off_src[j - 1] + k] = 1
        maps.append(RationalMatrix.from_rows(entries, cols=w[i - 1]))
    return QuiverRep(w, tuple(maps))


def orbit_label(rep: QuiverRep) -> TriangularArray:
    """Recover the array labelling the orbit of a representation.

    The partial sums of chute i are the kernel dimensions of the composite
    maps out of vertex i; differencing them gives the chute, and the chute
    sum constraint gives the final entry.
    """
    w = rep.w
    n = len(w)
    chutes = []
    for i in range(1, n + 1):
        chute = []
        prev = 0
        product = None
        for j in range(1, n - i + 1):
            step = rep.maps[i + j - 2]
            product = step if product is None else step @ product
            s = w[i - 1] - exact_rank(product)
            chute.append(s - prev)
            prev = s
        chute.append(w[i - 1] - prev)
        chutes.append(tuple(chute))
    try:
        return TriangularArray(tuple(chutes))
    except (NegativeEntry, LadderViolation) as exc:
        raise InternalError(f"kernel dimensions not consistent: {exc}") from exc


# ---------------------------------------------------------------------------
# Commuting representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CommutingBasis:
    """A basis of the space of representations (for the reversed dimension
    vector) commuting with a fixed ``x``."""

    x: QuiverRep
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _map_shapes(w_star):
    return [(w_star[m + 1], w_star[m]) for m in range(len(w_star) - 1)]


def commuting_basis(x: QuiverRep) -> CommutingBasis:
    """Solve the commuting equations for ``x`` exactly.

    With backward maps ``y_m`` running along the reversed quiver, the
    equations are ``y_{n-1} x_1 = 0``, ``x_i y_{n-i} + y_{n-i-1} x_{i+1} = 0``
    for 0 < i < n-1, and ``x_{n-1} y_1 = 0``.  They assemble into one
    homogeneous linear system over the entries of the ``y_m``; an exact
    kernel basis is returned as representations.
    """
    w = x.w
    n = len(w)
    w_star = reverse_dim_vector(w)
    shapes = _map_shapes(w_star)
    offsets = [0]
    for rows, cols in shapes:
        offsets.append(offsets[-1] + rows * cols)
    unknowns = offsets[-1]

    def var(m, r, c):
        return offsets[m] + r * shapes[m][1] + c

    eq_rows = []

    def add_left_product(block_rows, block_cols, x_mat, y_index):
        # x_mat @ Y[y_index] = contribution: coeff of Y[r=t][c] is x_mat[r_out][t]
        for r_out in range(block_rows):
            for c in range(block_cols):
                row = [Fraction(0)] * unknowns
                for t in range(x_mat.cols):
                    coeff = x_mat.entries[r_out][t]
                    if coeff:
                        row[var(y_index, t, c)] += coeff
                yield r_out, c, row

    if n >= 2:
        # boundary equation at the first vertex: y_{n-1} x_1 = 0
        y_idx = n - 2
        x1 = x.maps[0]
        for r_out in range(w[0]):
            for c in range(w[0]):
                row = [Fraction(0)] * unknowns
                for t in range(x1.rows):
                    coeff = x1.entries[t][c]
                    if coeff:
                        row[var(y_idx, r_out, t)] += coeff
                eq_rows.append(row)
        # interior equations: x_i y_{n-i} + y_{n-i-1} x_{i+1} = 0
        for i in range(1, n - 1):
            x_left = x.maps[i - 1]
            x_right = x.maps[i]
            y_left = n - i - 1  # index of y_{n-i}
            y_right = n - i - 2  # index of y_{n-i-1}
            size = w[i]
            for r_out in range(size):
                for c in range(size):
                    row = [Fraction(0)] * unknowns
                    for t in range(x_left.cols):
                        coeff = x_left.entries[r_out][t]
                        if coeff:
                            row[var(y_left, t, c)] += coeff
                    for t in range(x_right.rows):
                        coeff = x_right.entries[t][c]
                        if coeff:
                            row[var(y_right, r_out, t)] += coeff
                    eq_rows.append(row)
        # boundary equation at the last vertex: x_{n-1} y_1 = 0
        x_last = x.maps[n - 2]
        for r_out in range(w[n - 1]):
            for c in range(w[n - 1]):
                row = [Fraction(0)] * unknowns
                for t in range(x_last.cols):
                    coeff = x_last.entries[r_out][t]
                    if coeff:
                        row[var(0, t, c)] += coeff
                eq_rows.append(row)

    system = RationalMatrix.from_rows(eq_rows, cols=unknowns)
    basis = []
    for vec in kernel_basis(system):
        maps = []
        for m, (rows, cols) in enumerate(shapes):
            entries = tuple(
                tuple(vec[var(m, r, c)] for c in range(cols)) for r in range(rows)
            )
            maps.append(RationalMatrix(rows, cols, entries))
        basis.append(QuiverRep(w_star, tuple(maps)))
    return CommutingBasis(x=x, basis=tuple(basis))


def change_basis(x: QuiverRep, gs) -> QuiverRep:
    """Act by a tuple of invertible matrices: ``x_i -> g_{i+1} x_i g_i^{-1}``."""
    gs = tuple(gs)
    if len(gs) != len(x.w):
        raise ShapeError(f"expected {len(x.w)} matrices, got {len(gs)}")
    maps = tuple(
        gs[i + 1] @ x.maps[i] @ invert(gs[i]) for i in range(len(x.maps))
    )
    return QuiverRep(x.w, maps)


# ---------------------------------------------------------------------------
# The geometric oracle
# ---------------------------------------------------------------------------

def generic_orbit(x: QuiverRep, seed: int = 0, trials: int = 3,
                  coeff_range: int = 7) -> TriangularArray:
    """Label of the orbit meeting the commuting space of ``x`` densely.

    Each trial draws integer coefficients in [-coeff_range, coeff_range]
    from a deterministic per-trial stream, forms the corresponding point of
    the commuting space, and computes its orbit label.  Every sample lies in
    the closure of the dense orbit, so the sampled labels are bounded above
    by its label; the maximum over trials is returned (and is checked to
    dominate every sample).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if coeff_range < 1:
        raise ValueError(f"coeff_range must be >= 1, got {coeff_range}")
    space = commuting_basis(x)
    w_star = reverse_dim_vector(x.w)
    labels = []
    for trial in range(trials):
        rng = trial_stream(seed, trial)
        point = QuiverRep.zeros(w_star)
        for vec in space.basis:
            coeff = rng.symmetric(coeff_range)
            if coeff:
                point = QuiverRep(
                    w_star,
                    tuple(
                        a + b.scale(coeff) for a, b in zip(point.maps, vec.maps)
                    ),
                )
        labels.append(orbit_label(point))
    for candidate in labels:
        if all(leq_chutewise(other, candidate) for other in labels):
            return candidate
    raise InternalError(
        "no sampled label dominated all trials; increase trials or range"
    )


def fourier_oracle(array: TriangularArray, seed: int = 0, trials: int = 3,
                   coeff_range: int = 7) -> TriangularArray:
    """Geometric computation of the transform of an orbit label: the generic
    orbit of the commuting space of its normal-form representative."""
    return generic_orbit(jordan_rep(array), seed=seed, trials=trials,
                         coeff_range=coeff_range)
