"""Closed-form connectivity-factor bounds for m-dimensional grids in n-space.

Every quantity here is exact: results are ``fractions.Fraction`` built
from integer combinatorics, so bound comparisons never suffer rounding.

The three bounds for an m-dimensional grid structure observed in
n-dimensional ambient space:

  lower   sparsest connected m-grid (the minimal block: a center cell
          plus its full m-dimensional Moore neighborhood)
  middle  an unbounded fully occupied m-grid, rescaled into n-space
  upper   the densest m-grid reachable by thickening: a parity-labeled
          lattice with the lowest label classes removed

A cell of the parity lattice has label t = number of odd coordinates.
Removing labels below n - m leaves the densest set whose connectivity
still reflects an m-dimensional structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DomainError

__all__ = [
    "alpha",
    "a_count",
    "lower_cf",
    "middle_cf",
    "cross_alpha",
    "chi",
    "type_frequency",
    "upper_cf",
    "BoundsTable",
    "lmu_table",
    "classify_lmu",
    "minimal_block",
    "LabeledGrid",
    "maximal_set_torus",
    "torus_cf",
]


def _check_mt(m: int, t: int) -> None:
    if m < 0 or t < 0 or t > m:
        raise DomainError(f"need 0 <= t <= m, got t={t}, m={m}")


def alpha(m: int, t: int) -> int:
    """Number of type-t cells in the minimal m-block: 2^t * C(m, t).

    Type t is the count of coordinates in which a cell differs from the
    block center.  Summing over t gives 3^m, the whole block.
    """
    _check_mt(m, t)
    return 2**t * comb(m, t)


def a_count(m: int, t: int) -> int:
    """Present-neighbor count of a type-t cell inside the minimal m-block.

    Equals 2^t * 3^(m-t) - 1: each offset axis locks one coordinate to
    2 choices while free axes keep all 3, minus the cell itself.
    Satisfies the recurrence a_t = a_{t-1} - (a_{t-1} + 1) / 3.
    """
    _check_mt(m, t)
    return 2**t * 3 ** (m - t) - 1


def _check_mn(m: int, n: int) -> None:
    if m < 0 or n < 0 or m > n:
        raise DomainError(f"need 0 <= m <= n, got m={m}, n={n}")


def lower_cf(m: int, n: int) -> Fraction:
    """Connectivity factor of the minimal m-block embedded in n-space.

    Averaging a_count over the alpha-weighted cell types collapses to
    (7^m - 3^m) / ((3^n - 1) * 3^m).  The degenerate single cell in
    0-space has factor 1 by convention.
    """
    _check_mn(m, n)
    if n == 0:
        return Fraction(1)
    return Fraction(7**m - 3**m, (3**n - 1) * 3**m)


def middle_cf(m: int, n: int) -> Fraction:
    """Connectivity factor of an unbounded full m-grid seen in n-space."""
    _check_mn(m, n)
    if n == 0:
        return Fraction(1)
    return Fraction(3**m - 1, 3**n - 1)


def _comb0(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def cross_alpha(x: int, y: int, n: int) -> int:
    """Number of type-y cells adjacent to a type-x cell of the parity lattice.

    Splits the offset by how many of the x odd coordinates it touches:

        sum_t 2^t C(x, t) * 2^(y-x+t) C(n-x, y-x+t)  -  [x == y]

    Out-of-range binomials contribute nothing; the Kronecker delta
    removes the cell itself.  Rows sum to 3^n - 1.
    """
    if not (0 <= x <= n and 0 <= y <= n):
        raise DomainError(f"need 0 <= x, y <= n, got x={x}, y={y}, n={n}")
    total = 0
    for t in range(x + 1):
        j = y - (x - t)
        if j < 0 or j > n - x:
            continue
        total += 2**t * comb(x, t) * 2**j * comb(n - x, j)
    return total - (1 if x == y else 0)


def chi(m: int, t: int, n: int) -> Fraction:
    """Neighborhood contribution of a type-t cell after labels < n-m are removed.

    Fraction of the full n-space Moore neighborhood still present around
    a type-t cell of the thinned parity lattice.
    """
    _check_mn(m, n)
    if n == 0:
        raise DomainError("contribution is undefined in 0-space")
    if not (n - m <= t <= n):
        raise DomainError(f"need n-m <= t <= n, got t={t}, m={m}, n={n}")
    kept = sum(cross_alpha(t, i, n) for i in range(n - m, n + 1))
    return Fraction(kept, 3**n - 1)


def type_frequency(m: int, t: int, n: int) -> Fraction:
    """Share of type-t cells among the surviving labels n-m..n.

    Per lattice period the label populations are proportional to the
    binomial coefficients C(n, t).
    """
    _check_mn(m, n)
    if not (n - m <= t <= n):
        raise DomainError(f"need n-m <= t <= n, got t={t}, m={m}, n={n}")
    return Fraction(comb(n, t), sum(comb(n, i) for i in range(n - m, n + 1)))


def upper_cf(m: int, n: int) -> Fraction:
    """Connectivity factor of the densest thinned parity lattice.

    Frequency-weighted average of per-type contributions over the
    surviving labels.
    """
    _check_mn(m, n)
    if n == 0:
        return Fraction(1)
    return sum(
        type_frequency(m, t, n) * chi(m, t, n) for t in range(n - m, n + 1)
    )


@dataclass
class BoundsTable:
    """Exact (lower, middle, upper) rows for every m = 0..n."""

    n: int
    rows: list[tuple[int, Fraction, Fraction, Fraction]]

    def row(self, m: int) -> tuple[Fraction, Fraction, Fraction]:
        return self.rows[m][1:]


def lmu_table(n: int) -> BoundsTable:
    if n < 0:
        raise DomainError(f"ambient dimension must be non-negative, got {n}")
    rows = [(m, lower_cf(m, n), middle_cf(m, n), upper_cf(m, n)) for m in range(n + 1)]
    return BoundsTable(n, rows)


def classify_lmu(cf: float, n: int) -> tuple[int, list[int]]:
    """Classify a measured connectivity factor against the bound table.

    Candidates are every m whose [lower, upper] interval contains cf
    (exact rational comparison).  The estimate is the candidate whose
    middle value lies nearest to cf, ties to the smaller m.  If no
    interval contains cf, the m whose interval is closest wins.
    """
    if not (0.0 <= cf <= 1.0):
        raise DomainError(f"connectivity factor must be in [0, 1], got {cf}")
    table = lmu_table(n)
    value = Fraction(cf)
    candidates = [m for m, lo, _, up in table.rows if lo <= value <= up]
    if candidates:
        best = min(candidates, key=lambda m: (abs(value - table.rows[m][2]), m))
        return best, candidates
    def gap(m: int) -> Fraction:
        lo, _, up = table.row(m)
        if value < lo:
            return lo - value
        return value - up
    best = min(range(n + 1), key=lambda m: (gap(m), m))
    return best, candidates


def minimal_block(m: int, n: int | None = None) -> np.ndarray:
    """All 3^m cells of the minimal m-block, optionally embedded in n-space.

    The block is the integer cube {-1, 0, 1}^m; embedding pads trailing
    coordinates with zeros.  This is the structure whose connectivity
    factor the lower bound reproduces exactly.
    """
    if m < 0:
        raise DomainError(f"dimension must be non-negative, got {m}")
    if n is None:
        n = m
    _check_mn(m, n)
    cells = np.array(list(itertools.product((-1, 0, 1), repeat=m)), dtype=np.int64)
    cells = cells.reshape(3**m, m)
    if n > m:
        pad = np.zeros((cells.shape[0], n - m), dtype=np.int64)
        cells = np.hstack([cells, pad])
    return cells


@dataclass
class LabeledGrid:
    """Finite torus sample of the parity-labeled lattice (test oracle).

    Cells are all integer coordinates in [0, side)^n with wraparound
    adjacency; label = number of odd coordinates.  The side is even, so
    the parity pattern tiles seamlessly, and covers three two-cell
    parity periods per axis by default.  Per period the label counts
    are proportional to C(n, t).
    """

    n: int
    side: int
    cells: np.ndarray
    labels: np.ndarray


def maximal_set_torus(n: int, m: int, periods: int = 3) -> LabeledGrid:
    """Torus sample of the parity lattice with labels below n-m removed.

    m = n keeps the full torus; m = 0 keeps only the all-odd cells,
    which are mutually non-adjacent.  Kept at test scale (n <= 4).
    """
    if not (0 <= m <= n <= 4):
        raise DomainError(f"torus oracle needs 0 <= m <= n <= 4, got m={m}, n={n}")
    if n == 0:
        return LabeledGrid(0, 2 * periods, np.zeros((1, 0), np.int64), np.zeros(1, np.int64))
    side = 2 * periods
    cells = np.array(list(itertools.product(range(side), repeat=n)), dtype=np.int64)
    labels = (cells % 2).sum(axis=1)
    keep = labels >= n - m
    return LabeledGrid(n, side, cells[keep], labels[keep])


def torus_cf(grid: LabeledGrid) -> Fraction:
    """Exact connectivity factor of a labeled torus with wraparound adjacency."""
    n, side = grid.n, grid.side
    if n == 0:
        return Fraction(1)
    occupied = {tuple(row) for row in grid.cells.tolist()}
    total = 0
    offsets = [o for o in itertools.product((-1, 0, 1), repeat=n) if any(o)]
    for cell in occupied:
        for off in offsets:
            probe = tuple((c + o) % side for c, o in zip(cell, off))
            if probe in occupied:
                total += 1
    return Fraction(total, len(occupied) * (3**n - 1))
