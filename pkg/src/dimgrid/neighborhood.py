"""Moore-neighborhood counting over occupied grid cells.

Two cells are neighbors when their integer coordinates differ by at
most 1 on every axis and they are not the same cell, i.e. the offset
vector lies in {-1, 0, 1}^n \\ {0}.  The test always runs on integer
cell coordinates; floating-point center distances are never compared,
so results are exact.

The connectivity factor of an occupied set S with N cells is

    CF = (sum of present-neighbor counts) / (N * (3^n - 1))

which is 1 exactly when every cell has a full Moore neighborhood.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gridding import GriddedCloud

__all__ = [
    "NeighborCounts",
    "ConnectivityResult",
    "count_neighbors",
    "connectivity_factor",
    "space_convert_cf",
]


@dataclass
class NeighborCounts:
    """Present-neighbor count per representative, plus grid metadata."""

    counts: np.ndarray
    n: int
    spacing: float


@dataclass
class ConnectivityResult:
    cf: float
    total_interactions: int
    n_representatives: int
    n: int


def _hash_counts(cells: np.ndarray) -> np.ndarray:
    n = cells.shape[1]
    occupied = {row.tobytes() for row in cells}
    counts = np.zeros(cells.shape[0], dtype=np.int64)
    for offset in itertools.product((-1, 0, 1), repeat=n):
        if not any(offset):
            continue
        shifted = cells + np.asarray(offset, dtype=np.int64)
        counts += np.fromiter(
            (row.tobytes() in occupied for row in shifted),
            dtype=bool,
            count=cells.shape[0],
        )
    return counts


def _pairwise_counts(cells: np.ndarray) -> np.ndarray:
    m, n = cells.shape
    counts = np.empty(m, dtype=np.int64)
    chunk = max(1, 4_000_000 // max(m, 1))
    for start in range(0, m, chunk):
        block = cells[start : start + chunk]
        near = np.ones((block.shape[0], m), dtype=bool)
        for j in range(n):
            diff = np.abs(block[:, j, None] - cells[None, :, j])
            near &= diff <= 1
        # the cell itself always matches; remove it
        counts[start : start + chunk] = near.sum(axis=1) - 1
    return counts


def count_neighbors(grid: GriddedCloud, engine: str = "auto") -> NeighborCounts:
    """Count present Moore neighbors of every representative.

    engine:
        "hash"     build a lookup of occupied cells and probe all
                   3^n - 1 offsets per cell (cost ~ N * 3^n)
        "pairwise" compare all cell pairs axis by axis (cost ~ N^2 * n)
        "auto"     pick whichever bound is smaller

    Both engines return identical counts; only the cost differs.
    """
    cells = np.ascontiguousarray(grid.cells, dtype=np.int64)
    m, n = cells.shape
    if n == 0 or m <= 1:
        return NeighborCounts(np.zeros(m, dtype=np.int64), n, grid.spacing)
    if engine == "auto":
        engine = "hash" if 3**n < m * n else "pairwise"
    if engine == "hash":
        counts = _hash_counts(cells)
    elif engine == "pairwise":
        counts = _pairwise_counts(cells)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return NeighborCounts(counts, n, grid.spacing)


def connectivity_factor(counts: NeighborCounts) -> ConnectivityResult:
    """Average fraction of the Moore neighborhood that is occupied.

    A 0-dimensional grid has no neighborhood to fill; by convention its
    connectivity factor is 1.
    """
    m = counts.counts.shape[0]
    total = int(counts.counts.sum())
    if counts.n == 0:
        return ConnectivityResult(1.0, total, m, counts.n)
    cf = total / (m * (3**counts.n - 1))
    return ConnectivityResult(cf, total, m, counts.n)


def space_convert_cf(cf: float, m: int, n: int) -> float:
    """Convert a CF measured in its native m-space to an n-space value.

    A structure living in m dimensions but embedded in n >= m ambient
    dimensions exposes the same neighbor interactions against a larger
    neighborhood, so the factor rescales by (3^m - 1) / (3^n - 1).
    """
    if m < 0 or n < 0 or m > n:
        raise DomainError(f"need 0 <= m <= n, got m={m}, n={n}")
    if n == 0:
        return 1.0
    return cf * (3**m - 1) / (3**n - 1)
