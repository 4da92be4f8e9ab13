"""Grid quantization of point clouds with information-retention control.

A cloud is normalized into the unit box by a single global scale factor,
then snapped onto a cubic grid of spacing ``s``.  Each occupied cell is
replaced by its center, so the grid acts as a lossy compressor.  The
information percentage (IP) measures how much of the cloud survives:

    IP(s) = 100 * (number of occupied cells) / (number of points)

``find_spacing`` searches for a spacing whose IP lands inside a target
interval.  All downstream connectivity analysis operates on the set of
occupied cell centers (the representatives).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidRange, ZeroRange

__all__ = [
    "NormalizationRecord",
    "GriddedCloud",
    "as_cloud",
    "normalize_global",
    "cell_indices",
    "snap_to_grid",
    "information_percentage",
    "find_spacing",
    "read_points_csv",
    "write_points_csv",
]


def as_cloud(points) -> np.ndarray:
    """Validate and coerce input into an (N, d) float64 array.

    Accepts any array-like of shape (N, d) with N >= 1.  Rejects 1-D
    input outright rather than guessing whether it is one point or a
    column of scalars.
    """
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("point cloud must be a 2-D array of shape (N, d)")
    if X.shape[0] < 1:
        raise ValueError("point cloud must contain at least one point")
    if X.size and not np.all(np.isfinite(X)):
        raise ValueError("point cloud coordinates must be finite")
    return X


@dataclass(frozen=True)
class NormalizationRecord:
    """Feature minima and the single global scale used to normalize."""

    feature_min: np.ndarray
    scale: float

    def restore(self, points: np.ndarray) -> np.ndarray:
        return points * self.scale + self.feature_min


def normalize_global(points) -> tuple[np.ndarray, NormalizationRecord]:
    """Shift each feature to zero minimum and divide by the widest range.

    A single divisor (the maximum feature range) is shared by every
    axis, so ratios between feature ranges are preserved and the widest
    feature spans exactly [0, 1].

    Raises ZeroRange when every feature is constant.
    """
    X = as_cloud(points)
    if X.shape[1] == 0:
        raise ZeroRange("cloud has no features to normalize")
    mins = X.min(axis=0)
    ranges = X.max(axis=0) - mins
    scale = float(ranges.max())
    if scale <= 0.0:
        raise ZeroRange("all features are constant; range is zero")
    return (X - mins) / scale, NormalizationRecord(mins, scale)


def cell_indices(points: np.ndarray, spacing: float) -> np.ndarray:
    """Integer grid cell of each point (mathematical floor, so negatives work)."""
    if not spacing > 0.0:
        raise InvalidRange("grid spacing must be positive")
    return np.floor(points / spacing).astype(np.int64)


@dataclass
class GriddedCloud:
    """Result of snapping a cloud onto a cubic grid.

    representatives : unique occupied cell centers, shape (M, d)
    cells           : integer cell coordinates of the representatives
    multiplicity    : how many original points landed in each cell
    spacing         : the grid spacing used
    achieved_ip     : 100 * M / N
    """

    representatives: np.ndarray
    cells: np.ndarray
    multiplicity: np.ndarray
    spacing: float
    achieved_ip: float

    @property
    def n(self) -> int:
        return self.representatives.shape[1]

    @property
    def n_points(self) -> int:
        return int(self.multiplicity.sum())

    @property
    def n_representatives(self) -> int:
        return self.representatives.shape[0]


def snap_to_grid(points, spacing: float) -> GriddedCloud:
    """Quantize a cloud to cell centers at the given spacing.

    Each point maps to the center of its cell, floor(x/s)*s + s/2 per
    coordinate.  Duplicate cells collapse into one representative with
    a multiplicity count.
    """
    X = as_cloud(points)
    cells = cell_indices(X, spacing)
    uniq, counts = np.unique(cells, axis=0, return_counts=True)
    reps = uniq * spacing + spacing / 2.0
    ip = 100.0 * uniq.shape[0] / X.shape[0]
    return GriddedCloud(reps, uniq, counts, float(spacing), ip)


def _occupied_cells(X: np.ndarray, spacing: float) -> int:
    return np.unique(cell_indices(X, spacing), axis=0).shape[0]


def information_percentage(points, spacing: float) -> float:
    """Percentage of points that survive quantization at this spacing."""
    X = as_cloud(points)
    return 100.0 * _occupied_cells(X, spacing) / X.shape[0]


def find_spacing(
    points,
    ip_min: float,
    ip_max: float,
    *,
    coarse_divisor: float = 5.0,
    max_coarse_steps: int = 40,
    max_fine_steps: int = 60,
) -> tuple[float, float]:
    """Search for a spacing whose IP falls in [ip_min, ip_max].

    Two phases over the domain (0, 1] (the cloud is assumed normalized,
    so spacing 1 is the coarsest useful grid):

    1. coarse: start at s = 1 and divide by ``coarse_divisor`` until the
       IP reaches ip_min (at most ``max_coarse_steps`` divisions);
    2. fine: binary search between the last two coarse probes (at most
       ``max_fine_steps`` bisections).

    The first probe inside the interval wins.  If no probe lands inside
    (the target can be unattainable, e.g. duplicated points cap the IP
    below 100), the probe whose IP is closest to the interval is
    returned; ties prefer the larger spacing.  Returns (spacing, ip).
    """
    X = as_cloud(points)
    if not (0.0 < ip_min <= ip_max <= 100.0):
        raise InvalidRange(f"empty or out-of-range IP target [{ip_min}, {ip_max}]")

    def distance(ip: float) -> float:
        if ip < ip_min:
            return ip_min - ip
        if ip > ip_max:
            return ip - ip_max
        return 0.0

    best_s = 1.0
    best_ip = information_percentage(X, 1.0)
    best_d = distance(best_ip)
    if best_d == 0.0:
        return 1.0, best_ip

    def consider(s: float, ip: float) -> None:
        nonlocal best_s, best_ip, best_d
        d = distance(ip)
        if d < best_d or (d == best_d and s > best_s):
            best_s, best_ip, best_d = s, ip, d

    # phase 1: shrink until the IP floor is reached
    s_hi, ip_hi = 1.0, best_ip
    s_lo, ip_lo = s_hi, ip_hi
    for _ in range(max_coarse_steps):
        if ip_lo >= ip_min:
            break
        if s_lo < 1e-12:
            # past float coordinate resolution; the IP cannot rise further
            break
        s_hi, ip_hi = s_lo, ip_lo
        s_lo = s_lo / coarse_divisor
        ip_lo = information_percentage(X, s_lo)
        consider(s_lo, ip_lo)
        if distance(ip_lo) == 0.0:
            return s_lo, ip_lo
    if ip_lo < ip_min:
        # target unreachable within the step budget
        return best_s, best_ip
    if s_lo == s_hi:
        # already above ip_min at s=1 but past ip_max: nothing coarser exists
        return best_s, best_ip

    # phase 2: bisect [s_lo, s_hi]; IP rises as spacing shrinks
    for _ in range(max_fine_steps):
        s_mid = 0.5 * (s_lo + s_hi)
        ip_mid = information_percentage(X, s_mid)
        consider(s_mid, ip_mid)
        if distance(ip_mid) == 0.0:
            return s_mid, ip_mid
        if ip_mid < ip_min:
            s_hi = s_mid
        else:
            s_lo = s_mid
    return best_s, best_ip


def read_points_csv(path, *, header: bool = False, label_column: bool = False):
    """Read a cloud from CSV, one point per row, comma separated.

    Rejects ragged rows.  With ``label_column`` the last column is split
    off and returned as an integer label vector: (points, labels).
    """
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            if header and lineno == 0:
                continue
            parts = line.split(",")
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise ValueError(
                    f"ragged CSV row at line {lineno + 1}: "
                    f"expected {width} fields, got {len(parts)}"
                )
            rows.append([float(p) for p in parts])
    if not rows:
        raise ValueError(f"no data rows in {path}")
    data = np.asarray(rows, dtype=np.float64)
    if label_column:
        if data.shape[1] < 2:
            raise ValueError("label column requested but CSV has a single column")
        return data[:, :-1], data[:, -1].astype(np.int64)
    return data


def write_points_csv(path, points, labels=None) -> None:
    """Write a cloud (and optional integer labels as a last column) to CSV."""
    X = as_cloud(points)
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(X.shape[0]):
            fields = [repr(float(v)) for v in X[i]]
            if labels is not None:
                fields.append(str(int(labels[i])))
            fh.write(",".join(fields) + "\n")
