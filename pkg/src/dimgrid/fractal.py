"""Box-counting dimension and decision-boundary extraction.

The boundary pipeline turns a labeled 2-D dataset into a geometric
object whose complexity can be measured: rasterize a k-NN classifier
over the bounding box, collect the cells whose Moore neighborhood
contains a different label, then analyze that boundary cloud with the
same machinery used for any other point set (box counting,
connectivity factor, grid-based dimension estimates).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .bounds import classify_lmu
from .errors import DegenerateFit, DomainError, SingleClass
from .estimators import _membership_matrix, theoretical_anchors
from .gridding import as_cloud, cell_indices, find_spacing, normalize_global, snap_to_grid
from .neighborhood import connectivity_factor, count_neighbors

__all__ = [
    "BoxCountResult",
    "box_dimension",
    "DEFAULT_SCALES",
    "LabelRaster",
    "knn_label_grid",
    "extract_boundary",
    "BoundaryReport",
    "boundary_report",
]

# geometric ladder of box sizes on the normalized cloud; the two
# coarsest rungs saturate against the bounding box and are dropped
# from the fit by default
DEFAULT_SCALES = tuple(2.0**-k for k in range(2, 10))


@dataclass
class BoxCountResult:
    scales: np.ndarray
    counts: np.ndarray
    slope: float
    residual: float
    fit_window: int


def box_dimension(points, scales=None, drop_coarsest: int = 2) -> BoxCountResult:
    """Least-squares box-counting dimension of a normalized cloud.

    Counts occupied grid cells at every scale (coarsest first), then
    fits log(count) against log(1/scale) with the ``drop_coarsest``
    largest scales excluded.  The scales must shrink by integer factors
    for the counts to be monotone; the default ladder halves each rung.
    """
    X = as_cloud(points)
    scales = np.sort(np.asarray(scales if scales is not None else DEFAULT_SCALES))[::-1]
    if scales.shape[0] - drop_coarsest < 2:
        raise DomainError("need at least two scales left after dropping the coarsest")
    if np.any(scales <= 0.0):
        raise DomainError("scales must be positive")
    counts = np.array(
        [np.unique(cell_indices(X, s), axis=0).shape[0] for s in scales],
        dtype=np.int64,
    )
    if np.all(counts == counts[0]):
        raise DegenerateFit("box counts do not vary across scales")
    # trailing scales where boxes hold fewer than ~5 distinct points are
    # sampling-limited (the count tracks N, not geometry); trim them off
    n_distinct = np.unique(X, axis=0).shape[0]
    stop = scales.shape[0]
    while stop - drop_coarsest > 3 and counts[stop - 1] * 5 > n_distinct:
        stop -= 1
    log_inv = np.log(1.0 / scales[drop_coarsest:stop])
    log_cnt = np.log(counts[drop_coarsest:stop].astype(np.float64))
    slope, intercept = np.polyfit(log_inv, log_cnt, 1)
    resid = log_cnt - (slope * log_inv + intercept)
    return BoxCountResult(
        scales, counts, float(slope), float(np.sqrt(np.mean(resid**2))), drop_coarsest
    )


@dataclass
class LabelRaster:
    """Dense grid of class labels over a rectangle.

    ``labels[i, j]`` covers the cell whose center is
    (xmin + (j + 0.5) wx, ymin + (i + 0.5) wy), i.e. row index runs
    along y.  Accepts externally produced rasters as long as they are
    integer 2-D arrays.
    """

    labels: np.ndarray
    extent: tuple[float, float, float, float]  # xmin, xmax, ymin, ymax

    def __post_init__(self):
        self.labels = np.asarray(self.labels)
        if self.labels.ndim != 2:
            raise DomainError("label raster must be 2-D")

    def cell_size(self) -> tuple[float, float]:
        xmin, xmax, ymin, ymax = self.extent
        h, w = self.labels.shape
        return (xmax - xmin) / w, (ymax - ymin) / h

    def cell_centers(self, mask: np.ndarray) -> np.ndarray:
        xmin, _, ymin, _ = self.extent
        wx, wy = self.cell_size()
        rows, cols = np.nonzero(mask)
        return np.column_stack(
            [xmin + (cols + 0.5) * wx, ymin + (rows + 0.5) * wy]
        )


def knn_label_grid(points, labels, k: int = 5, resolution: int = 512) -> LabelRaster:
    """Rasterize a k-nearest-neighbor majority vote over the bounding box.

    Every raster cell center queries its k nearest training points and
    takes the most common label; vote ties go to the smallest label.
    k larger than the training set is clamped, so k >= N produces the
    global majority everywhere.
    """
    X = as_cloud(points)
    y = np.asarray(labels).astype(np.int64)
    if X.shape[1] != 2:
        raise DomainError("label rasters are 2-D; train points must have 2 features")
    if y.shape[0] != X.shape[0]:
        raise DomainError("one label per training point required")
    if resolution < 2:
        raise DomainError("resolution must be at least 2")
    k = min(int(k), X.shape[0])
    if k < 1:
        raise DomainError("k must be positive")
    xmin, ymin = X.min(axis=0)
    xmax, ymax = X.max(axis=0)
    wx, wy = (xmax - xmin) / resolution, (ymax - ymin) / resolution
    cx = xmin + (np.arange(resolution) + 0.5) * wx
    cy = ymin + (np.arange(resolution) + 0.5) * wy
    gx, gy = np.meshgrid(cx, cy)
    centers = np.column_stack([gx.ravel(), gy.ravel()])
    tree = cKDTree(X)
    _, idx = tree.query(centers, k=k, workers=-1)
    votes = y[idx.reshape(-1, k)]
    classes = np.unique(y)
    tally = np.stack([(votes == c).sum(axis=1) for c in classes], axis=1)
    # argmax picks the first maximum; classes are sorted, so ties go low
    winners = classes[np.argmax(tally, axis=1)]
    return LabelRaster(
        winners.reshape(resolution, resolution),
        (float(xmin), float(xmax), float(ymin), float(ymax)),
    )


def extract_boundary(raster: LabelRaster) -> np.ndarray:
    """Centers of raster cells adjacent to a different label.

    A cell belongs to the boundary when any of its up-to-8 in-bounds
    Moore neighbors carries another label.  Symmetric by construction:
    both sides of an interface are boundary cells.
    """
    L = raster.labels
    if np.unique(L).shape[0] < 2:
        raise SingleClass("raster contains a single label; no boundary exists")
    h, w = L.shape
    mask = np.zeros((h, w), dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            a = L[max(di, 0) : h + min(di, 0), max(dj, 0) : w + min(dj, 0)]
            b = L[max(-di, 0) : h + min(-di, 0), max(-dj, 0) : w + min(-dj, 0)]
            mask[max(-di, 0) : h + min(-di, 0), max(-dj, 0) : w + min(-dj, 0)] |= a != b
    return raster.cell_centers(mask)


@dataclass
class BoundaryReport:
    """Everything measured about one decision boundary."""

    n_boundary_cells: int
    fractal_dimension: float
    cf: float
    lmu_dimension: int
    lmu_candidates: list[int]
    dcf_dimension: int
    weights: np.ndarray
    spacing: float
    achieved_ip: float
    object_dimensions: list[float]

    def to_dict(self) -> dict:
        return {
            "n_boundary_cells": int(self.n_boundary_cells),
            "fractal_dimension": float(self.fractal_dimension),
            "cf": float(self.cf),
            "lmu_dimension": int(self.lmu_dimension),
            "lmu_candidates": [int(c) for c in self.lmu_candidates],
            "dcf_dimension": int(self.dcf_dimension),
            "weights": [float(w) for w in self.weights],
            "spacing": float(self.spacing),
            "achieved_ip": float(self.achieved_ip),
            "object_dimensions": [float(v) for v in self.object_dimensions],
        }


def boundary_report(
    boundary_points,
    objects=(),
    ip_range: tuple[float, float] = (50.0, 100.0),
) -> BoundaryReport:
    """Measure a boundary cloud: box dimension, CF, and grid estimates.

    The gridding keeps at least half the boundary cells distinct
    (ip_range floor 50); a narrower band merges the two sides of a
    raster-extracted boundary into blobs that read one dimension high.

    ``objects`` may hold the per-class training clouds; each gets its
    own box dimension so the boundary's complexity can be compared with
    the objects that induced it.
    """
    B = as_cloud(boundary_points)
    n = B.shape[1]
    normalized, _ = normalize_global(B)
    box = box_dimension(normalized)
    spacing, ip = find_spacing(normalized, ip_range[0], ip_range[1])
    grid = snap_to_grid(normalized, spacing)
    counts = count_neighbors(grid)
    cf = connectivity_factor(counts).cf
    lmu_dim, candidates = classify_lmu(cf, n)
    W = _membership_matrix(counts.counts, theoretical_anchors(n)).sum(axis=0)
    total = W.sum()
    weights = W / total if total > 0 else W
    dcf_dim = int(np.argmax(W))
    object_dims = []
    for obj in objects:
        obj_norm, _ = normalize_global(as_cloud(obj))
        object_dims.append(box_dimension(obj_norm).slope)
    return BoundaryReport(
        B.shape[0],
        box.slope,
        cf,
        lmu_dim,
        candidates,
        dcf_dim,
        weights,
        spacing,
        ip,
        object_dims,
    )
