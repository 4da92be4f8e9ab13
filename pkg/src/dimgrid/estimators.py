"""Dimension estimators built on grid connectivity, plus two distance baselines.

The grid estimators share one pipeline: normalize, pick a spacing that
hits the IP target, snap to the grid, count Moore neighbors of the
occupied cells.  What differs is the yardstick the neighbor counts are
measured against:

  dcf_estimate   theoretical anchors 3^t - 1 (a full t-grid's count);
                 the dimension with the largest membership mass wins
  edcf_estimate  anchors calibrated empirically from reference
                 hyperspheres matched in size, noise and IP; the
                 estimate is the rounded membership-weighted mean

Membership is triangular: a count x between anchors r_{t-1} < r_t
splits its vote between dimensions t-1 and t linearly, so the weight
vector degrades gracefully between integer dimensions.

twonn_estimate and mle_estimate are classical nearest-neighbor-distance
baselines used for comparison runs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .datagen import gen_hypersphere
from .errors import (
    DegenerateDistances,
    DomainError,
    NoiseEstimateUnavailable,
    TooFewPoints,
    ZeroRange,
)
from .gridding import as_cloud, find_spacing, normalize_global, snap_to_grid
from .neighborhood import connectivity_factor, count_neighbors
from .refcache import ReferenceCache, ReferenceKey, bucket_noise, bucket_points

__all__ = [
    "MembershipAnchors",
    "theoretical_anchors",
    "membership",
    "EstimateReport",
    "dcf_estimate",
    "edcf_estimate",
    "adaptive_target",
    "estimate_noise",
    "ReferenceModel",
    "generate_reference_model",
    "twonn_estimate",
    "mle_estimate",
]

DEFAULT_BASE_TARGET = 50.0
DEFAULT_D_MAX = 50
IP_BAND_HALF_WIDTH = 5.0


@dataclass(frozen=True)
class MembershipAnchors:
    """Anchor counts r_0..r_Dmax that peak the membership hats.

    Boundary convention: r_{-1} := r_0 and r_{Dmax+1} := r_Dmax, which
    turns the outermost hats into one-sided plateaus.  Theoretical
    anchors are strictly increasing; empirical ones need not be, in
    which case hat supports may overlap and a count can vote for more
    than two dimensions.
    """

    values: np.ndarray
    provenance: str = "theoretical"

    def __post_init__(self):
        object.__setattr__(
            self, "values", np.asarray(self.values, dtype=np.float64)
        )
        if self.values.ndim != 1 or self.values.shape[0] < 1:
            raise DomainError("anchors must be a non-empty 1-D sequence")

    @property
    def d_max(self) -> int:
        return self.values.shape[0] - 1


def theoretical_anchors(d_max: int) -> MembershipAnchors:
    """Full t-grid neighbor counts 3^t - 1 for t = 0..d_max."""
    if d_max < 0:
        raise DomainError("d_max must be non-negative")
    return MembershipAnchors(
        np.array([3.0**t - 1.0 for t in range(d_max + 1)]), "theoretical"
    )


def _hat(x: np.ndarray, left: float, peak: float, right: float,
         lo_edge: bool, hi_edge: bool) -> np.ndarray:
    """Triangular membership with one-sided plateaus at the boundary hats."""
    out = np.zeros_like(x, dtype=np.float64)
    if left == peak == right:
        return (x == peak).astype(np.float64)
    if peak > left:
        m = (x >= left) & (x <= peak)
        out[m] = np.maximum(out[m], np.minimum(1.0, (x[m] - left) / (peak - left)))
    if right > peak:
        m = (x >= peak) & (x <= right)
        out[m] = np.maximum(out[m], np.minimum(1.0, (right - x[m]) / (right - peak)))
    out[x == peak] = 1.0
    if hi_edge and right == peak:
        m = x > peak
        if np.any(m):
            out[m] = 1.0 if peak <= left else np.maximum(
                out[m], np.minimum(1.0, (x[m] - left) / (peak - left))
            )
    if lo_edge and left == peak:
        m = x < peak
        if np.any(m):
            out[m] = 1.0 if right <= peak else np.maximum(
                out[m], np.minimum(1.0, (right - x[m]) / (right - peak))
            )
    return out


def _membership_matrix(counts: np.ndarray, anchors: MembershipAnchors) -> np.ndarray:
    """Membership of each count in each dimension hat, shape (len(counts), d_max+1)."""
    r = anchors.values
    ext = np.concatenate([[r[0]], r, [r[-1]]])
    x = np.asarray(counts, dtype=np.float64)
    cols = [
        _hat(x, ext[t], ext[t + 1], ext[t + 2], t == 0, t == r.shape[0] - 1)
        for t in range(r.shape[0])
    ]
    return np.column_stack(cols)


def membership(x: float, anchors: MembershipAnchors) -> np.ndarray:
    """Membership vector of a single neighbor count."""
    return _membership_matrix(np.array([float(x)]), anchors)[0]


@dataclass
class EstimateReport:
    """Uniform result record for every estimator."""

    method: str
    m_hat: int
    weights: np.ndarray
    cf: float
    spacing: float
    achieved_ip: float
    d_max: int
    noise: float | None = None
    raw_estimate: float | None = None
    low_confidence: bool = False

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "m_hat": int(self.m_hat),
            "weights": [float(w) for w in self.weights],
            "cf": float(self.cf),
            "spacing": float(self.spacing),
            "achieved_ip": float(self.achieved_ip),
            "d_max": int(self.d_max),
            "noise": None if self.noise is None else float(self.noise),
            "raw_estimate": None
            if self.raw_estimate is None
            else float(self.raw_estimate),
            "low_confidence": bool(self.low_confidence),
        }


def _degenerate_report(method: str, d_max: int) -> EstimateReport:
    weights = np.zeros(d_max + 1)
    weights[0] = 1.0
    return EstimateReport(method, 0, weights, 0.0, 1.0, 100.0, d_max)


def _is_degenerate(X: np.ndarray) -> bool:
    return X.shape[0] == 1 or bool(np.all(X == X[0]))


def _grid_counts(X: np.ndarray, ip_range: tuple[float, float], engine: str):
    normalized, _ = normalize_global(X)
    spacing, ip = find_spacing(normalized, ip_range[0], ip_range[1])
    grid = snap_to_grid(normalized, spacing)
    counts = count_neighbors(grid, engine)
    return grid, counts


def _resolve_ip_range(ip_range, base_target: float, d: int) -> tuple[float, float]:
    if ip_range is not None:
        return float(ip_range[0]), float(ip_range[1])
    target = adaptive_target(base_target, d)
    return target - IP_BAND_HALF_WIDTH, min(100.0, target + IP_BAND_HALF_WIDTH)


def dcf_estimate(
    points,
    ip_range: tuple[float, float] | None = None,
    d_max: int | None = None,
    engine: str = "auto",
    base_target: float = DEFAULT_BASE_TARGET,
) -> EstimateReport:
    """Estimate dimension from neighbor counts against theoretical anchors.

    The candidate range is t = 0..d_max (capped at the ambient
    dimension).  Counts beyond the last anchor saturate its plateau.
    The winning dimension maximizes the summed membership; ties go to
    the smaller dimension.
    """
    X = as_cloud(points)
    d = X.shape[1]
    d_max = d if d_max is None else min(int(d_max), d)
    if d_max < 0:
        raise DomainError("d_max must be non-negative")
    if _is_degenerate(X):
        return _degenerate_report("dcf", d_max)
    ip_lo, ip_hi = _resolve_ip_range(ip_range, base_target, d)
    grid, counts = _grid_counts(X, (ip_lo, ip_hi), engine)
    anchors = theoretical_anchors(d_max)
    W = _membership_matrix(counts.counts, anchors).sum(axis=0)
    total = W.sum()
    weights = W / total if total > 0 else W
    m_hat = int(np.argmax(W))
    return EstimateReport(
        "dcf",
        m_hat,
        weights,
        connectivity_factor(counts).cf,
        grid.spacing,
        grid.achieved_ip,
        d_max,
        low_confidence=total <= 0,
    )


def adaptive_target(base_target: float, n: int) -> float:
    """IP target raised with ambient dimension, capped at 95.

    Sparse high-dimensional clouds need a higher retention target for
    the occupied cells to stay adjacent at all: min(95, base + 3 sqrt(n)).
    """
    if n < 0:
        raise DomainError("ambient dimension must be non-negative")
    return min(95.0, float(base_target) + 3.0 * float(np.sqrt(n)))


def estimate_noise(points, k: int = 2) -> float:
    """Crude noise scale: median distance to the k-th neighbor, halved.

    On a noiseless dense lattice this returns about half the lattice
    step; on noisy data the k-th neighbor distance is noise-dominated.
    Deliberately simple and pluggable: any better estimate can be passed
    straight to the estimators as an override.
    """
    X = as_cloud(points)
    if k < 2:
        raise DomainError("neighbor order k must be at least 2")
    if X.shape[0] <= k:
        raise TooFewPoints(f"need more than {k} points, got {X.shape[0]}")
    tree = cKDTree(X)
    dist, _ = tree.query(X, k=k + 1, workers=-1)
    return float(np.median(dist[:, k]) / 2.0)


@dataclass
class ReferenceModel:
    """Empirical anchors plus the bucketed key they were generated under."""

    anchors: MembershipAnchors
    key: ReferenceKey
    from_cache: bool = False


def generate_reference_model(
    n_points: int,
    d: int,
    d_max: int,
    ip_range: tuple[float, float],
    sigma: float,
    cache: ReferenceCache | None = None,
    seed: int = 0,
) -> ReferenceModel:
    """Calibrate neighbor-count anchors from synthetic hyperspheres.

    For each candidate dimension m = 0..d_max, sample an m-sphere with
    the bucketed point count and noise, push it through the same
    normalize/spacing/snap pipeline, and record the mean neighbor count
    of its representatives.  Dimension 0 is a single representative and
    anchors at 0 exactly.  Results are memoized in the cache under the
    bucketed key; generation is deterministic given the seed.
    """
    if d_max < 0:
        raise DomainError("d_max must be non-negative")
    key = ReferenceKey(
        d=int(d),
        d_max=int(d_max),
        n_bucket=bucket_points(n_points),
        noise_bucket=bucket_noise(float(sigma)),
        ip_target=round(0.5 * (ip_range[0] + ip_range[1]), 1),
    )
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return ReferenceModel(
                MembershipAnchors(np.asarray(hit), "empirical"), key, True
            )
    anchors = np.zeros(d_max + 1)
    for m in range(d_max + 1):
        rng = np.random.default_rng([seed, m, key.n_bucket])
        sphere = gen_hypersphere(m, key.n_bucket, key.noise_bucket, rng)
        try:
            normalized, _ = normalize_global(sphere)
        except ZeroRange:
            continue  # all points in one cell: anchor stays 0
        spacing, _ = find_spacing(normalized, ip_range[0], ip_range[1])
        grid = snap_to_grid(normalized, spacing)
        if grid.n_representatives < 2:
            continue
        anchors[m] = count_neighbors(grid).counts.mean()
    if cache is not None:
        try:
            cache.put(key, anchors)
        except Exception as exc:  # persistence failure must not lose the model
            warnings.warn(f"anchor cache not persisted: {exc}")
    return ReferenceModel(MembershipAnchors(anchors, "empirical"), key, False)


def edcf_estimate(
    points,
    ip_range: tuple[float, float] | None = None,
    d_max: int = DEFAULT_D_MAX,
    base_target: float = DEFAULT_BASE_TARGET,
    cache: ReferenceCache | None = None,
    noise: float | None = None,
    noise_k: int = 2,
    engine: str = "auto",
    seed: int = 0,
) -> EstimateReport:
    """Estimate dimension against empirically calibrated anchors.

    Same gridding pipeline as dcf_estimate, but the anchors come from
    reference hyperspheres matched to the data in point count, noise
    level and IP target, which absorbs the systematic count deflation
    caused by noise and finite sampling.  The estimate is the rounded
    weighted mean of the candidate dimensions under the normalized
    membership weights.

    ``noise`` overrides the internal estimate (pass the known level when
    you have it).  Without an override, an inestimable noise level falls
    back to 0 with a warning.
    """
    X = as_cloud(points)
    d = X.shape[1]
    d_max = min(int(d_max), d)
    if d_max < 0:
        raise DomainError("d_max must be non-negative")
    if _is_degenerate(X):
        return _degenerate_report("edcf", d_max)
    ip_lo, ip_hi = _resolve_ip_range(ip_range, base_target, d)
    grid, counts = _grid_counts(X, (ip_lo, ip_hi), engine)
    if noise is None:
        try:
            sigma = estimate_noise(X, noise_k)
        except (TooFewPoints, NoiseEstimateUnavailable) as exc:
            warnings.warn(f"noise estimate unavailable ({exc}); assuming 0")
            sigma = 0.0
    else:
        sigma = float(noise)
    model = generate_reference_model(
        X.shape[0], d, d_max, (ip_lo, ip_hi), sigma, cache, seed
    )
    W = _membership_matrix(counts.counts, model.anchors).sum(axis=0)
    total = W.sum()
    if total > 0:
        weights = W / total
        m_hat = int(np.floor(np.dot(np.arange(d_max + 1), weights) + 0.5))
        low_confidence = False
    else:
        weights = W
        m_hat = 0
        low_confidence = True
    return EstimateReport(
        "edcf",
        m_hat,
        weights,
        connectivity_factor(counts).cf,
        grid.spacing,
        grid.achieved_ip,
        d_max,
        noise=sigma,
        low_confidence=low_confidence,
    )


def _unique_points(X: np.ndarray) -> np.ndarray:
    return np.unique(X, axis=0)


def twonn_estimate(points, discard_fraction: float = 0.1) -> float:
    """Two-nearest-neighbor dimension estimate.

    Uses the ratio mu = d2/d1 of each point's two smallest neighbor
    distances; under a locally uniform density mu follows a Pareto law
    with shape equal to the intrinsic dimension.  The estimate is a
    least-squares fit through the origin of -log(1 - F) against log mu
    on the empirical cdf, after discarding the largest
    ``discard_fraction`` of ratios (they are dominated by boundary and
    density effects).  Exact duplicates are removed first.
    """
    X = as_cloud(points)
    if not (0.0 <= discard_fraction < 1.0):
        raise DomainError("discard fraction must be in [0, 1)")
    X = _unique_points(X)
    m = X.shape[0]
    if m < 3:
        raise DegenerateDistances("need at least 3 distinct points")
    tree = cKDTree(X)
    dist, _ = tree.query(X, k=3, workers=-1)
    d1, d2 = dist[:, 1], dist[:, 2]
    if np.any(d1 <= 0.0):
        raise DegenerateDistances("zero first-neighbor distance survived deduplication")
    mu = np.sort(d2 / d1)
    keep = max(2, int(np.floor(m * (1.0 - discard_fraction))))
    mu = mu[:keep]
    x = np.log(mu)
    y = -np.log(1.0 - np.arange(keep) / m)
    denom = float(np.dot(x, x))
    if denom <= 0.0:
        raise DegenerateDistances("all distance ratios are 1; no spread to fit")
    return float(np.dot(x, y) / denom)


def mle_estimate(points, k: int = 20) -> float:
    """Maximum-likelihood dimension from k-nearest-neighbor distances.

    Per point, the estimator inverts the mean log distance ratio
    [(1/(k-1)) * sum_j log(T_k / T_j)]^-1 over j = 1..k-1, where T_j is
    the distance to the j-th neighbor; the result is averaged over all
    points.  Exact duplicates are removed first.
    """
    X = as_cloud(points)
    if k < 2:
        raise DomainError("neighbor order k must be at least 2")
    X = _unique_points(X)
    m = X.shape[0]
    if m <= k:
        raise TooFewPoints(f"need more than {k} distinct points, got {m}")
    tree = cKDTree(X)
    dist, _ = tree.query(X, k=k + 1, workers=-1)
    T = dist[:, 1:]
    with np.errstate(divide="ignore"):
        log_ratio = np.log(T[:, -1:]) - np.log(T[:, :-1])
    mean_log = log_ratio.mean(axis=1)
    with np.errstate(divide="ignore"):
        per_point = 1.0 / mean_log
    finite = np.isfinite(per_point)
    if not np.any(finite):
        raise DegenerateDistances("all neighbor distances are tied")
    return float(per_point[finite].mean())
