"""Synthetic dataset generators: manifolds, labeled 2-D benchmarks, IFS fractals.

Manifold samplers emit unit-scale clouds (coordinates of order 1), so a
noise argument reads directly as an absolute per-coordinate Gaussian
sigma and as a fraction of the characteristic scale at the same time.
Every generator is deterministic given a seed and admits a residual
check against its own parametrization (see the tests).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UnknownGenerator

__all__ = [
    "gen_hypersphere",
    "ManifoldSpec",
    "MANIFOLD_GENERATORS",
    "gen_manifold",
    "desk_suite",
    "gen_circles",
    "gen_sinusoids",
    "AffineIFS",
    "FERN",
    "CARPET",
    "TRIANGLE",
    "IFS_PRESETS",
    "gen_ifs",
]


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def gen_hypersphere(m: int, n_points: int, sigma: float = 0.0, seed=None) -> np.ndarray:
    """Sample the unit m-sphere surface in R^(m+1), plus Gaussian noise.

    Directions come from normalized Gaussian vectors, which is uniform
    on the sphere.  Noise is added per coordinate with standard
    deviation sigma.  m = 0 degenerates to a single point at 1 on the
    only axis, kept noiseless so it stays a single grid representative.
    """
    if m < 0:
        raise DomainError(f"sphere dimension must be non-negative, got {m}")
    if n_points < 1:
        raise DomainError("need at least one point")
    rng = _rng(seed)
    if m == 0:
        return np.ones((n_points, 1), dtype=np.float64)
    g = rng.standard_normal((n_points, m + 1))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    X = g / norms
    if sigma > 0.0:
        X = X + rng.normal(0.0, sigma, size=X.shape)
    return X


@dataclass
class ManifoldSpec:
    """One benchmark manifold cell: generator id, dimensions, size, noise."""

    generator: str
    intrinsic_dim: int
    ambient_dim: int
    n_points: int = 1000
    noise: float = 0.0
    seed: int = 0


def _gen_sphere_spec(spec: ManifoldSpec, rng) -> np.ndarray:
    m = spec.intrinsic_dim
    if spec.ambient_dim != m + 1:
        raise DomainError("sphere ambient dimension must be intrinsic + 1")
    return gen_hypersphere(m, spec.n_points, spec.noise, rng)


def _gen_affine(spec: ManifoldSpec, rng) -> np.ndarray:
    """Uniform sample of an m-dimensional linear subspace of R^d."""
    m, d = spec.intrinsic_dim, spec.ambient_dim
    if m > d:
        raise DomainError("intrinsic dimension exceeds ambient")
    latent = rng.random((spec.n_points, m))
    basis, _ = np.linalg.qr(rng.standard_normal((d, m)))
    X = latent @ basis.T
    return _add_noise(X, spec.noise, rng)


def _gen_uniform_box(spec: ManifoldSpec, rng) -> np.ndarray:
    if spec.intrinsic_dim != spec.ambient_dim:
        raise DomainError("uniform box is full-dimensional")
    X = rng.random((spec.n_points, spec.ambient_dim))
    return _add_noise(X, spec.noise, rng)


def _gen_helix1d(spec: ManifoldSpec, rng) -> np.ndarray:
    """Coil wound 8 times around a ring: ((2+cos 8t) cos t, (2+cos 8t) sin t, sin 8t).

    A long 1-D curve whose extent dwarfs typical noise levels; satisfies
    (hypot(x, y) - 2)^2 + z^2 = 1 exactly at zero noise.
    """
    _require_dims(spec, 1, 3)
    t = rng.random(spec.n_points) * 2.0 * np.pi
    r = 2.0 + np.cos(8.0 * t)
    X = np.column_stack([r * np.cos(t), r * np.sin(t), np.sin(8.0 * t)])
    return _add_noise(X, spec.noise, rng)


def _gen_helix2d(spec: ManifoldSpec, rng) -> np.ndarray:
    """Helicoid sheet: (u cos v, u sin v, v / 2pi), u in [0,1], v in [0, 2pi)."""
    _require_dims(spec, 2, 3)
    u = rng.random(spec.n_points)
    v = rng.random(spec.n_points) * 2.0 * np.pi
    X = np.column_stack([u * np.cos(v), u * np.sin(v), v / (2.0 * np.pi)])
    return _add_noise(X, spec.noise, rng)


def _gen_swiss_roll(spec: ManifoldSpec, rng) -> np.ndarray:
    """Rolled sheet, radius normalized so coordinates stay within [-1, 1]."""
    _require_dims(spec, 2, 3)
    phi = 1.5 * np.pi * (1.0 + 2.0 * rng.random(spec.n_points))
    height = rng.random(spec.n_points)
    r = phi / (4.5 * np.pi)
    X = np.column_stack([r * np.cos(phi), height, r * np.sin(phi)])
    return _add_noise(X, spec.noise, rng)


def _gen_mobius(spec: ManifoldSpec, rng) -> np.ndarray:
    """Half-twisted band of width 1 around the unit circle."""
    _require_dims(spec, 2, 3)
    u = rng.random(spec.n_points) * 2.0 * np.pi
    w = rng.random(spec.n_points) - 0.5
    r = 1.0 + w * np.cos(u / 2.0)
    X = np.column_stack([r * np.cos(u), r * np.sin(u), w * np.sin(u / 2.0)])
    return _add_noise(X, spec.noise, rng)


def _gen_scurve(spec: ManifoldSpec, rng) -> np.ndarray:
    """Two glued half-cylinders: (sin t, 2v, sign(t)(cos t - 1))."""
    _require_dims(spec, 2, 3)
    t = 1.5 * np.pi * (2.0 * rng.random(spec.n_points) - 1.0)
    v = rng.random(spec.n_points)
    X = np.column_stack([np.sin(t), 2.0 * v, np.sign(t) * (np.cos(t) - 1.0)])
    return _add_noise(X, spec.noise, rng)


def _gen_spiral(spec: ManifoldSpec, rng) -> np.ndarray:
    """Planar Archimedean spiral, zero-padded into the ambient space."""
    if spec.intrinsic_dim != 1 or spec.ambient_dim < 2:
        raise DomainError("spiral is a curve needing at least 2 ambient dimensions")
    theta = rng.random(spec.n_points) * 4.0 * np.pi
    r = 0.25 + 0.75 * theta / (4.0 * np.pi)
    X = np.zeros((spec.n_points, spec.ambient_dim))
    X[:, 0] = r * np.cos(theta)
    X[:, 1] = r * np.sin(theta)
    return _add_noise(X, spec.noise, rng)


def _require_dims(spec: ManifoldSpec, m: int, d: int) -> None:
    if spec.intrinsic_dim != m or spec.ambient_dim != d:
        raise DomainError(
            f"{spec.generator} is {m}-dimensional in R^{d}, got "
            f"({spec.intrinsic_dim}, {spec.ambient_dim})"
        )


def _add_noise(X: np.ndarray, sigma: float, rng) -> np.ndarray:
    if sigma > 0.0:
        X = X + rng.normal(0.0, sigma, size=X.shape)
    return X


MANIFOLD_GENERATORS = {
    "sphere": _gen_sphere_spec,
    "affine": _gen_affine,
    "uniform_box": _gen_uniform_box,
    "helix1d": _gen_helix1d,
    "helix2d": _gen_helix2d,
    "swiss_roll": _gen_swiss_roll,
    "mobius": _gen_mobius,
    "scurve": _gen_scurve,
    "spiral": _gen_spiral,
}


def gen_manifold(spec: ManifoldSpec) -> np.ndarray:
    """Dispatch a ManifoldSpec to its registered generator."""
    try:
        generator = MANIFOLD_GENERATORS[spec.generator]
    except KeyError:
        raise UnknownGenerator(f"no generator named {spec.generator!r}") from None
    if spec.n_points < 1:
        raise DomainError("need at least one point")
    return generator(spec, _rng(spec.seed))


def desk_suite(n_points: int = 1000, noise: float = 0.0, seed: int = 0) -> list[ManifoldSpec]:
    """The benchmark grid of manifolds at one size and noise level."""
    cells = [
        ("sphere", 10, 11),
        ("affine", 3, 5),
        ("helix1d", 1, 3),
        ("helix2d", 2, 3),
        ("swiss_roll", 2, 3),
        ("uniform_box", 20, 20),
        ("mobius", 2, 3),
        ("scurve", 2, 3),
        ("spiral", 1, 13),
    ]
    return [
        ManifoldSpec(name, m, d, n_points, noise, seed + i)
        for i, (name, m, d) in enumerate(cells)
    ]


def gen_circles(
    kind: str = "concentric",
    n_per_class: int = 10000,
    radii: tuple[float, float] | None = None,
    noise_rate: float | None = None,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Two noisy circles sharing a center, labeled 1 and 2.

    kind "concentric" uses radii 3.0/4.0 with noise rate 0.5, kind
    "overlapping" radii 3.0/3.5 with rate 0.7, so the noise bands of the
    second variant actually intersect.  Angles are evenly spaced; each
    coordinate gets additive noise rand()*rate - rand()*rate (a
    symmetric triangular distribution on (-rate, rate)).
    """
    presets = {"concentric": ((3.0, 4.0), 0.5), "overlapping": ((3.0, 3.5), 0.7)}
    if kind not in presets:
        raise UnknownGenerator(f"unknown circles kind {kind!r}")
    default_radii, default_rate = presets[kind]
    radii = default_radii if radii is None else radii
    rate = default_rate if noise_rate is None else noise_rate
    if n_per_class < 1:
        raise DomainError("need at least one point per class")
    rng = _rng(seed)
    theta = np.linspace(0.0, 2.0 * np.pi, n_per_class, endpoint=False)
    clouds, labels = [], []
    for label, radius in zip((1, 2), radii):
        x = radius * np.cos(theta)
        y = radius * np.sin(theta)
        if rate > 0.0:
            x = x + rng.random(n_per_class) * rate - rng.random(n_per_class) * rate
            y = y + rng.random(n_per_class) * rate - rng.random(n_per_class) * rate
        clouds.append(np.column_stack([x, y]))
        labels.append(np.full(n_per_class, label, dtype=np.int64))
    return np.vstack(clouds), np.concatenate(labels)


def gen_sinusoids(
    n_per_class: int = 1000,
    amplitude: float = 1.0,
    noise_rate: float = 0.5,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Two interleaved sine curves, phase-shifted by pi and offset by 0.5.

    y = amplitude * sin(x + phase) + y_center + noise with noise
    rand()*rate - rate/2 (uniform, centered).  x is evenly spaced over
    [0, 2pi).  Labels are 1 and 2.
    """
    if n_per_class < 1:
        raise DomainError("need at least one point per class")
    rng = _rng(seed)
    x = np.linspace(0.0, 2.0 * np.pi, n_per_class, endpoint=False)
    clouds, labels = [], []
    for label, phase, center in ((1, 0.0, 0.0), (2, np.pi, 0.5)):
        y = amplitude * np.sin(x + phase) + center
        if noise_rate > 0.0:
            y = y + rng.random(n_per_class) * noise_rate - noise_rate / 2.0
        clouds.append(np.column_stack([x, y]))
        labels.append(np.full(n_per_class, label, dtype=np.int64))
    return np.vstack(clouds), np.concatenate(labels)


@dataclass
class AffineIFS:
    """Iterated function system of planar affine maps.

    Each row of ``maps`` holds (a, b, c, d, e, f) applied as
    (x, y) -> (a x + b y + e, c x + d y + f); ``probs`` are the map
    selection probabilities and ``start`` the initial point.
    """

    maps: np.ndarray
    probs: np.ndarray
    start: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        self.maps = np.asarray(self.maps, dtype=np.float64).reshape(-1, 6)
        self.probs = np.asarray(self.probs, dtype=np.float64)
        if self.probs.shape[0] != self.maps.shape[0]:
            raise DomainError("one probability per map required")
        if np.any(self.probs <= 0.0):
            raise DomainError("map probabilities must be positive")
        self.probs = self.probs / self.probs.sum()


FERN = AffineIFS(
    maps=[
        (0.0, 0.0, 0.0, 0.16, 0.0, 0.0),
        (0.85, 0.04, -0.04, 0.85, 0.0, 1.6),
        (0.20, -0.26, 0.23, 0.22, 0.0, 1.6),
        (-0.15, 0.28, 0.26, 0.24, 0.0, 0.44),
    ],
    probs=[0.01, 0.85, 0.07, 0.07],
    start=(0.0, 0.0),
)

CARPET = AffineIFS(
    maps=[
        (0.333, 0.0, 0.0, 0.333, e, f)
        for e in (0.0, 0.333, 0.666)
        for f in (0.0, 0.333, 0.666)
        if not (e == 0.333 and f == 0.333)
    ],
    probs=[0.125] * 8,
    start=(0.5, 0.5),
)

TRIANGLE = AffineIFS(
    maps=[
        (0.5, 0.0, 0.0, 0.5, 0.0, 0.0),
        (0.5, 0.0, 0.0, 0.5, 0.5, 0.0),
        (0.5, 0.0, 0.0, 0.5, 0.25, 0.433),
    ],
    probs=[1.0 / 3.0] * 3,
    start=(0.0, 0.0),
)

IFS_PRESETS = {"fern": FERN, "carpet": CARPET, "triangle": TRIANGLE}


def gen_ifs(ifs: AffineIFS | str, n_points: int, seed: int = 0, burn_in: int = 100) -> np.ndarray:
    """Run the chaos game: iterate randomly chosen maps from the start point.

    The first ``burn_in`` iterates are discarded so the orbit has time
    to fall onto the attractor before sampling begins.
    """
    if isinstance(ifs, str):
        try:
            ifs = IFS_PRESETS[ifs]
        except KeyError:
            raise UnknownGenerator(f"no IFS preset named {ifs!r}") from None
    if n_points < 1:
        raise DomainError("need at least one point")
    rng = _rng(seed)
    picks = rng.choice(ifs.maps.shape[0], size=burn_in + n_points, p=ifs.probs)
    out = np.empty((n_points, 2), dtype=np.float64)
    x, y = ifs.start
    for i, k in enumerate(picks):
        a, b, c, d, e, f = ifs.maps[k]
        x, y = a * x + b * y + e, c * x + d * y + f
        if i >= burn_in:
            out[i - burn_in] = (x, y)
    return out
