"""End-to-end checks, one test per shipping criterion.

Each test prints a single pass line (visible with -s or on failure) and
asserts its own runtime budget alongside the substance.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from dimgrid.bounds import (
    alpha,
    cross_alpha,
    classify_lmu,
    lmu_table,
    lower_cf,
    maximal_set_torus,
    minimal_block,
    torus_cf,
    upper_cf,
)
from dimgrid.datagen import ManifoldSpec, gen_hypersphere, gen_ifs, gen_manifold
from dimgrid.estimators import (
    MembershipAnchors,
    dcf_estimate,
    edcf_estimate,
    generate_reference_model,
    membership,
    mle_estimate,
    theoretical_anchors,
    twonn_estimate,
)
from dimgrid.fractal import box_dimension, extract_boundary, knn_label_grid
from dimgrid.gridding import information_percentage, snap_to_grid
from dimgrid.neighborhood import connectivity_factor, count_neighbors
from dimgrid.refcache import ReferenceCache


class budget:
    def __init__(self, criterion, seconds):
        self.criterion = criterion
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.criterion} overran its budget: "
                f"{elapsed:.1f}s >= {self.seconds}s"
            )
            print(f"criterion {self.criterion}: PASS ({elapsed:.2f}s)")
        return False


def test_criterion_01_exact_bound_values():
    with budget(1, 1.0):
        lo, mid, up = lmu_table(2).row(1)
        assert (lo, mid, up) == (Fraction(1, 6), Fraction(1, 4), Fraction(2, 3))
        assert upper_cf(1, 2) == Fraction(2, 3)


def test_criterion_02_three_space_table_values():
    with budget(2, 1.0):
        table = lmu_table(3)
        l1, m1, _ = table.row(1)
        l2, m2, u2 = table.row(2)
        l3, _, _ = table.row(3)
        assert round(float(l1), 2) == 0.05
        assert round(float(m1), 4) == 0.0769
        assert round(float(u2), 3) == 0.857
        assert round(float(l2), 2) == 0.17
        assert round(float(m2), 1) == 0.3
        assert round(float(l3), 2) == 0.45


def test_criterion_03_torus_oracle_matches_upper_bound():
    with budget(3, 10.0):
        for n in range(0, 5):
            for m in range(0, n + 1):
                assert torus_cf(maximal_set_torus(n, m)) == upper_cf(m, n), (m, n)


def test_criterion_04_minimal_set_oracle_matches_lower_bound():
    with budget(4, 10.0):
        for n in range(1, 6):
            for m in range(0, n + 1):
                g = snap_to_grid(minimal_block(m, n) + 0.5, 1.0)
                res = connectivity_factor(count_neighbors(g))
                empirical = Fraction(
                    res.total_interactions, g.n_representatives * (3**n - 1)
                )
                assert empirical == lower_cf(m, n), (m, n)


def test_criterion_05_cross_alpha_consistency():
    with budget(5, 1.0):
        for n in range(1, 9):
            for x in range(n + 1):
                assert sum(cross_alpha(x, y, n) for y in range(n + 1)) == 3**n - 1
            for y in range(1, n + 1):
                assert cross_alpha(0, y, n) == alpha(n, y)
            # y = 0 differs by exactly the excluded center cell
            assert cross_alpha(0, 0, n) == alpha(n, 0) - 1


def test_criterion_06_dcf_sanity():
    with budget(6, 5.0):
        xy = np.stack(np.meshgrid(np.arange(15.0), np.arange(15.0), indexing="ij"), -1)
        lattice = np.concatenate([xy.reshape(-1, 2), np.zeros((225, 1))], axis=1)
        assert dcf_estimate(lattice).m_hat == 2
        t = np.linspace(0.0, 1.0, 200)
        assert dcf_estimate(np.column_stack([t, 0.3 * t + 0.2])).m_hat == 1
        assert dcf_estimate(np.array([[0.5, 0.5]])).m_hat == 0


def test_criterion_07_edcf_desk_benchmark():
    with budget(7, 180.0):
        cache = ReferenceCache()
        cells = {
            "helix1d": (ManifoldSpec("helix1d", 1, 3, 1000, 0.01), {1}),
            "sphere10": (ManifoldSpec("sphere", 10, 11, 1000, 0.01), {9, 10, 11}),
            "affine3": (ManifoldSpec("affine", 3, 5, 1000, 0.01), {3}),
        }
        for name, (base, accepted) in cells.items():
            hits = 0
            for seed in range(5):
                spec = ManifoldSpec(
                    base.generator,
                    base.intrinsic_dim,
                    base.ambient_dim,
                    base.n_points,
                    base.noise,
                    seed,
                )
                rep = edcf_estimate(gen_manifold(spec), cache=cache, seed=seed)
                hits += rep.m_hat in accepted
            assert hits >= 4, f"{name}: {hits}/5"


def test_criterion_08_baseline_estimators():
    with budget(8, 30.0):
        rng = np.random.default_rng(8)
        box = rng.random((5000, 3))
        assert 2.5 <= twonn_estimate(box) <= 3.5
        assert 2.5 <= mle_estimate(box, k=20) <= 3.5
        theta = rng.random(1000) * 2 * np.pi
        circle = np.column_stack([np.cos(theta), np.sin(theta)])
        assert 0.8 <= twonn_estimate(circle) <= 1.3
        assert 0.8 <= mle_estimate(circle, k=20) <= 1.3


def test_criterion_09_fractal_dimension_bands():
    with budget(9, 60.0):
        triangle = box_dimension(gen_ifs("triangle", 100_000, seed=0)).slope
        assert 1.53 <= triangle <= 1.63, triangle
        carpet = box_dimension(gen_ifs("carpet", 1_000_000, seed=0)).slope
        assert 1.84 <= carpet <= 1.94, carpet
        fern = box_dimension(gen_ifs("fern", 1_000_000, seed=0)).slope
        assert 1.70 <= fern <= 1.90, fern


def test_criterion_10_knn_boundary_is_one_dimensional():
    from dimgrid.datagen import gen_circles
    from dimgrid.fractal import boundary_report

    with budget(10, 60.0):
        pts, labels = gen_circles("concentric", n_per_class=10000, seed=3)
        raster = knn_label_grid(pts, labels, k=5, resolution=512)
        rep = boundary_report(extract_boundary(raster))
        assert rep.dcf_dimension == 1
        assert rep.lmu_dimension == 1


def test_criterion_11_property_suite():
    with budget(11, 60.0):
        # nested-spacing IP monotonicity
        for seed in range(50):
            rng = np.random.default_rng(seed)
            X = rng.random((rng.integers(5, 80), rng.integers(1, 4)))
            s = float(rng.uniform(0.01, 0.4))
            factor = int(rng.integers(2, 6))
            assert information_percentage(X, s * factor) <= (
                information_percentage(X, s) + 1e-9
            )

        # hash and pairwise engines agree
        for seed in range(200):
            rng = np.random.default_rng(1000 + seed)
            g = snap_to_grid(
                rng.random((int(rng.integers(2, 50)), int(rng.integers(1, 5)))),
                float(rng.uniform(0.05, 0.5)),
            )
            np.testing.assert_array_equal(
                count_neighbors(g, engine="hash").counts,
                count_neighbors(g, engine="pairwise").counts,
            )

        # membership rows partition interior ramps
        for anchors in (
            theoretical_anchors(4),
            MembershipAnchors(np.array([0.0, 1.7, 9.3, 20.0]), "empirical"),
        ):
            r = anchors.values
            for t in range(len(r) - 1):
                for frac in (0.1, 0.5, 0.9):
                    x = r[t] + frac * (r[t + 1] - r[t])
                    w = membership(float(x), anchors)
                    assert w[t] + w[t + 1] == pytest.approx(1.0)

        # reference anchors are a pure function of the key and seed
        a = generate_reference_model(400, 3, 3, (45.0, 55.0), 0.01, seed=11)
        b = generate_reference_model(400, 3, 3, (45.0, 55.0), 0.01, seed=11)
        np.testing.assert_array_equal(a.anchors.values, b.anchors.values)
