import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dimgrid.errors import DegenerateFit, SingleClass
from dimgrid.fractal import (
    LabelRaster,
    boundary_report,
    box_dimension,
    extract_boundary,
    knn_label_grid,
)


def test_box_dimension_filled_square(rng):
    pts = rng.random((100_000, 2))
    res = box_dimension(pts)
    assert 1.9 <= res.slope <= 2.05


def test_box_dimension_segment():
    t = np.linspace(0.0, 1.0, 50_000)
    res = box_dimension(np.column_stack([t, np.full_like(t, 0.5)]))
    assert 0.95 <= res.slope <= 1.05


def test_box_dimension_degenerate():
    with pytest.raises(DegenerateFit):
        box_dimension(np.tile([[0.5, 0.5]], (10, 1)))


def test_box_counts_ignore_duplicates_and_order(rng):
    pts = rng.random((5000, 2))
    res1 = box_dimension(pts)
    res2 = box_dimension(np.vstack([pts, pts[:100]])[rng.permutation(5100)])
    np.testing.assert_array_equal(res1.counts, res2.counts)
    assert res1.slope == pytest.approx(res2.slope)


def test_knn_bisector_partition():
    train = np.array([[0.0, 0.5], [1.0, 0.5]])
    raster = knn_label_grid(train, np.array([1, 2]), k=1, resolution=64)
    xs = raster.cell_centers(np.ones_like(raster.labels, dtype=bool))
    left = raster.labels[xs[:, 0].reshape(64, 64) < 0.5]
    right = raster.labels[xs[:, 0].reshape(64, 64) > 0.5]
    assert np.all(left == 1)
    assert np.all(right == 2)


def test_knn_k_exceeding_train_votes_globally():
    train = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0]])
    raster = knn_label_grid(train, np.array([2, 2, 1]), k=50, resolution=8)
    assert np.all(raster.labels == 2)


def test_knn_global_tie_takes_smallest_label():
    train = np.array([[0.0, 0.0], [1.0, 1.0]])
    raster = knn_label_grid(train, np.array([4, 3]), k=2, resolution=8)
    assert np.all(raster.labels == 3)


def test_extract_vertical_split_two_columns():
    labels = np.ones((16, 16), dtype=int)
    labels[:, 8:] = 2
    raster = LabelRaster(labels=labels, extent=(0.0, 1.0, 0.0, 1.0))
    boundary = extract_boundary(raster)
    assert boundary.shape == (32, 2)
    cols = np.unique(np.round(boundary[:, 0], 6))
    assert len(cols) == 2


def test_extract_checkerboard_everything():
    ii, jj = np.meshgrid(np.arange(8), np.arange(8), indexing="ij")
    raster = LabelRaster(labels=(ii + jj) % 2, extent=(0.0, 1.0, 0.0, 1.0))
    assert extract_boundary(raster).shape == (64, 2)


def test_extract_uniform_raises():
    raster = LabelRaster(labels=np.ones((8, 8), dtype=int), extent=(0, 1, 0, 1))
    with pytest.raises(SingleClass):
        extract_boundary(raster)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_extract_symmetric_under_label_swap(seed):
    rng = np.random.default_rng(seed)
    labels = rng.integers(1, 3, size=(12, 12))
    if len(np.unique(labels)) < 2:
        return
    raster = LabelRaster(labels=labels, extent=(0.0, 1.0, 0.0, 1.0))
    swapped = LabelRaster(labels=3 - labels, extent=(0.0, 1.0, 0.0, 1.0))
    a = extract_boundary(raster)
    b = extract_boundary(swapped)
    np.testing.assert_array_equal(a, b)


def test_boundary_report_dense_line():
    i = np.arange(1250)
    x = (i + 0.5) / 1250
    rep = boundary_report(np.column_stack([x, 0.1 * x + 0.2]))
    assert rep.dcf_dimension == 1
    assert rep.lmu_dimension == 1
    assert rep.weights[1] > 0.9


def test_boundary_report_square_perimeter():
    res = 512
    xs = np.linspace(0, 1, res, endpoint=False) + 0.5 / res
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    inside = (np.abs(X - 0.5) < 0.39) & (np.abs(Y - 0.5) < 0.39)
    raster = LabelRaster(labels=np.where(inside, 1, 2), extent=(0, 1, 0, 1))
    rep = boundary_report(extract_boundary(raster))
    assert rep.dcf_dimension == 1
    assert rep.lmu_dimension == 1


def test_boundary_report_object_dimensions(rng):
    square = rng.random((20_000, 2))
    i = np.arange(1250)
    x = (i + 0.5) / 1250
    rep = boundary_report(np.column_stack([x, 0.1 * x + 0.2]), objects=[square])
    assert len(rep.object_dimensions) == 1
    assert 1.8 <= rep.object_dimensions[0] <= 2.05
    d = rep.to_dict()
    assert d["dcf_dimension"] == 1
    assert len(d["weights"]) == 3
