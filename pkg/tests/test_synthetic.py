"""Cluster generators: determinism, distribution sanity, embeddings."""

import numpy as np
import pytest

from gdvkit import (
    ClusterSpec,
    EnsembleConfig,
    embed_duplicate_y,
    embed_replicate,
    gdv,
    generate_clusters,
    generate_ensemble,
    two_cluster_separation_probe,
    two_cluster_spec,
)
from gdvkit.errors import InvalidSpec, WrongDimension


class TestGenerateClusters:
    def test_fig_style_values(self):
        # reference configuration: well separated vs overlapping blobs
        sep = gdv(generate_clusters(two_cluster_spec(0.2, seed=42))).gdv
        assert sep == pytest.approx(-0.72, abs=0.03)
        overlap = gdv(generate_clusters(two_cluster_spec(1.0, seed=42))).gdv
        assert overlap == pytest.approx(-0.14, abs=0.04)

    def test_shapes_and_labels(self):
        ds = generate_clusters(two_cluster_spec(0.2, n_per_class=500))
        assert ds.n_points == 1000 and ds.n_dims == 2
        assert list(np.bincount(ds.labels)) == [500, 500]

    def test_zero_sigma_hits_centers(self):
        spec = ClusterSpec(centers=[[1.0, 2.0], [3.0, 4.0]], sigmas=0.0,
                           points_per_class=3, seed=1)
        ds = generate_clusters(spec)
        np.testing.assert_array_equal(ds.points[:3], np.tile([1.0, 2.0], (3, 1)))
        np.testing.assert_array_equal(ds.points[3:], np.tile([3.0, 4.0], (3, 1)))

    def test_deterministic_per_seed(self):
        spec = two_cluster_spec(0.2, seed=42)
        a = generate_clusters(spec)
        b = generate_clusters(two_cluster_spec(0.2, seed=42))
        np.testing.assert_array_equal(a.points, b.points)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_empirical_center_within_3_sigma(self):
        spec = ClusterSpec(centers=[[2.0, -1.0]], sigmas=0.5,
                           points_per_class=4000, seed=3)
        ds = generate_clusters(spec)
        bound = 3 * 0.5 / np.sqrt(4000)
        assert np.all(np.abs(ds.points.mean(axis=0) - [2.0, -1.0]) < bound)

    def test_invalid_specs_rejected(self):
        with pytest.raises(InvalidSpec):
            ClusterSpec(centers=[[0.0]], sigmas=-1.0, points_per_class=2)
        with pytest.raises(InvalidSpec):
            ClusterSpec(centers=[[0.0]], sigmas=1.0, points_per_class=0)
        with pytest.raises(InvalidSpec):
            ClusterSpec(centers=[[0.0], [1.0]], sigmas=1.0, points_per_class=[2])


class TestEmbeddings:
    def test_duplicate_y_coordinates(self):
        ds = generate_clusters(two_cluster_spec(0.2, n_per_class=5))
        out = embed_duplicate_y(ds)
        assert out.n_dims == 3
        np.testing.assert_array_equal(out.points[:, 1], out.points[:, 2])
        np.testing.assert_array_equal(out.points[:, :2], ds.points)
        np.testing.assert_array_equal(out.labels, ds.labels)

    def test_duplicate_y_single_point_example(self):
        ds = embed_duplicate_y(
            generate_clusters(
                ClusterSpec(centers=[[1.0, 2.0], [1.0, 2.0]], sigmas=0.0,
                            points_per_class=1, seed=0)
            )
        )
        np.testing.assert_array_equal(ds.points[0], [1.0, 2.0, 2.0])

    def test_duplicate_y_requires_2d(self):
        from gdvkit import LabeledDataset

        with pytest.raises(WrongDimension):
            embed_duplicate_y(LabeledDataset([[0.0], [1.0]], [0, 1]))

    def test_duplicate_y_gdv_nearly_unchanged(self):
        ds = generate_clusters(two_cluster_spec(0.2, seed=42))
        before = gdv(ds).gdv
        after = gdv(embed_duplicate_y(ds)).gdv
        assert abs(after - before) < 0.02

    def test_full_duplication_exact(self):
        ds = generate_clusters(two_cluster_spec(0.2, seed=42))
        doubled = embed_replicate(ds, 4)
        assert gdv(doubled).gdv == pytest.approx(gdv(ds).gdv, abs=1e-9)

    def test_replication_sweep_flat(self):
        ds = generate_clusters(two_cluster_spec(0.2, seed=42))
        base = gdv(ds).gdv
        for target in range(3, 21):
            value = gdv(embed_replicate(ds, target)).gdv
            assert abs(value - base) < 0.02


class TestEnsemble:
    def test_member_shapes_respect_config(self):
        cfg = EnsembleConfig(n_datasets=1, dim_range=(2, 2), class_range=(2, 2),
                             points_range=(5, 5), seed=0)
        item = next(iter(generate_ensemble(cfg)))
        assert item.data.n_dims == 2
        assert len(item.data.classes) == 2
        assert not item.has_small_class

    def test_singleton_classes_flagged(self):
        cfg = EnsembleConfig(n_datasets=3, points_range=(1, 1), seed=0)
        for item in generate_ensemble(cfg):
            assert item.has_small_class

    def test_deterministic_stream(self):
        cfg = EnsembleConfig(n_datasets=4, seed=11)
        a = [item.data.points for item in generate_ensemble(cfg)]
        b = [item.data.points for item in generate_ensemble(cfg)]
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x, y)

    def test_member_reproducible_without_predecessors(self):
        cfg = EnsembleConfig(n_datasets=5, seed=11)
        third = [item for item in generate_ensemble(cfg)][3]
        # regenerating the stream reaches the same member independently
        again = [item for item in generate_ensemble(cfg) if item.index == 3][0]
        np.testing.assert_array_equal(third.data.points, again.data.points)

    def test_invalid_config_rejected(self):
        with pytest.raises(InvalidSpec):
            EnsembleConfig(n_datasets=0)
        with pytest.raises(InvalidSpec):
            EnsembleConfig(n_datasets=1, dim_range=(5, 2))


class TestSeparationProbe:
    def test_deterministic(self):
        a = two_cluster_separation_probe(2.0, dim=2, n_per_class=500, seed=5)
        b = two_cluster_separation_probe(2.0, dim=2, n_per_class=500, seed=5)
        assert a == b

    def test_center_mode_value_far_from_minus_one(self):
        # measured outcome: raw-space 2-sigma separation is nowhere near -1
        value = two_cluster_separation_probe(2.0, dim=2, n_per_class=2000, seed=0)
        assert -0.30 < value < -0.10

    def test_pairwise_mode_value(self):
        value = two_cluster_separation_probe(
            2.0, dim=2, n_per_class=2000, seed=0, mode="pairwise"
        )
        assert -0.15 < value < -0.02

    def test_pairwise_mode_unreachable_in_high_dim(self):
        with pytest.raises(InvalidSpec):
            two_cluster_separation_probe(2.0, dim=50, n_per_class=200, mode="pairwise")
