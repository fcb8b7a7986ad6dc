"""File format round trips and failure modes."""

import struct

import numpy as np
import pytest

from gdvkit import LabeledDataset, gdv, gdv_curve
from gdvkit.errors import (
    BadMagic,
    DimensionMismatch,
    MissingLabelColumn,
    NonFiniteValue,
    ParseError,
    TruncatedFile,
    UnsupportedVersion,
)
from gdvkit.io import (
    ActivationArchive,
    load_idx_images,
    load_idx_labels,
    load_idx_pair,
    load_labeled_csv,
    read_activation_archive,
    save_labeled_csv,
    write_activation_archive,
    write_curve_csv,
    write_report_json,
    write_svg_lines,
    write_svg_scatter,
)
from gdvkit.io.reports import read_report_json


class TestLabeledCsv:
    def test_two_row_example(self, tmp_path):
        path = tmp_path / "tiny.csv"
        path.write_text("x0,x1,label\n0,0,0\n1,1,1\n")
        ds = load_labeled_csv(path)
        assert ds.n_points == 2 and ds.n_dims == 2
        assert list(ds.labels) == [0, 1]

    def test_round_trip_exact(self, tmp_path, rng):
        ds = LabeledDataset(rng.normal(size=(20, 3)) * 1e6, rng.integers(0, 4, 20))
        path = tmp_path / "data.csv"
        save_labeled_csv(path, ds)
        back = load_labeled_csv(path)
        np.testing.assert_array_equal(back.points, ds.points)
        np.testing.assert_array_equal(back.labels, ds.labels)

    def test_nan_cell_reports_position(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,x1,label\n0,NaN,0\n1,1,1\n")
        with pytest.raises(NonFiniteValue, match="row 2, column 2"):
            load_labeled_csv(path)

    def test_missing_label_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,x1,y\n0,0,0\n")
        with pytest.raises(MissingLabelColumn):
            load_labeled_csv(path)

    def test_unparseable_cell_reports_position(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,label\nabc,0\n")
        with pytest.raises(ParseError, match="row 2, column 1"):
            load_labeled_csv(path)

    def test_bad_label_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,label\n1.0,zebra\n")
        with pytest.raises(ParseError):
            load_labeled_csv(path)


def _write_idx_images(path, images):
    n, rows, cols = images.shape
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, n, rows, cols))
        f.write(images.astype(np.uint8).tobytes())


def _write_idx_labels(path, labels):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))


class TestIdx:
    def test_images_scaled_and_flattened(self, tmp_path, rng):
        raw = rng.integers(0, 256, size=(5, 4, 3), dtype=np.uint8)
        path = tmp_path / "imgs.idx"
        _write_idx_images(path, raw)
        images = load_idx_images(path)
        assert images.shape == (5, 12)
        np.testing.assert_array_equal(images, raw.reshape(5, 12) / 255.0)

    def test_byte_255_is_exactly_one(self, tmp_path):
        raw = np.full((1, 2, 2), 255, dtype=np.uint8)
        path = tmp_path / "imgs.idx"
        _write_idx_images(path, raw)
        assert load_idx_images(path).max() == 1.0

    def test_labels(self, tmp_path):
        path = tmp_path / "labels.idx"
        _write_idx_labels(path, [3, 1, 4, 1, 5])
        np.testing.assert_array_equal(load_idx_labels(path), [3, 1, 4, 1, 5])

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "junk.idx"
        path.write_bytes(struct.pack(">IIII", 0xDEADBEEF, 1, 2, 2) + b"\x00" * 4)
        with pytest.raises(BadMagic):
            load_idx_images(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "short.idx"
        path.write_bytes(struct.pack(">IIII", 0x00000803, 2, 2, 2) + b"\x00" * 3)
        with pytest.raises(TruncatedFile):
            load_idx_images(path)

    def test_pair_count_mismatch(self, tmp_path, rng):
        imgs = tmp_path / "i.idx"
        labs = tmp_path / "l.idx"
        _write_idx_images(imgs, rng.integers(0, 255, (4, 2, 2), dtype=np.uint8))
        _write_idx_labels(labs, [1, 2, 3])
        with pytest.raises(DimensionMismatch):
            load_idx_pair(imgs, labs)

    def test_pair_loads_dataset(self, tmp_path, rng):
        imgs = tmp_path / "i.idx"
        labs = tmp_path / "l.idx"
        _write_idx_images(imgs, rng.integers(0, 255, (4, 2, 2), dtype=np.uint8))
        _write_idx_labels(labs, [0, 1, 2, 3])
        ds = load_idx_pair(imgs, labs)
        assert ds.n_points == 4 and ds.n_dims == 4


class TestActivationArchive:
    def _random_archive(self, rng):
        return ActivationArchive(
            layers=[
                ("input", rng.normal(size=(10, 4)).astype(np.float32)),
                ("hidden/1", rng.normal(size=(10, 7)).astype(np.float32)),
            ],
            labels=rng.integers(0, 3, 10),
            source="unit-test",
        )

    def test_round_trip_bitwise(self, tmp_path, rng):
        archive = self._random_archive(rng)
        path = tmp_path / "acts.gdva"
        write_activation_archive(path, archive)
        back = read_activation_archive(path)
        assert [lid for lid, _ in back.layers] == ["input", "hidden/1"]
        for (_, a), (_, b) in zip(archive.layers, back.layers):
            np.testing.assert_array_equal(a, b)
            assert b.dtype == np.float32
        np.testing.assert_array_equal(back.labels, archive.labels)
        assert back.source == "unit-test"

    def test_empty_layer_list_valid(self, tmp_path):
        archive = ActivationArchive(layers=[], labels=np.array([0, 1, 1]))
        path = tmp_path / "empty.gdva"
        write_activation_archive(path, archive)
        back = read_activation_archive(path)
        assert back.layers == []
        np.testing.assert_array_equal(back.labels, [0, 1, 1])

    def test_unsupported_version(self, tmp_path):
        path = tmp_path / "v2.gdva"
        path.write_bytes(b"GDVA" + struct.pack("<II", 2, 0) + struct.pack("<I", 0))
        with pytest.raises(UnsupportedVersion):
            read_activation_archive(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.gdva"
        path.write_bytes(b"NOPE" + struct.pack("<II", 1, 0))
        with pytest.raises(BadMagic):
            read_activation_archive(path)

    def test_truncation_detected(self, tmp_path, rng):
        path = tmp_path / "trunc.gdva"
        write_activation_archive(path, self._random_archive(rng))
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) // 2])
        with pytest.raises(TruncatedFile):
            read_activation_archive(path)

    def test_missing_trailer_tolerated(self, tmp_path, rng):
        # files written without the optional provenance trailer still load
        archive = self._random_archive(rng)
        path = tmp_path / "noprov.gdva"
        write_activation_archive(path, archive)
        blob = path.read_bytes()
        src = archive.source.encode()
        path.write_bytes(blob[: len(blob) - 4 - len(src)])
        back = read_activation_archive(path)
        assert back.source == ""
        np.testing.assert_array_equal(back.labels, archive.labels)

    def test_row_count_mismatch_rejected(self, rng):
        with pytest.raises(DimensionMismatch):
            ActivationArchive(
                layers=[("a", rng.normal(size=(5, 2)))], labels=np.arange(4)
            )

    def test_mixed_row_counts_rejected(self, rng):
        with pytest.raises(DimensionMismatch):
            ActivationArchive(
                layers=[
                    ("a", rng.normal(size=(4, 2))),
                    ("b", rng.normal(size=(5, 2))),
                ],
                labels=np.arange(4),
            )


class TestReports:
    def test_report_json_round_trip(self, tmp_path, two_blob_dataset):
        report = gdv(two_blob_dataset)
        path = tmp_path / "report.json"
        write_report_json(path, report)
        doc = read_report_json(path)
        assert doc["schema"] == "gdv-report/1"
        assert doc["gdv"] == report.gdv
        assert doc["intra"]["0"] == report.intra[0]
        assert doc["inter"]["0-1"] == report.inter[(0, 1)]
        assert doc["class_counts"] == {"0": 40, "1": 40}

    def test_curve_csv_with_missing_layer(self, tmp_path, two_blob_dataset):
        dead = two_blob_dataset.with_points(np.zeros_like(two_blob_dataset.points))
        curve = gdv_curve([("in", two_blob_dataset), ("dead", dead)])
        path = tmp_path / "curve.csv"
        write_curve_csv(path, curve)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "layer_index,layer_id,gdv,missing_flag"
        assert lines[1].endswith(",0")
        assert lines[2] == "1,dead,,1"

    def test_scatter_has_one_circle_per_point(self, tmp_path, rng):
        coords = rng.normal(size=(37, 2))
        labels = rng.integers(0, 3, 37)
        path = tmp_path / "scatter.svg"
        write_svg_scatter(path, coords, labels, title="probe")
        text = path.read_text()
        assert text.count("<circle") == 37
        assert text.startswith("<svg")

    def test_lines_with_gap(self, tmp_path):
        path = tmp_path / "curves.svg"
        write_svg_lines(path, [("run", [0.0, -0.2, None, -0.4, -0.5])])
        text = path.read_text()
        assert text.count("<polyline") == 2  # gap splits the line
