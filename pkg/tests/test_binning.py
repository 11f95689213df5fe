import numpy as np
import pytest

from rangesets.binning import (
    DEFAULT_COLORS,
    DEFAULT_LABELS,
    AttributeSpec,
    bin_assign,
    categorize,
)


def brute_force_bins(values, lo, hi, k):
    """Interval-membership oracle for the clamped equidistant binning."""
    w = (hi - lo) / k
    edges = [lo + i * w for i in range(k + 1)]
    edges[-1] = hi
    out = []
    for v in values:
        if v < lo:
            out.append(0)
        elif v >= hi:
            out.append(k - 1)
        else:
            b = next(i for i in range(k) if edges[i] <= v < edges[i + 1])
            out.append(b)
    return out


class TestAttributeSpec:
    def test_five_bin_defaults(self):
        spec = AttributeSpec(name="a", data_min=0, data_max=1)
        assert spec.labels == DEFAULT_LABELS
        assert spec.colors == DEFAULT_COLORS

    def test_other_bin_counts_get_generic_labels(self):
        spec = AttributeSpec(name="a", data_min=0, data_max=1, bin_count=3)
        assert spec.labels == ("bin 1", "bin 2", "bin 3")
        assert len(spec.colors) == 3

    def test_invalid_range(self):
        with pytest.raises(ValueError):
            AttributeSpec(name="a", data_min=2.0, data_max=2.0)

    def test_invalid_bin_count(self):
        with pytest.raises(ValueError):
            AttributeSpec(name="a", data_min=0, data_max=1, bin_count=0)

    def test_equidistant_edges(self):
        spec = AttributeSpec(name="a", user_range=(3.0, 17.0), bin_count=7)
        widths = np.diff(spec.bin_edges())
        w = (17.0 - 3.0) / 7
        assert np.abs(widths - w).max() <= 4 * np.finfo(float).eps * 17.0


class TestBinAssign:
    def test_interior_value(self):
        spec = AttributeSpec(name="a", user_range=(0, 10))
        assert bin_assign([4.2], spec).bin_index.tolist() == [2]

    def test_top_bin_closed(self):
        spec = AttributeSpec(name="a", user_range=(0, 10))
        b = bin_assign([10.0], spec)
        assert b.bin_index.tolist() == [4]
        assert len(b.above_range) == 0

    def test_clamping_below(self):
        spec = AttributeSpec(name="a", user_range=(12, 14))
        b = bin_assign([11.0], spec)
        assert b.bin_index.tolist() == [0]
        assert b.below_range.tolist() == [0]

    def test_clamping_above(self):
        spec = AttributeSpec(name="a", user_range=(12, 14))
        b = bin_assign([14.5], spec)
        assert b.bin_index.tolist() == [4]
        assert b.above_range.tolist() == [0]

    def test_missing_excluded(self):
        spec = AttributeSpec(name="a", user_range=(0, 10))
        b = bin_assign([1.0, np.nan, 9.0], spec)
        assert b.bin_index.tolist() == [0, -1, 4]
        assert b.missing.tolist() == [1]
        assert int(b.histogram.sum()) == 2

    def test_histogram_sums_to_n(self, rng):
        spec = AttributeSpec(name="a", user_range=(0, 1))
        values = rng.uniform(-0.5, 1.5, size=500)
        b = bin_assign(values, spec)
        assert int(b.histogram.sum()) == 500

    def test_matches_brute_force_oracle(self, rng):
        for _ in range(30):
            k = int(rng.integers(1, 9))
            lo = float(rng.uniform(-5, 5))
            hi = lo + float(rng.uniform(0.1, 10))
            spec = AttributeSpec(name="a", user_range=(lo, hi), bin_count=k)
            values = rng.uniform(lo - 1, hi + 1, size=200)
            got = bin_assign(values, spec).bin_index.tolist()
            assert got == brute_force_bins(values, lo, hi, k)

    def test_boundary_values_exact(self):
        spec = AttributeSpec(name="a", user_range=(0, 10), bin_count=5)
        edges = spec.bin_edges()
        b = bin_assign(edges, spec)
        # each internal edge opens its own bin; hi closes the last bin
        assert b.bin_index.tolist() == [0, 1, 2, 3, 4, 4]

    def test_rebinning_preserves_relative_order(self, rng):
        values = rng.uniform(0, 10, size=100)
        wide = bin_assign(values, AttributeSpec(name="a", user_range=(0, 10)))
        narrow = bin_assign(values, AttributeSpec(name="a", user_range=(2, 8)))
        for i in range(100):
            for j in range(100):
                if wide.bin_index[i] < wide.bin_index[j]:
                    assert narrow.bin_index[i] <= narrow.bin_index[j]

    def test_per_bin_outlier_counts_are_a_new_version(self):
        spec = AttributeSpec(name="a", user_range=(0, 10))
        b = bin_assign([1.0, 5.0], spec)
        assert b.outlier_counts is None
        b2 = b.with_outlier_counts([1, 0, 0, 0, 0])
        assert b.outlier_counts is None
        assert b2.outlier_counts.tolist() == [1, 0, 0, 0, 0]


class TestCategorize:
    def test_first_appearance_order(self):
        b = categorize(["a", "b", "a"])
        assert b.categories == ("a", "b")
        assert b.member_ids(0).tolist() == [0, 2]
        assert b.member_ids(1).tolist() == [1]

    def test_seven_classes(self):
        values = [f"type_{i % 7}" for i in range(70)]
        b = categorize(values)
        assert b.bin_count == 7
        assert b.histogram.tolist() == [10] * 7

    def test_twenty_classes(self):
        values = [f"class_{i % 20}" for i in range(200)]
        b = categorize(values)
        assert b.bin_count == 20
        assert len(b.spec.colors) == 20

    def test_missing_keys(self):
        b = categorize(["x", None, "", "y"])
        assert b.categories == ("x", "y")
        assert b.missing.tolist() == [1, 2]
