import numpy as np
import pytest

from gbboot import as_series, circular_index, sample_autocov, sample_mean


class TestAsSeries:
    def test_promotes_one_dimensional_input(self):
        x = as_series([1.0, 2.0, 3.0])
        assert x.shape == (3, 1)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            as_series(np.empty((0, 2)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            as_series([[1.0, np.nan]])
        with pytest.raises(ValueError):
            as_series([[np.inf, 0.0]])

    def test_rejects_three_dimensional(self):
        with pytest.raises(ValueError):
            as_series(np.zeros((2, 2, 2)))


class TestSampleMean:
    def test_two_point_mean(self):
        assert np.array_equal(sample_mean([[1.0, 3.0], [3.0, 5.0]]), [2.0, 4.0])

    def test_constant_series(self):
        x = np.full((7, 3), 2.5)
        assert np.array_equal(sample_mean(x), [2.5, 2.5, 2.5])


class TestCircularIndex:
    def test_in_range(self):
        x = np.arange(10.0).reshape(5, 2)
        assert np.array_equal(circular_index(x, 3), x[2])

    def test_wraps_past_end(self):
        x = np.arange(10.0).reshape(5, 2)
        assert np.array_equal(circular_index(x, 6), x[0])
        assert np.array_equal(circular_index(x, 12), x[1])

    def test_periodicity_exhaustive(self):
        x = np.arange(8.0).reshape(4, 2)
        for t in range(1, 13):
            assert np.array_equal(circular_index(x, t), circular_index(x, t + 4))

    def test_rejects_nonpositive_position(self):
        x = np.zeros((3, 1))
        with pytest.raises(ValueError):
            circular_index(x, 0)


class TestSampleAutocov:
    def test_lag_zero_divisor_n(self):
        x = np.array([[1.0], [2.0], [4.0]])
        xc = x - x.mean()
        expected = float(xc[:, 0] @ xc[:, 0]) / 3.0
        assert sample_autocov(x, 0)[0, 0] == pytest.approx(expected, rel=1e-14)

    def test_lag_zero_symmetric_psd(self):
        rng = np.random.default_rng(5)
        x = rng.standard_normal((40, 3))
        g0 = sample_autocov(x, 0)
        assert np.allclose(g0, g0.T)
        assert np.all(np.linalg.eigvalsh(g0) >= -1e-12)

    def test_iid_noise_lag_one_small(self):
        rng = np.random.default_rng(11)
        n = 100_000
        x = rng.standard_normal((n, 2))
        g1 = sample_autocov(x, 1)
        assert np.all(np.abs(g1) < 5.0 / np.sqrt(n))

    def test_invalid_lag(self):
        x = np.zeros((4, 1)) + np.arange(4).reshape(4, 1)
        with pytest.raises(ValueError):
            sample_autocov(x, -1)
        with pytest.raises(ValueError):
            sample_autocov(x, 4)

    def test_column_relabeling_consistency(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal((60, 2))
        g = sample_autocov(x, 2)
        g_swapped = sample_autocov(x[:, ::-1], 2)
        assert np.allclose(g_swapped, g[[1, 0]][:, [1, 0]])
