import numpy as np
import pytest

from gbboot import (
    PseudoSample,
    block_size,
    cvm_statistic,
    cvm_statistic_grid,
    empirical_copula,
    homogeneity_test,
    pseudo_observations,
)


def dependent_pair(n: int, rho: float, rng) -> np.ndarray:
    z = rng.standard_normal((n, 1))
    w = rho * z + np.sqrt(1.0 - rho * rho) * rng.standard_normal((n, 1))
    return np.hstack([z, w])


class TestPseudoObservations:
    def test_hand_ranks(self):
        ps = pseudo_observations([3.0, 1.0, 4.0, 2.0])
        assert ps.u[:, 0].tolist() == [0.6, 0.2, 0.8, 0.4]

    def test_ties_get_midranks(self):
        ps = pseudo_observations([1.0, 1.0, 2.0])
        assert ps.u[:, 0] == pytest.approx([1.5 / 4, 1.5 / 4, 3 / 4])

    def test_invariant_under_monotone_transforms(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((40, 2))
        a = pseudo_observations(x).u
        b = pseudo_observations(np.exp(x)).u
        assert np.array_equal(a, b)

    def test_columns_ranked_independently(self):
        ps = pseudo_observations([[1.0, 9.0], [2.0, 8.0]])
        assert ps.u.tolist() == [[1 / 3, 2 / 3], [2 / 3, 1 / 3]]

    def test_validation(self):
        with pytest.raises(ValueError):
            PseudoSample(u=np.array([[0.0, 0.5]]))
        with pytest.raises(ValueError):
            PseudoSample(u=np.array([[0.5, 1.0]]))
        with pytest.raises(ValueError):
            PseudoSample(u=np.array([0.5, 0.5]))


class TestEmpiricalCopula:
    def test_hand_fractions(self):
        ps = PseudoSample(u=np.array([[0.2, 0.4], [0.6, 0.8]]))
        assert empirical_copula(ps, [0.5, 0.5]) == 0.5
        assert empirical_copula(ps, [1.0, 1.0]) == 1.0
        assert empirical_copula(ps, [0.1, 0.9]) == 0.0

    def test_validation(self):
        ps = PseudoSample(u=np.array([[0.2, 0.4]]))
        with pytest.raises(ValueError):
            empirical_copula(ps, [0.5])
        with pytest.raises(ValueError):
            empirical_copula(ps, [0.5, 1.5])


class TestCvmStatistic:
    def test_identical_samples_give_exact_zero(self):
        rng = np.random.default_rng(5)
        ps = pseudo_observations(rng.standard_normal((25, 3)))
        assert cvm_statistic(ps, ps) == 0.0

    def test_hand_value_concordant_versus_discordant(self):
        u = pseudo_observations([[1.0, 1.0], [2.0, 2.0]])
        v = pseudo_observations([[1.0, 2.0], [2.0, 1.0]])
        assert cvm_statistic(u, v) == pytest.approx(1.0 / 36.0, abs=1e-12)

    def test_symmetric_in_the_two_samples(self):
        rng = np.random.default_rng(6)
        u = pseudo_observations(rng.standard_normal((20, 2)))
        v = pseudo_observations(rng.standard_normal((30, 2)))
        assert cvm_statistic(u, v) == pytest.approx(cvm_statistic(v, u), rel=1e-12)

    def test_nonnegative(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            u = pseudo_observations(rng.standard_normal((15, 2)))
            v = pseudo_observations(rng.standard_normal((15, 2)))
            assert cvm_statistic(u, v) >= 0.0

    def test_dimension_mismatch(self):
        u = pseudo_observations(np.random.default_rng(0).standard_normal((10, 2)))
        v = pseudo_observations(np.random.default_rng(0).standard_normal((10, 3)))
        with pytest.raises(ValueError):
            cvm_statistic(u, v)


class TestCvmStatisticGrid:
    def test_converges_to_closed_form(self):
        rng = np.random.default_rng(77)
        u = pseudo_observations(rng.standard_normal((30, 2)))
        v = pseudo_observations(dependent_pair(30, 0.8, rng))
        closed = cvm_statistic(u, v)
        errs = [
            abs(cvm_statistic_grid(u, v, step) - closed) / closed
            for step in (1 / 50, 1 / 100, 1 / 200)
        ]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 0.03

    def test_one_dimensional_case(self):
        u = pseudo_observations([1.0, 2.0, 3.0])
        v = pseudo_observations([1.0, 2.0, 4.0])
        closed = cvm_statistic(u, v)
        grid = cvm_statistic_grid(u, v, 1 / 2000)
        assert grid == pytest.approx(closed, rel=0.02)

    def test_validation(self):
        u = pseudo_observations([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            cvm_statistic_grid(u, u, 0.0)
        with pytest.raises(ValueError):
            cvm_statistic_grid(u, u, 1.0)


class TestHomogeneityTest:
    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(8)
        first = dependent_pair(60, 0.5, rng)
        second = rng.standard_normal((60, 2))
        a = homogeneity_test(first, second, b=3.2, reps=99, seed=11)
        b = homogeneity_test(first, second, b=3.2, reps=99, seed=11)
        assert a.s_obs == b.s_obs
        assert np.array_equal(a.replicates, b.replicates)
        assert a.p_value == b.p_value

    def test_threaded_equals_serial(self):
        rng = np.random.default_rng(9)
        first = dependent_pair(50, 0.4, rng)
        second = rng.standard_normal((50, 2))
        serial = homogeneity_test(first, second, b=2.5, reps=120, seed=3, threads=1)
        pooled = homogeneity_test(first, second, b=2.5, reps=120, seed=3, threads=3)
        assert np.array_equal(serial.replicates, pooled.replicates)
        assert serial.p_value == pooled.p_value

    def test_identical_samples_give_p_one(self):
        rng = np.random.default_rng(10)
        same = rng.standard_normal((50, 2))
        report = homogeneity_test(same, same, b=2.5, reps=99, seed=1)
        assert report.s_obs == 0.0
        assert report.p_value == 1.0

    def test_detects_clearly_different_copulas(self):
        rng = np.random.default_rng(77)
        first = dependent_pair(200, 0.9, rng)
        second = rng.standard_normal((200, 2))
        report = homogeneity_test(first, second, b=1.0, reps=199, seed=5)
        assert report.p_value == pytest.approx(1.0 / 200.0)
        assert report.s_obs > report.replicates.max()

    def test_p_value_bounds_and_replicate_count(self):
        rng = np.random.default_rng(12)
        first = rng.standard_normal((40, 2))
        second = rng.standard_normal((40, 2))
        report = homogeneity_test(first, second, b=2.0, reps=99, seed=0)
        assert 1.0 / 100.0 <= report.p_value <= 1.0
        assert report.replicates.shape == (99,)
        assert np.all(report.replicates >= 0.0)

    def test_accepts_block_size_object(self):
        rng = np.random.default_rng(13)
        first = rng.standard_normal((30, 2))
        second = rng.standard_normal((30, 2))
        bs = block_size(2.7)
        report = homogeneity_test(first, second, b=bs, reps=99, seed=2)
        assert report.b_used == 2.7

    def test_report_summaries(self):
        rng = np.random.default_rng(14)
        first = rng.standard_normal((30, 2))
        second = rng.standard_normal((30, 2))
        report = homogeneity_test(first, second, b=2.0, reps=99, seed=4)
        s = report.replicates_summary()
        assert s["min"] <= s["q1"] <= s["median"] <= s["q3"] <= s["max"]
        d = report.to_dict()
        assert set(d) == {"s_obs", "p_value", "reps", "b_used", "replicates_summary"}
        lines = report.replicates_csv().strip().splitlines()
        assert lines[0] == "replicate"
        assert len(lines) == 100

    def test_validation(self):
        rng = np.random.default_rng(15)
        first = rng.standard_normal((30, 2))
        second = rng.standard_normal((30, 3))
        with pytest.raises(ValueError):
            homogeneity_test(first, second, b=2.0, reps=99, seed=0)
        second = rng.standard_normal((30, 2))
        with pytest.raises(ValueError):
            homogeneity_test(first, second, b=2.0, reps=98, seed=0)
        with pytest.raises(ValueError):
            homogeneity_test(first, second, b=2.0, reps=99, seed=0, threads=0)
