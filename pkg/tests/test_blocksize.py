import numpy as np
import pytest

from gbboot import (
    STATUS_NO_SOLUTION,
    STATUS_NON_MONOTONE,
    STATUS_SOLVED,
    VarModel,
    argmin_integer_block_size,
    gbb_mean_cov_exact,
    mean_cov_trace_limit,
    solve_block_size,
    trace_curve,
)


def ar1_series(n: int, seed: int, phi: float = 0.6) -> np.ndarray:
    rng = np.random.default_rng(seed)
    x = np.zeros((n, 1))
    e = rng.standard_normal((n, 1))
    for t in range(1, n):
        x[t] = phi * x[t - 1] + e[t]
    return x


def white_noise_model(long_run_var: float) -> VarModel:
    """Order-1 model with zero coefficients and a chosen long-run variance."""
    return VarModel(
        coeffs=(np.zeros((1, 1)),), innov_cov=np.array([[long_run_var]])
    )


@pytest.fixture(scope="module")
def fixture_series():
    return ar1_series(300, 31)


def boot_trace(x: np.ndarray, b: float) -> float:
    return float(np.trace(gbb_mean_cov_exact(x, b)))


class TestTraceCurve:
    def test_matches_exact_covariance_traces(self, fixture_series):
        grid = [1.5, 2.0, 4.25, 10.0, 33.7]
        curve = trace_curve(fixture_series, grid)
        for b, t in zip(curve.b_values, curve.traces):
            assert t == pytest.approx(boot_trace(fixture_series, b), rel=1e-12)

    def test_csv_layout(self, fixture_series):
        text = trace_curve(fixture_series, [2.0, 3.0]).to_csv()
        lines = text.strip().splitlines()
        assert lines[0] == "b,trace"
        assert len(lines) == 3
        assert float(lines[1].split(",")[0]) == 2.0

    def test_rejects_bad_grids(self, fixture_series):
        with pytest.raises(ValueError):
            trace_curve(fixture_series, [])
        with pytest.raises(ValueError):
            trace_curve(fixture_series, [0.5, 2.0])
        with pytest.raises(ValueError):
            trace_curve(fixture_series, [2.0, 301.0])
        with pytest.raises(ValueError):
            trace_curve(fixture_series, [3.0, 2.0])


class TestSolveBlockSize:
    def test_recovers_self_consistent_block_size(self, fixture_series):
        x = fixture_series
        b0 = 7.3
        m = white_noise_model(300 * boot_trace(x, b0))
        report = solve_block_size(x, m)
        assert report.status == STATUS_SOLVED
        assert report.b_hat == pytest.approx(b0, abs=0.01)
        assert abs(report.achieved - report.target) <= 1e-4 * report.target
        assert report.iterations <= 60
        lo, hi = report.bracket
        assert lo <= report.b_hat <= hi

    def test_target_is_model_trace_over_length(self, fixture_series):
        m = white_noise_model(300 * boot_trace(fixture_series, 5.0))
        report = solve_block_size(fixture_series, m)
        assert report.target == pytest.approx(mean_cov_trace_limit(m) / 300)

    def test_touching_grid_point_solves_without_bisection(self, fixture_series):
        m = white_noise_model(300 * boot_trace(fixture_series, 2.001))
        report = solve_block_size(fixture_series, m)
        assert report.status == STATUS_SOLVED
        assert report.b_hat == pytest.approx(2.001)
        assert report.iterations == 0

    def test_unreachable_targets_report_no_solution(self, fixture_series):
        x = fixture_series
        curve = trace_curve(x, np.arange(1.001, 75.0, 0.5))
        high = white_noise_model(300 * curve.traces.max() * 3.0)
        low = white_noise_model(300 * curve.traces.min() * 0.3)
        for m in (high, low):
            report = solve_block_size(x, m)
            assert report.status == STATUS_NO_SOLUTION
            assert report.b_hat is None
            assert report.iterations == 0

    def test_no_solution_reports_closest_achievable_trace(self, fixture_series):
        x = fixture_series
        curve = trace_curve(x, np.arange(1.001, 75.0, 0.5))
        m = white_noise_model(300 * curve.traces.max() * 3.0)
        report = solve_block_size(x, m)
        assert report.achieved == pytest.approx(curve.traces.max(), rel=1e-6)

    def test_multiple_crossings_warn_and_return_smallest_root(self, fixture_series):
        x = fixture_series
        grid = np.arange(1.001, 75.0, 0.5)
        tr = trace_curve(x, grid).traces

        def crossings(level):
            s = np.sign(tr - level)
            return [
                i
                for i in range(len(s) - 1)
                if s[i] != 0 and s[i + 1] != 0 and s[i] != s[i + 1]
            ]

        level = next(
            0.5 * (tr[i] + tr[i + 1])
            for i in range(len(tr) - 1)
            if len(crossings(0.5 * (tr[i] + tr[i + 1]))) >= 2
        )
        report = solve_block_size(x, white_noise_model(300 * level))
        assert report.status == STATUS_NON_MONOTONE
        first = crossings(level)[0]
        assert grid[first] <= report.b_hat <= grid[first + 1]
        assert abs(report.achieved - report.target) <= 1e-4 * report.target

    def test_deterministic(self, fixture_series):
        m = white_noise_model(300 * boot_trace(fixture_series, 7.3))
        a = solve_block_size(fixture_series, m)
        b = solve_block_size(fixture_series, m)
        assert a == b

    def test_respects_explicit_range(self, fixture_series):
        x = fixture_series
        b0 = 7.3
        m = white_noise_model(300 * boot_trace(x, b0))
        report = solve_block_size(x, m, b_range=(10.0, 40.0))
        # the root at 7.3 lies outside the range, so nothing is found there
        assert report.status in (STATUS_NO_SOLUTION, STATUS_NON_MONOTONE)

    def test_tighter_tolerance_takes_more_iterations(self, fixture_series):
        x = fixture_series
        m = white_noise_model(300 * boot_trace(x, 7.3))
        loose = solve_block_size(x, m, tol=1e-2)
        tight = solve_block_size(x, m, tol=1e-6)
        assert tight.iterations >= loose.iterations
        assert abs(tight.achieved - tight.target) <= 1e-6 * tight.target

    def test_validation(self, fixture_series):
        m = white_noise_model(1.0)
        with pytest.raises(ValueError):
            solve_block_size(fixture_series, m, tol=0.0)
        with pytest.raises(ValueError):
            solve_block_size(fixture_series, m, b_range=(0.5, 10.0))
        with pytest.raises(ValueError):
            solve_block_size(fixture_series, m, b_range=(10.0, 5.0))
        with pytest.raises(ValueError):
            solve_block_size(fixture_series, m, b_range=(2.0, 400.0))

    def test_report_round_trips_to_dict(self, fixture_series):
        m = white_noise_model(300 * boot_trace(fixture_series, 7.3))
        d = solve_block_size(fixture_series, m).to_dict()
        assert set(d) == {
            "b_hat", "target", "achieved", "iterations", "bracket", "status",
        }
        assert d["status"] == STATUS_SOLVED


class TestArgminIntegerBlockSize:
    def test_recovers_exact_integer_target(self, fixture_series):
        m = white_noise_model(300 * boot_trace(fixture_series, 7.0))
        assert argmin_integer_block_size(fixture_series, m, 20) == 7

    def test_matches_independent_scan(self, fixture_series):
        x = fixture_series
        m = white_noise_model(300 * boot_trace(x, 5.6))
        target = mean_cov_trace_limit(m) / 300
        errs = [abs(boot_trace(x, float(b)) - target) for b in range(1, 13)]
        assert argmin_integer_block_size(x, m, 12) == 1 + int(np.argmin(errs))

    def test_single_candidate(self, fixture_series):
        m = white_noise_model(1.0)
        assert argmin_integer_block_size(fixture_series, m, 1) == 1

    def test_validation(self, fixture_series):
        m = white_noise_model(1.0)
        with pytest.raises(ValueError):
            argmin_integer_block_size(fixture_series, m, 0)
        with pytest.raises(ValueError):
            argmin_integer_block_size(fixture_series, m, 301)
