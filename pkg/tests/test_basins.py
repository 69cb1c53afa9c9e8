import mixnewpy as mp
import numpy as np
import pytest


def rmnm(gamma=1e-3, max_iters=10 ** 6):
    stop = mp.StopCriteria(grad_tol=1e-12, max_iters=max_iters)
    return mp.SolverConfig("rmnm", penalty=mp.PenaltyParams(gamma), stop=stop)


class TestGrid:
    def test_first_and_last_points(self):
        pts = mp.grid((-1, 2), 625)
        assert pts.shape == (625, 2)
        np.testing.assert_allclose(pts[0], [-1, -1])
        np.testing.assert_allclose(pts[-1], [2, 2])

    def test_ordering(self):
        pts = mp.grid((0, 1), 4)
        np.testing.assert_allclose(pts, [[0, 0], [0, 1], [1, 0], [1, 1]])

    def test_imaginary_offset(self):
        pts = mp.grid((-1, 2), 49, 1j)
        assert pts.shape == (49, 2)
        np.testing.assert_allclose(pts.imag, 1.0)
        np.testing.assert_allclose(pts[0].real, [-1, -1])

    def test_half_open_layout(self):
        pts = mp.grid((0, 1), 4, layout="half_open")
        np.testing.assert_allclose(pts, [[0, 0], [0, 0.5], [0.5, 0], [0.5, 0.5]])

    def test_centered_layout(self):
        pts = mp.grid((-1, 2), 625, layout="centered")
        np.testing.assert_allclose(pts[0].real, [-0.94, -0.94])
        np.testing.assert_allclose(pts[-1].real, [1.94, 1.94])

    def test_unknown_layout_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.grid((0, 1), 4, layout="random")

    def test_large_grid(self):
        assert mp.grid((-3, 2), 2601).shape == (2601, 2)

    def test_non_square_count_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.grid((-1, 2), 624)

    def test_empty_square_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.grid((2, -1), 4)


class TestTableReport:
    def test_empty_report_is_header_only(self):
        report = mp.table_report([])
        assert report.to_csv() == ",".join(mp.TABLE_COLUMNS) + "\n"
        assert len(report.to_text().splitlines()) == 1

    def test_rows(self):
        a = mp.BasinResult(1, "rmnm_repulsive", 1e-3)
        b = mp.BasinResult(3, "onm", None)
        report = mp.table_report([a, b])
        lines = report.to_csv().splitlines()
        assert len(lines) == 3
        assert lines[1] == "1,rmnm_repulsive,0.001,0,0,0,0,0,0"
        assert lines[2].startswith("3,onm,,")


class TestBasinResult:
    def test_counts(self):
        outcomes = [
            mp.StartOutcome(0, np.zeros(2), "converged", np.zeros(2), 10, "global"),
            mp.StartOutcome(1, np.zeros(2), "converged", np.ones(2), 12, "saddle"),
            mp.StartOutcome(2, np.zeros(2), "diverged", np.ones(2), 3),
            mp.StartOutcome(3, np.zeros(2), "max_iters", np.ones(2), 100),
        ]
        result = mp.BasinResult(2, "onm", None, outcomes)
        assert result.starts == 4
        assert result.counts == {"global": 1, "local_1": 0, "local_2": 0, "saddle": 1, "no_convergence": 2}
        assert result.diverged == 1
        assert result.row()["to_saddle"] == 1


class TestBasinExperiment:
    def test_small_grid_converges_to_global_minimum(self):
        ex = mp.example(1)
        result = mp.basin_experiment(ex, rmnm(), mp.grid(ex.square, 9))
        assert result.counts["global"] == 9
        assert [o.index for o in result.outcomes] == list(range(9))

    def test_workers_do_not_change_the_result(self):
        ex = mp.example(2)
        starts = mp.grid(ex.square, 4)
        serial = mp.basin_experiment(ex, rmnm(), starts)
        parallel = mp.basin_experiment(ex, rmnm(), starts, threads=2)
        assert [o.label for o in serial.outcomes] == [o.label for o in parallel.outcomes]
        for a, b in zip(serial.outcomes, parallel.outcomes):
            assert a.status == b.status
            assert a.iterations == b.iterations
            np.testing.assert_array_equal(a.terminal, b.terminal)

    def test_starts_with_large_gradients_reach_global_minimum(self):
        ex = mp.example(1)
        starts = np.array([[0.25, 0.875], [2.0, 0.75]], dtype=np.complex128)
        result = mp.basin_experiment(ex, rmnm(), starts)
        assert [o.status for o in result.outcomes] == ["converged", "converged"]
        assert result.counts["global"] == 2

    def test_ordinary_newton_counts_sum_to_starts(self):
        ex = mp.example(2)
        config = mp.SolverConfig("onm", stop=mp.StopCriteria(grad_tol=1e-18, max_iters=1000))
        result = mp.basin_experiment(ex, config, mp.grid(ex.square, 16))
        assert sum(result.counts.values()) == 16
        assert result.gamma is None

    def test_invalid_arguments_raise_ValueError(self):
        ex = mp.example(1)
        with pytest.raises(ValueError):
            mp.basin_experiment(ex, rmnm(), mp.grid(ex.square, 4), match_tol=0)
        with pytest.raises(ValueError):
            mp.basin_experiment(ex, rmnm(), mp.grid(ex.square, 4), threads=0)


@pytest.mark.slow
class TestFullBasinTables:
    def test_first_example(self):
        ex = mp.example(1)
        result = mp.basin_experiment(ex, rmnm(ex.gamma), mp.grid(ex.square, ex.starts), threads=4)
        assert result.row()["to_global"] == 625
        assert result.counts["no_convergence"] == 0

    def test_second_example(self):
        ex = mp.example(2)
        result = mp.basin_experiment(ex, rmnm(ex.gamma), mp.grid(ex.square, ex.starts), threads=4)
        assert result.row()["to_global"] == 1024

    def test_third_example(self):
        ex = mp.example(3)
        result = mp.basin_experiment(ex, rmnm(ex.gamma), mp.grid(ex.square, ex.starts), threads=4)
        assert result.row()["to_global"] == 2601

    def test_complex_offset_grid(self):
        ex = mp.example(1)
        result = mp.basin_experiment(ex, rmnm(1e-3), mp.grid(ex.square, 49, 1j), threads=4)
        assert result.counts["global"] == 25
        assert result.counts["no_convergence"] == 24

    def test_third_example_ordinary_newton_is_symmetric(self):
        ex = mp.example(3)
        config = mp.SolverConfig("onm", stop=mp.StopCriteria(grad_tol=1e-18, max_iters=10 ** 6))
        result = mp.basin_experiment(ex, config, mp.grid(ex.square, ex.starts), threads=4)
        assert result.counts["local_1"] == result.counts["local_2"]


def perturbations(center, radius, count, rng, complex_directions=True):
    u = rng.standard_normal((count, 2))
    if complex_directions:
        u = u + 1j * rng.standard_normal((count, 2))
    u /= np.linalg.norm(u, axis=1)[:, None]
    return center + radius * rng.uniform(0, 1, (count, 1)) * u


class TestLocalAttraction:
    @pytest.mark.parametrize("id", [1, 2])
    def test_global_minimum_attracts_complex_perturbations(self, id):
        ex = mp.example(id, "sum_of_squares")
        center = ex.critical_point("global").location
        starts = perturbations(center, 1e-3, 100, np.random.default_rng(id))
        result = mp.basin_experiment(ex, rmnm(ex.gamma, max_iters=1000), starts)
        assert result.counts["global"] == 100

    @pytest.mark.slow
    def test_third_example_global_minimum_attracts_real_perturbations(self):
        ex = mp.example(3)
        center = ex.critical_point("global").location
        starts = perturbations(center, 1e-3, 100, np.random.default_rng(3), complex_directions=False)
        result = mp.basin_experiment(ex, rmnm(ex.gamma), starts, threads=4)
        assert result.counts["global"] == 100


@pytest.mark.slow
class TestOrdinaryNewtonTables:
    def setup_method(self):
        stop = mp.StopCriteria(grad_tol=1e-18, max_iters=10 ** 6)
        self.config = mp.SolverConfig("onm", stop=stop)

    def test_first_example_counts(self):
        ex = mp.example(1)
        result = mp.basin_experiment(ex, self.config, mp.grid(ex.square, ex.starts), threads=4)
        counts = result.counts
        for key, expected in (("global", 295), ("local_1", 294), ("saddle", 36)):
            assert abs(counts[key] - expected) <= 0.05 * expected
        assert counts["no_convergence"] == 0

    def test_second_example_reaches_every_class(self):
        ex = mp.example(2)
        result = mp.basin_experiment(ex, self.config, mp.grid(ex.square, ex.starts), threads=4)
        counts = result.counts
        assert sum(counts.values()) == 1024
        assert counts["global"] > 0
        assert counts["local_1"] > 0
        assert counts["saddle"] > 0
