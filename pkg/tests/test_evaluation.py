import mixnewpy as mp
import numpy as np
import pytest


class TestMetrics:
    def test_perfect_prediction(self):
        m = mp.metrics([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert m["mse"] == 0.0
        assert m["r2"] == 1.0

    def test_mean_prediction_has_zero_r2(self):
        y = np.array([1.0, 2.0, 6.0])
        assert mp.metrics(np.full(3, y.mean()), y)["r2"] == pytest.approx(0.0)

    def test_complex_predictions(self):
        assert mp.metrics([1j, 1.0], [0.0, 2.0])["mse"] == pytest.approx(1.0)

    def test_nmse_db(self):
        assert mp.nmse_db(0.1) == pytest.approx(-20.0)

    def test_invalid_inputs_raise_ValueError(self):
        with pytest.raises(ValueError):
            mp.metrics([1.0, 2.0], [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            mp.metrics([1.0], [1.0])
        with pytest.raises(ValueError):
            mp.metrics([1.0, 2.0], [3.0, 3.0])


class TestAggregateTrials:
    def test_single_trial(self):
        agg = mp.aggregate_trials([[3.0, 2.0, 1.0]])
        for key in ("aver", "min", "max"):
            np.testing.assert_allclose(agg[key], [3.0, 2.0, 1.0])

    def test_two_trials(self):
        agg = mp.aggregate_trials([[1, 1], [3, 3]])
        np.testing.assert_allclose(agg["aver"], [2, 2])
        np.testing.assert_allclose(agg["min"], [1, 1])
        np.testing.assert_allclose(agg["max"], [3, 3])

    def test_mismatched_lengths_raise_ValueError(self):
        with pytest.raises(ValueError):
            mp.aggregate_trials([[1, 2], [1, 2], [1, 2], [1, 2], [1]])

    def test_empty_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.aggregate_trials([])


class TestIterationsToPlateau:
    def test_first_index_near_minimum(self):
        assert mp.iterations_to_plateau([5.0, 3.0, 1.0005, 1.0], rel_tol=1e-3) == 2

    def test_empty_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.iterations_to_plateau([])
