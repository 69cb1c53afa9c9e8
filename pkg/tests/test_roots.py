import mixnewpy as mp
import numpy as np
import pytest


def phi(H, g, L, shift_form, delta):
    s = mp.shift_for(delta, L, shift_form)
    return np.linalg.norm(np.linalg.solve(H + s * np.eye(len(g)), g)) - delta


class TestShiftForms:
    def test_quarter(self):
        assert mp.shift_for(2.0, 3.0, "quarter") == 1.5

    def test_one_plus_quarter(self):
        assert mp.shift_for(2.0, 3.0, "one_plus_quarter") == 4.5

    def test_unknown_form_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.shift_for(1.0, 1.0, "half")

    def test_lower_bound_of_definite_matrix_is_0(self):
        assert mp.delta_lower_bound(0.5, 1.0, "quarter") == 0.0

    def test_lower_bound_of_indefinite_matrix(self):
        assert mp.delta_lower_bound(-1.0, 2.0, "quarter") == 2.0


class TestSolveDelta:
    def setup_method(self):
        rng = np.random.default_rng(7)
        G = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        self.H = 0.5 * (G + G.conj().T)
        self.g = rng.standard_normal(4) + 1j * rng.standard_normal(4)

    def test_fixed_point_with_indefinite_matrix(self):
        delta, x = mp.solve_delta(self.H, self.g, 1.0, "quarter")
        assert np.linalg.norm(x) == pytest.approx(delta, rel=1e-8)
        residual = (self.H + delta / 4 * np.eye(4)) @ x - self.g
        assert np.linalg.norm(residual) < 1e-8 * np.linalg.norm(self.g)

    def test_root_is_bracketed(self):
        delta, _ = mp.solve_delta(self.H, self.g, 1.0, "quarter")
        assert phi(self.H, self.g, 1.0, "quarter", delta * (1 + 1e-6)) < 0
        assert phi(self.H, self.g, 1.0, "quarter", delta * (1 - 1e-6)) > 0

    def test_one_plus_quarter_with_semidefinite_matrix(self):
        v = np.array([1.0, 2.0j, -1.0, 0.5])
        B = np.outer(v.conj(), v)
        delta, x = mp.solve_delta(B, self.g, 2.0, "one_plus_quarter")
        residual = (B + 2.0 * (1 + delta / 4) * np.eye(4)) @ x - self.g
        assert np.linalg.norm(x) == pytest.approx(delta, rel=1e-8)
        assert np.linalg.norm(residual) < 1e-8 * np.linalg.norm(self.g)

    def test_zero_gradient_gives_zero_step(self):
        delta, x = mp.solve_delta(self.H, np.zeros(4), 1.0)
        assert delta == 0.0
        assert np.all(x == 0)

    def test_nonpositive_L_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.solve_delta(self.H, self.g, 0.0)

    def test_unknown_shift_form_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.solve_delta(self.H, self.g, 1.0, "half")

    def test_hard_case_raises_NumericError(self):
        with pytest.raises(mp.NumericError):
            mp.solve_delta(np.diag([-1.0, 1.0]), [0.0, 1.0], 1.0, "quarter")


class TestScalarEquation:
    def test_golden_ratio(self):
        delta, x = mp.solve_delta([[1.0]], [1.0], 4.0, "quarter")
        assert delta == pytest.approx((5 ** 0.5 - 1) / 2, rel=1e-9)
        assert abs(x[0]) == pytest.approx(delta, rel=1e-9)
