import mixnewpy as mp
import numpy as np
import pytest


class TestSolveHpd:
    def test_solution(self):
        H = np.array([[4.0, 1.0 - 1j], [1.0 + 1j, 3.0]])
        b = np.array([1.0, 2.0j])
        np.testing.assert_allclose(mp.solve_hpd(H, b), np.linalg.solve(H, b))

    def test_singular_matrix_raises_SingularMatrixError(self):
        with pytest.raises(mp.SingularMatrixError):
            mp.solve_hpd([[1.0, 0.0], [0.0, 0.0]], [1.0, 1.0])

    def test_indefinite_matrix_raises_SingularMatrixError(self):
        with pytest.raises(mp.SingularMatrixError):
            mp.solve_hpd([[1.0, 0.0], [0.0, -1.0]], [1.0, 1.0])

    def test_rank_one_matrix_raises_SingularMatrixError(self):
        v = np.array([1.0 + 2j, -0.5j])
        with pytest.raises(mp.SingularMatrixError):
            mp.solve_hpd(np.outer(v.conj(), v), [1.0, 1.0])

    def test_non_square_matrix_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.solve_hpd(np.ones((2, 3)), [1.0, 1.0])

    def test_tiny_pivot_is_accepted_without_pivot_check(self):
        H = np.diag([1.0, 1e-20])
        with pytest.raises(mp.SingularMatrixError):
            mp.solve_hpd(H, [1.0, 1.0])
        np.testing.assert_allclose(mp.solve_hpd(H, [1.0, 1.0], check_pivots=False), [1.0, 1e20])

    def test_indefinite_matrix_raises_without_pivot_check(self):
        with pytest.raises(mp.SingularMatrixError):
            mp.solve_hpd([[1.0, 0.0], [0.0, -1.0]], [1.0, 1.0], check_pivots=False)


class TestSolveDiagonalPlusGram:
    def test_agrees_with_dense_solve(self):
        rng = np.random.default_rng(2)
        J = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        g = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        p = 1j * rng.standard_normal(2)
        d = np.array([0.5, 2.0])
        H = np.diag(d) + J.conj().T @ J
        expected = np.linalg.solve(H, J.conj().T @ g + p)
        np.testing.assert_allclose(mp.solve_diagonal_plus_gram(d, J, g, p), expected, rtol=1e-12)

    def test_more_unknowns_than_residuals(self):
        rng = np.random.default_rng(4)
        J = rng.standard_normal((1, 4)) + 1j * rng.standard_normal((1, 4))
        g = np.array([0.3 - 2j])
        d = np.full(4, 1e-3)
        H = np.diag(d) + J.conj().T @ J
        x = mp.solve_diagonal_plus_gram(d, J, g)
        np.testing.assert_allclose(H @ x, J.conj().T @ g, rtol=1e-8, atol=1e-12)

    def test_single_residual_closed_form_with_large_derivatives(self):
        j = np.array([1e9, -3e8])
        g = 7.5e4
        d = 2e-6
        x = mp.solve_diagonal_plus_gram(np.full(2, d), j[None, :], [g])
        expected = g * j / (d + np.dot(j, j))
        np.testing.assert_allclose(x, expected, rtol=1e-14)
        np.testing.assert_array_equal(x.imag, 0.0)

    def test_nonpositive_diagonal_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.solve_diagonal_plus_gram([1.0, 0.0], np.ones((1, 2)), [1.0])

    def test_wrong_diagonal_length_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.solve_diagonal_plus_gram([1.0], np.ones((1, 2)), [1.0])


class TestSolveGeneral:
    def test_real_system_stays_real(self):
        x = mp.solve_general([[2.0, 1.0], [1.0, -3.0]], [1.0, 0.0])
        assert x.dtype == np.float64
        np.testing.assert_allclose(x, [3.0 / 7.0, 1.0 / 7.0])

    def test_complex_system(self):
        H = np.array([[1j, 2.0], [0.0, 1.0]])
        b = np.array([1.0, 1.0])
        np.testing.assert_allclose(mp.solve_general(H, b), np.linalg.solve(H, b))

    def test_singular_matrix_raises_SingularMatrixError(self):
        with pytest.raises(mp.SingularMatrixError):
            mp.solve_general([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0])


class TestSpectralHelpers:
    def test_min_eigenvalue(self):
        assert mp.min_eigenvalue(np.diag([3.0, -1.0])) == pytest.approx(-1.0)

    def test_min_eigenvalue_uses_hermitian_part(self):
        assert mp.min_eigenvalue([[1.0, 2.0], [0.0, 1.0]]) == pytest.approx(0.0, abs=1e-12)

    def test_inf_norm_vec(self):
        assert mp.inf_norm_vec([[1.0, -5j], [0.5, 2.0]]) == 5.0

    def test_inf_norm_vec_of_empty_matrix(self):
        assert mp.inf_norm_vec(np.zeros((0, 0))) == 0.0

    def test_hermitian_sqrt(self):
        rng = np.random.default_rng(0)
        G = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        H = G @ G.conj().T + np.eye(3)
        W = mp.hermitian_sqrt(H)
        np.testing.assert_allclose(W @ W, H, atol=1e-10)
        W_inv = mp.hermitian_sqrt(H, inverse=True)
        np.testing.assert_allclose(W_inv @ H @ W_inv, np.eye(3), atol=1e-10)


class TestSmallMatrices:
    def test_identity_solve(self):
        np.testing.assert_allclose(mp.solve_hpd(np.eye(2), [3.0, -1j]), [3.0, -1j])

    def test_diagonal_solve(self):
        np.testing.assert_allclose(mp.solve_hpd(np.diag([2.0, 2.0]), [2.0, 4.0]), [1.0, 2.0])

    def test_reflection_min_eigenvalue(self):
        e = np.array([1.0, 0.0])
        assert mp.min_eigenvalue(np.eye(2) - 2 * np.outer(e, e)) == pytest.approx(-1.0)

    def test_rank_one_min_eigenvalue(self):
        v = np.array([1.0 + 1j, 2.0])
        assert mp.min_eigenvalue(np.outer(v.conj(), v)) == pytest.approx(0.0, abs=1e-12)

    def test_inf_norms(self):
        assert mp.inf_norm_vec([[1, -3], [2, 0]]) == 3.0
        assert mp.inf_norm_vec(np.zeros((2, 2))) == 0.0
        assert mp.inf_norm_vec([[4j]]) == 4.0
