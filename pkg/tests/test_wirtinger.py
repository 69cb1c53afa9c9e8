import mixnewpy as mp
import numpy as np
import pytest


class TestAffineObjective:
    def setup_method(self):
        self.C = np.array([[1 + 1j, 2], [0, 3 - 1j], [1, 1]])
        self.d = np.array([1, 1j, 0])
        self.sys = mp.AffineResiduals(self.C, self.d)
        self.z = np.array([0.5 - 0.5j, 1j])

    def test_objective(self):
        g = self.C @ self.z - self.d
        assert mp.eval_objective(self.sys, self.z) == pytest.approx(np.sum(np.abs(g) ** 2))

    def test_gradient(self):
        expected = self.C.conj().T @ (self.C @ self.z - self.d)
        np.testing.assert_allclose(mp.wirtinger_gradient(self.sys, self.z), expected)

    def test_mixed_hessian(self):
        np.testing.assert_allclose(mp.mixed_hessian(self.sys, self.z), self.C.conj().T @ self.C)

    def test_a_block_is_zero(self):
        np.testing.assert_allclose(mp.a_block(self.sys, self.z), np.zeros((2, 2)))

    def test_wirtinger_eval_without_a_block(self):
        ev = mp.wirtinger_eval(self.sys, self.z)
        assert ev.has_a_block == False

    def test_effective_hessian_needs_a_block(self):
        with pytest.raises(ValueError):
            mp.effective_hessian(mp.wirtinger_eval(self.sys, self.z))

    def test_full_hessian_shape(self):
        assert mp.full_wirtinger_hessian(self.sys, self.z).shape == (4, 4)


class TestEvaluationErrors:
    def test_nonfinite_residual_raises_EvaluationError_with_index(self):
        sys = mp.FunctionResiduals(
            1, [lambda z: z[0], lambda z: np.nan], [lambda z: np.array([1.0]), lambda z: np.array([0.0])]
        )
        with pytest.raises(mp.EvaluationError) as info:
            mp.eval_objective(sys, [1.0])
        assert info.value.index == 1

    def test_a_block_without_hessians_raises_ValueError(self):
        sys = mp.FunctionResiduals(1, [lambda z: z[0]], [lambda z: np.array([1.0])])
        with pytest.raises(ValueError):
            mp.a_block(sys, [1.0])


class TestThreeSquares:
    def setup_method(self):
        self.sys = mp.ThreeSquares(2, 3, 1)
        self.rng = np.random.default_rng(3)

    def test_gradient_at_real_point_is_half_real_gradient(self):
        x = self.rng.uniform(-1, 2, 2)
        grad = mp.wirtinger_gradient(self.sys, x)
        fd = mp.fd_oracle(self.sys, x)
        np.testing.assert_allclose(grad.imag, 0, atol=1e-14)
        np.testing.assert_allclose(grad.real, fd.grad_x / 2, rtol=1e-6, atol=1e-8)

    def test_mixed_hessian_is_positive_semidefinite(self):
        for _ in range(10):
            z = self.rng.uniform(-2, 2, 2) + 1j * self.rng.uniform(-2, 2, 2)
            assert mp.min_eigenvalue(mp.mixed_hessian(self.sys, z)) >= -1e-12

    def test_real_blocks_match_finite_differences(self):
        z = np.array([0.4 - 0.3j, -0.2 + 0.5j])
        fd = mp.fd_oracle(self.sys, z)
        H_xx, H_xy, H_yx, H_yy = mp.real_hessian_blocks(self.sys, z)
        for analytic, estimate in [(H_xx, fd.H_xx), (H_xy, fd.H_xy), (H_yx, fd.H_yx), (H_yy, fd.H_yy)]:
            assert mp.relative_error(analytic, estimate) < 1e-6

    def test_full_hessian_eigenvalues_are_half_of_real_hessian(self):
        z = np.array([1.1 + 0.2j, 0.3 - 0.7j])
        H_xx, H_xy, H_yx, H_yy = mp.real_hessian_blocks(self.sys, z)
        real = np.block([[H_xx, H_xy], [H_yx, H_yy]])
        expected = np.linalg.eigvalsh(0.5 * (real + real.T)) / 2
        actual = np.linalg.eigvalsh(mp.full_wirtinger_hessian(self.sys, z))
        np.testing.assert_allclose(actual, expected, rtol=1e-10, atol=1e-12 * np.max(np.abs(expected)))

    def test_full_hessian_of_shifted_identity(self):
        sys = mp.AffineResiduals([[1.0]], [1.0])
        z = np.array([0.3 - 0.4j])
        np.testing.assert_allclose(mp.full_wirtinger_hessian(sys, z), np.eye(2))
        H_xx, H_xy, H_yx, H_yy = mp.real_hessian_blocks(sys, z)
        np.testing.assert_allclose(np.block([[H_xx, H_xy], [H_yx, H_yy]]), 2 * np.eye(2))

    def test_full_hessian_eigenvalues_against_finite_differences(self):
        for _ in range(100):
            z = self.rng.uniform(-2, 2, 2) + 1j * self.rng.uniform(-2, 2, 2)
            fd = mp.fd_oracle(self.sys, z)
            real = np.block([[fd.H_xx, fd.H_xy], [fd.H_yx, fd.H_yy]])
            expected = np.linalg.eigvalsh(0.5 * (real + real.T)) / 2
            actual = np.linalg.eigvalsh(mp.full_wirtinger_hessian(self.sys, z))
            assert mp.relative_error(actual, expected, floor=1e-12) < 1e-5

    def test_effective_hessian_is_hermitian(self):
        ev = mp.wirtinger_eval(self.sys, np.array([0.1 + 1j, 2.0]), with_a_block=True)
        H = mp.effective_hessian(ev)
        np.testing.assert_allclose(H, H.conj().T)


class TestSingleResidual:
    def test_mixed_hessian_has_rank_1(self):
        ex = mp.example(3)
        B = mp.mixed_hessian(ex, np.array([0.5 + 0.2j, -1.0 + 0.1j]))
        s = np.linalg.svd(B, compute_uv=False)
        assert s[1] <= 1e-12 * s[0]


class TestSmallSystems:
    def identity(self):
        return mp.FunctionResiduals(1, [lambda z: z[0]], [lambda z: np.array([1.0])], [lambda z: np.zeros((1, 1))])

    def test_objective_of_identity(self):
        assert mp.eval_objective(self.identity(), [1 + 1j]) == pytest.approx(2.0)

    def test_gradient_of_identity(self):
        np.testing.assert_allclose(mp.wirtinger_gradient(self.identity(), [1 + 1j]), [1 + 1j])

    def test_mixed_hessian_of_identity(self):
        np.testing.assert_allclose(mp.mixed_hessian(self.identity(), [0.3 - 2j]), [[1.0]])

    def test_a_block_of_square(self):
        sys = mp.FunctionResiduals(
            1, [lambda z: z[0] ** 2], [lambda z: np.array([2 * z[0]])], [lambda z: np.array([[2.0]])]
        )
        np.testing.assert_allclose(mp.a_block(sys, [1.0]), [[2.0]])

    def test_full_hessian_of_shifted_identity(self):
        sys = mp.AffineResiduals([[1.0]], [1.0])
        np.testing.assert_allclose(mp.full_wirtinger_hessian(sys, [1.0]), np.eye(2))

    def test_example_values(self):
        assert mp.eval_objective(mp.example(2), (1, 1)) == pytest.approx(1.0)
        assert mp.eval_objective(mp.example(1), (0, 0)) == 0.0
        np.testing.assert_allclose(mp.wirtinger_gradient(mp.example(1), (0, 0)), [0, 0])

    def test_example_derivatives_match_finite_differences(self):
        ex = mp.example(1)
        fd = mp.fd_oracle(ex, [1j, 0])
        assert mp.relative_error(mp.wirtinger_gradient(ex, [1j, 0]), fd.grad_zbar) < 1e-6
        fd = mp.fd_oracle(ex, [0.5, 0.5])
        assert mp.relative_error(mp.mixed_hessian(ex, [0.5, 0.5]), fd.B) < 1e-6
        ex = mp.example(2)
        fd = mp.fd_oracle(ex, [1, 1])
        assert mp.relative_error(mp.a_block(ex, [1, 1]), fd.A) < 1e-6
