# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Finite-difference oracle for Wirtinger derivatives and derivative checks.

Everything here treats f as a real function of the 2n real coordinates
r = (Re z, Im z) and uses only residual *values*, so it is independent of the
analytic derivative code in :mod:`mixnewpy.core.wirtinger`.
"""

from dataclasses import dataclass

import numpy as np

from mixnewpy.core.residuals import ResidualSystem
from mixnewpy.core.vectors import as_cvector
from mixnewpy.core.wirtinger import residual_jacobian, residual_values
from mixnewpy.utils.norms import relative_error

__all__ = [
    "FiniteDifferenceEstimate",
    "DerivativeCheck",
    "fd_oracle",
    "check_derivatives",
    "CorruptedDerivatives",
]


@dataclass(frozen=True)
class FiniteDifferenceEstimate:
    """Central-difference estimates of the derivatives of f at a point."""

    f: float
    grad_x: np.ndarray
    grad_y: np.ndarray
    grad_zbar: np.ndarray
    H_xx: np.ndarray
    H_xy: np.ndarray
    H_yx: np.ndarray
    H_yy: np.ndarray
    B: np.ndarray
    A: np.ndarray


def _real_objective(system, n):
    def f(r):
        g = system.values(r[:n] + 1j * r[n:])
        return float(np.real(np.vdot(g, g)))

    return f


def _second_differences(f, r, f0, h):
    size = len(r)
    eye = np.eye(size)
    H = np.empty((size, size))
    for i in range(size):
        H[i, i] = (f(r + h * eye[i]) - 2.0 * f0 + f(r - h * eye[i])) / h ** 2
        for j in range(i + 1, size):
            ei, ej = h * eye[i], h * eye[j]
            value = (f(r + ei + ej) - f(r + ei - ej) - f(r - ei + ej) + f(r - ei - ej)) / (4.0 * h ** 2)
            H[i, j] = H[j, i] = value
    return H


def fd_oracle(system, z, step=1e-6, hessian_step=None):
    """Estimate the Wirtinger gradient and Hessian blocks of f by central
    differences in the real coordinates (Re z, Im z).

    The complex blocks are recovered from the real Hessian H_rr by the
    coordinate change H_cc = J H_rr J^T / 4 with J = [[I, -iI], [I, iI]],
    whose lower-left block is B and lower-right block is A.

    Parameters
    ----------
    system : ResidualSystem
        The residual system.

    z : array_like
        The point of C^n.

    step : float
        The step used for first differences. Defaults to 1e-6.

    hessian_step : float, optional
        The larger of the two steps of the second differences, which are
        combined by Richardson extrapolation. Defaults to ``step ** (1/2)``.

    Returns
    -------
    FiniteDifferenceEstimate
        Estimates of grad_zbar, B, A and of the real blocks H_xx, H_xy,
        H_yx, H_yy.

    Raises
    ------
    ValueError
        If *step* is not positive.
    """
    if not step > 0:
        raise ValueError("Expected step to be positive.")
    if hessian_step is None:
        hessian_step = step ** 0.5
    if not hessian_step > 0:
        raise ValueError("Expected hessian_step to be positive.")
    z = as_cvector(z, system.n)
    n = system.n
    f = _real_objective(system, n)
    r = np.concatenate([z.real, z.imag])
    size = 2 * n
    eye = np.eye(size)

    f0 = f(r)
    grad_r = np.array([(f(r + step * eye[i]) - f(r - step * eye[i])) / (2.0 * step) for i in range(size)])

    h = hessian_step
    H = (4.0 * _second_differences(f, r, f0, 0.5 * h) - _second_differences(f, r, f0, h)) / 3.0

    I = np.eye(n)
    J = np.block([[I, -1j * I], [I, 1j * I]])
    H_cc = J @ H @ J.T / 4.0
    grad_x, grad_y = grad_r[:n], grad_r[n:]
    return FiniteDifferenceEstimate(
        f=f0,
        grad_x=grad_x,
        grad_y=grad_y,
        grad_zbar=0.5 * (grad_x + 1j * grad_y),
        H_xx=H[:n, :n],
        H_xy=H[:n, n:],
        H_yx=H[n:, :n],
        H_yy=H[n:, n:],
        B=H_cc[n:, :n],
        A=H_cc[n:, n:],
    )


@dataclass(frozen=True)
class DerivativeCheck:
    """Largest relative errors found by :func:`check_derivatives`."""

    gradient_real_axis: float
    gradient_imaginary_axis: float
    hessian: float

    def passed(self, tol=1e-6):
        return max(self.gradient_real_axis, self.gradient_imaginary_axis, self.hessian) < tol


def check_derivatives(system, z, step=1e-6):
    """Compare the analytic residual derivatives with central differences.

    A holomorphic g_j satisfies dg_j/dx_k = g_j'[k] and
    dg_j/dy_k = i g_j'[k]; both are checked against differences of the
    residual values. The second derivatives are checked against differences
    of the analytic gradients along the real axes.

    Returns
    -------
    DerivativeCheck
        The largest relative errors (Jacobian along real axes, along
        imaginary axes, and Hessians). The Hessian error is 0 when the system
        has no second derivatives.
    """
    z = as_cvector(z, system.n)
    J = residual_jacobian(system, z)
    n = system.n
    fd_real = np.empty_like(J)
    fd_imag = np.empty_like(J)
    for k in range(n):
        e = np.zeros(n)
        e[k] = step
        fd_real[:, k] = (residual_values(system, z + e) - residual_values(system, z - e)) / (2.0 * step)
        fd_imag[:, k] = (residual_values(system, z + 1j * e) - residual_values(system, z - 1j * e)) / (2.0j * step)
    err_hess = 0.0
    if system.has_hessians():
        stack = np.asarray(system.hessians(z))
        fd_stack = np.empty_like(stack)
        for k in range(n):
            e = np.zeros(n)
            e[k] = step
            fd_stack[:, :, k] = (residual_jacobian(system, z + e) - residual_jacobian(system, z - e)) / (2.0 * step)
        err_hess = relative_error(fd_stack, stack)
    return DerivativeCheck(
        gradient_real_axis=relative_error(fd_real, J),
        gradient_imaginary_axis=relative_error(fd_imag, J),
        hessian=err_hess,
    )


class CorruptedDerivatives(ResidualSystem):
    """Wrap a residual system and scale its first derivatives.

    Used as a negative control: every derivative check must fail on it.
    """

    def __init__(self, base, factor=1.01):
        self.base = base
        self.factor = factor
        self.n = base.n
        self.m = base.m

    def values(self, z):
        return self.base.values(z)

    def jacobian(self, z):
        return self.factor * np.asarray(self.base.jacobian(z))

    def hessians(self, z):
        return self.base.hessians(z)

    def weighted_hessian(self, z, weights):
        return self.base.weighted_hessian(z, weights)

    def has_hessians(self):
        return self.base.has_hessians()
