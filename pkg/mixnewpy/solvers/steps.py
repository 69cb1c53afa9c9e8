# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Single steps of the mixed Newton family and its comparison methods.

Every step function takes a residual system and a point and returns the next
iterate. The drivers in :mod:`mixnewpy.solvers.driver` use the same
assembly helpers so that one residual evaluation per iteration suffices.
"""

import numpy as np

from mixnewpy.core.vectors import as_cvector, is_real_vector
from mixnewpy.core.wirtinger import effective_hessian, real_hessian_blocks, residual_jacobian, residual_values
from mixnewpy.core.wirtinger import wirtinger_eval, wirtinger_gradient
from mixnewpy.exceptions import EvaluationError
from mixnewpy.numerics.linalg import solve_diagonal_plus_gram, solve_general, solve_hpd
from mixnewpy.numerics.roots import solve_delta

__all__ = [
    "mnm_step",
    "rmnm_fixed_step",
    "repulsive_penalty",
    "rmnm_repulsive_step",
    "onm_step",
    "cnm_step",
    "cnm_step_real",
    "cmnm_step",
    "cnm_model",
    "cmnm_model",
]


def mnm_step(system, z):
    """Return one step of the mixed Newton method, z - B^{-1} df/dz-bar.

    Parameters
    ----------
    system : ResidualSystem
        The residual system.

    z : array_like
        The current point.

    Returns
    -------
    numpy.ndarray
        The next iterate.

    Raises
    ------
    SingularMatrixError
        If the mixed Hessian is singular, which is always the case for a
        single residual in dimension n >= 2.

    Notes
    -----
    The mixed Hessian B = sum_j conj(g_j') g_j'^T only involves first
    derivatives of the residuals.
    """
    z = as_cvector(z, system.n)
    ev = wirtinger_eval(system, z)
    return z - solve_hpd(ev.B, ev.grad_zbar)


def rmnm_fixed_step(system, z, P):
    """Return z - (B + P)^{-1} df/dz-bar for a fixed Hermitian positive
    definite regularizer *P*."""
    z = as_cvector(z, system.n)
    ev = wirtinger_eval(system, z)
    return z - solve_hpd(ev.B + np.asarray(P), ev.grad_zbar)


def repulsive_penalty(z, gamma):
    """Return the value, Wirtinger gradient and mixed Hessian diagonal of the
    complex-repulsive penalty 2 gamma^2 sum_l cosh(2 Im z_l).

    The penalty is the sum of squared moduli of gamma exp(i z_l) and
    gamma exp(-i z_l). It is the constant 2 n gamma^2 on the real subspace.

    Parameters
    ----------
    z : array_like
        A point of C^n.

    gamma : float
        The positive weighting coefficient.

    Returns
    -------
    tuple
        ``(value, grad, hess_diag)`` with ``grad = 2i gamma^2 sinh(2 Im z)``
        and ``hess_diag = 2 gamma^2 cosh(2 Im z)``, both of length n.

    Raises
    ------
    ValueError
        If *gamma* is not positive.

    EvaluationError
        If cosh overflows, which happens for |Im z| above about 355.
    """
    if not gamma > 0:
        raise ValueError("Expected gamma to be positive.")
    y = 2.0 * np.imag(np.asarray(z, dtype=np.complex128))
    scale = 2.0 * gamma ** 2
    with np.errstate(over="ignore"):
        cosh = np.cosh(y)
        sinh = np.sinh(y)
    if not (np.all(np.isfinite(cosh)) and np.all(np.isfinite(sinh))):
        raise EvaluationError("Repulsive penalty overflows at |Im z| = {:g}.".format(np.max(np.abs(y)) / 2))
    hess_diag = scale * cosh
    return float(np.sum(hess_diag)), 1j * scale * sinh, hess_diag


def _penalized_blocks(system, z, gamma):
    """Return (f, grad, solve) of the objective plus the repulsive penalty.

    ``solve()`` returns the penalized mixed Newton correction.
    """
    g = residual_values(system, z)
    J = residual_jacobian(system, z)
    value, penalty_grad, hess_diag = repulsive_penalty(z, gamma)
    f = float(np.real(np.vdot(g, g))) + value
    grad = J.conj().T @ g + penalty_grad

    def solve():
        return solve_diagonal_plus_gram(hess_diag, J, g, penalty_grad)

    return f, grad, solve


def rmnm_repulsive_step(system, z, gamma):
    """Return one step of the mixed Newton method with the complex-repulsive
    penalty.

    The mixed Hessian of the penalized objective is B + 2 gamma^2
    diag(cosh(2 Im z)). It is solved in residual space, so the step is
    defined however large the derivatives get. For a real point of a system
    with real coefficients the step is real and reduces, for a single
    residual g, to
    ``z - g g' / (2 gamma^2 + ||g'||^2)``.

    See Also
    --------
    repulsive_penalty, with_repulsive_penalty
    """
    z = as_cvector(z, system.n)
    _, _, solve = _penalized_blocks(system, z, gamma)
    return z - solve()


def _onm_blocks(system, x):
    """Return (grad, H) of the real Newton iteration on sum_j g_j^2."""
    g = residual_values(system, x)
    J = residual_jacobian(system, x)
    grad = np.real(J.T @ g)
    H = np.real(J.T @ J + np.asarray(system.weighted_hessian(x, g)))
    return grad, 0.5 * (H + H.T)


def _as_real_point(system, x):
    x = as_cvector(x, system.n)
    if not is_real_vector(x):
        raise ValueError("The ordinary Newton method acts on real points only.")
    return x.real


def onm_step(system, x):
    """Return one step of the ordinary Newton method in R^n.

    The step is Newton's method on sum_j g_j(x)^2 for a real-coefficient
    system: ``x - (sum_j g_j g_j'' + g_j' g_j'^T)^{-1} sum_j g_j g_j'``.
    For a single residual this is ``x - g (g g'' + g' g'^T)^{-1} g'``.

    Returns
    -------
    numpy.ndarray
        The next iterate as a complex array with zero imaginary part.

    Raises
    ------
    ValueError
        If *x* is not real.

    SingularMatrixError
        If the Newton matrix is singular.
    """
    x = _as_real_point(system, x)
    grad, H = _onm_blocks(system, x)
    return (x - solve_general(H, grad)).astype(np.complex128)


def _cnm_solve(ev, L):
    return solve_delta(effective_hessian(ev), ev.grad_zbar, L, "quarter")


def _cmnm_solve(ev, L):
    return solve_delta(ev.B, ev.grad_zbar, L, "one_plus_quarter")


def cnm_step(system, z, L):
    """Return one step of the cubic-regularized Newton method.

    With H = B + (A + conj(A)) / 2 the step solves the scalar condition
    ``delta = ||(H + delta L / 4 I)^{-1} df/dz-bar||`` and returns
    ``z - (H + delta L / 4 I)^{-1} df/dz-bar``.

    Raises
    ------
    NumericError
        If the step length equation cannot be solved.

    See Also
    --------
    cnm_step_real, cmnm_step, solve_delta
    """
    z = as_cvector(z, system.n)
    ev = wirtinger_eval(system, z, with_a_block=True)
    _, x = _cnm_solve(ev, L)
    return z - x


def cnm_step_real(system, z, L):
    """Return the cubic Newton step computed from real Hessian blocks.

    The step is ``z - 2 (2 H_xx + delta L I + i (H_yx - H_xy))^{-1}
    (g_x + i g_y)``; the block H_yy is never needed.
    """
    z = as_cvector(z, system.n)
    H_xx, H_xy, H_yx, _ = real_hessian_blocks(system, z)
    grad = wirtinger_gradient(system, z)
    g = 2.0 * grad
    K = 2.0 * H_xx + 1j * (H_yx - H_xy)
    delta, _ = solve_delta(K / 4.0, grad, L, "quarter")
    n = system.n
    return z - 2.0 * solve_general(K + delta * L * np.eye(n), g)


def cmnm_step(system, z, L):
    """Return one step of the cubic-regularized mixed Newton method.

    Only the mixed Hessian B is used; the shift is L (1 + delta / 4). Since
    B is positive semi-definite the lower bound on delta is always 0.
    """
    z = as_cvector(z, system.n)
    ev = wirtinger_eval(system, z)
    _, x = _cmnm_solve(ev, L)
    return z - x


def cnm_model(f, grad, H, step, L):
    """Return the cubic upper model f + 2 Re(g^* s) + Re(s^* H s) + L / 6 ||s||^3."""
    delta = np.linalg.norm(step)
    quadratic = 2.0 * np.real(np.vdot(grad, step)) + np.real(np.vdot(step, H @ step))
    return f + quadratic + L / 6.0 * delta ** 3


def cmnm_model(f, grad, B, step, L):
    """Return the model f + 2 Re(g^* s) + Re(s^* B s) + L ||s||^2 (1 + ||s|| / 6)."""
    delta = np.linalg.norm(step)
    quadratic = 2.0 * np.real(np.vdot(grad, step)) + np.real(np.vdot(step, B @ step))
    return f + quadratic + L * delta ** 2 * (1.0 + delta / 6.0)
