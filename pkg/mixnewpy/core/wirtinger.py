# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Exact Wirtinger derivatives of sums of squared moduli of holomorphic
functions.

For f(z) = sum_j |g_j(z)|^2 with holomorphic g_j we have

.. math::

    \\frac{\\partial f}{\\partial \\bar z} = \\sum_j g_j \\overline{g_j'}, \\quad
    B = \\frac{\\partial^2 f}{\\partial \\bar z \\partial z} = \\sum_j \\overline{g_j'} g_j'^\\top, \\quad
    A = \\frac{\\partial^2 f}{\\partial \\bar z^2} = \\sum_j g_j \\overline{g_j''}.

Only first derivatives are needed for the mixed Hessian *B*.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from mixnewpy.core.vectors import as_cvector
from mixnewpy.exceptions import EvaluationError

__all__ = [
    "WirtingerEval",
    "residual_values",
    "residual_jacobian",
    "eval_objective",
    "wirtinger_gradient",
    "mixed_hessian",
    "a_block",
    "full_wirtinger_hessian",
    "wirtinger_eval",
    "effective_hessian",
    "real_hessian_blocks",
]


@dataclass(frozen=True)
class WirtingerEval:
    """Objective value and Wirtinger derivative blocks at a point.

    Attributes
    ----------
    f : float
        The objective value, nonnegative.

    grad_zbar : numpy.ndarray
        The Wirtinger gradient df/dz-bar.

    B : numpy.ndarray
        The Hermitian positive semi-definite mixed Hessian.

    A : numpy.ndarray or None
        The symmetric block d^2 f / dz-bar^2, or None when it was not
        requested.
    """

    f: float
    grad_zbar: np.ndarray
    B: np.ndarray
    A: Optional[np.ndarray] = None

    @property
    def has_a_block(self):
        return self.A is not None


def _first_nonfinite(array):
    bad = ~np.isfinite(array)
    if array.ndim > 1:
        bad = bad.reshape(array.shape[0], -1).any(axis=1)
    return int(np.flatnonzero(bad)[0])


def _check_point(system, z):
    return as_cvector(z, system.n)


def residual_values(system, z):
    """Return the residual values at *z*, raising on non-finite entries.

    Raises
    ------
    EvaluationError
        If some residual value is NaN or infinite. The error carries the
        index of the first offending residual.
    """
    g = np.asarray(system.values(z), dtype=np.complex128)
    if g.shape != (system.m,):
        raise ValueError("Residual values have shape {}, expected ({},).".format(g.shape, system.m))
    if not np.all(np.isfinite(g)):
        j = _first_nonfinite(g)
        raise EvaluationError("Residual {} is not finite.".format(j), index=j)
    return g


def residual_jacobian(system, z):
    """Return the residual Jacobian at *z*, raising on non-finite entries."""
    J = np.asarray(system.jacobian(z), dtype=np.complex128)
    if J.shape != (system.m, system.n):
        raise ValueError("Jacobian has shape {}, expected ({}, {}).".format(J.shape, system.m, system.n))
    if not np.all(np.isfinite(J)):
        j = _first_nonfinite(J)
        raise EvaluationError("Derivative of residual {} is not finite.".format(j), index=j)
    return J


def _objective(g):
    return float(np.real(np.vdot(g, g)))


def _gradient(g, J):
    return J.conj().T @ g


def _mixed(J):
    B = J.conj().T @ J
    return 0.5 * (B + B.conj().T)


def _a_block(system, z, g):
    if not system.has_hessians():
        raise ValueError("Second derivatives are not available for {}.".format(type(system).__name__))
    A = np.conj(np.asarray(system.weighted_hessian(z, np.conj(g)), dtype=np.complex128))
    if not np.all(np.isfinite(A)):
        raise EvaluationError("Second derivatives are not finite.")
    return 0.5 * (A + A.T)


def eval_objective(system, z):
    """Return f(z) = sum_j |g_j(z)|^2.

    Parameters
    ----------
    system : ResidualSystem
        The residual system.

    z : array_like
        A point of C^n.

    Returns
    -------
    float
        The nonnegative objective value.

    Raises
    ------
    EvaluationError
        If a residual value is not finite.
    """
    z = _check_point(system, z)
    return _objective(residual_values(system, z))


def wirtinger_gradient(system, z):
    """Return the Wirtinger gradient df/dz-bar = sum_j g_j conj(g_j').

    At a real point of a system with real coefficients the result is real
    and equals half the gradient of f restricted to the real subspace.
    """
    z = _check_point(system, z)
    return _gradient(residual_values(system, z), residual_jacobian(system, z))


def mixed_hessian(system, z):
    """Return the mixed Hessian B = sum_j conj(g_j') g_j'^T.

    *B* is Hermitian positive semi-definite of rank at most ``system.m``.
    Second derivatives of the residuals are not needed.
    """
    z = _check_point(system, z)
    return _mixed(residual_jacobian(system, z))


def a_block(system, z):
    """Return the block A = sum_j g_j conj(g_j''), symmetric but in general
    not Hermitian.

    Raises
    ------
    ValueError
        If *system* does not supply second derivatives.
    """
    z = _check_point(system, z)
    return _a_block(system, z, residual_values(system, z))


def full_wirtinger_hessian(system, z):
    """Return the 2n x 2n Hermitian matrix M = [[conj(B), conj(A)], [A, B]].

    The signature of *M* equals the signature of the Hessian of f in real
    coordinates (Re z, Im z); its eigenvalues are half of the latter's.
    """
    ev = wirtinger_eval(system, z, with_a_block=True)
    return _assemble_m(ev.A, ev.B)


def _assemble_m(A, B):
    M = np.block([[B.conj(), A.conj()], [A, B]])
    return 0.5 * (M + M.conj().T)


def wirtinger_eval(system, z, with_a_block=False):
    """Return a :class:`WirtingerEval` with f, df/dz-bar, B and optionally A.

    The residuals are evaluated once and shared between all blocks.
    """
    z = _check_point(system, z)
    g = residual_values(system, z)
    J = residual_jacobian(system, z)
    A = _a_block(system, z, g) if with_a_block else None
    return WirtingerEval(f=_objective(g), grad_zbar=_gradient(g, J), B=_mixed(J), A=A)


def effective_hessian(ev):
    """Return B + (A + conj(A)) / 2 for an evaluation carrying the A block.

    This is the complex representation of the full Newton matrix: it equals
    a quarter of ``2 H_xx + i (H_yx - H_xy)`` in real coordinates.
    """
    if ev.A is None:
        raise ValueError("The evaluation does not carry the A block.")
    H = ev.B + np.real(ev.A)
    return 0.5 * (H + H.conj().T)


def real_hessian_blocks(system, z):
    """Return the Hessian blocks of f in real coordinates (x, y) = (Re z, Im z).

    Returns
    -------
    tuple of numpy.ndarray
        ``(H_xx, H_xy, H_yx, H_yy)`` where ``H_xy[i, j]`` is the second
        derivative with respect to x_i and y_j.
    """
    ev = wirtinger_eval(system, z, with_a_block=True)
    A, B = ev.A, ev.B
    H_xx = 2.0 * (B.real + A.real)
    H_yy = 2.0 * (B.real - A.real)
    H_yx = 2.0 * (A.imag + B.imag)
    H_xy = 2.0 * (A.imag - B.imag)
    return H_xx, H_xy, H_yx, H_yy
