# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Dense Hermitian linear algebra used by the solvers."""

import logging
import warnings

import numpy as np
import scipy.linalg

from mixnewpy.exceptions import SingularMatrixError

__all__ = [
    "as_hermitian",
    "solve_hpd",
    "solve_diagonal_plus_gram",
    "solve_general",
    "min_eigenvalue",
    "inf_norm_vec",
    "hermitian_sqrt",
]

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-14


def _as_square(H, dtype=np.complex128):
    H = np.atleast_2d(np.asarray(H, dtype=dtype))
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError("Expected a square matrix, got shape {}.".format(H.shape))
    return H


def as_hermitian(H):
    """Return the Hermitian part (H + H^*) / 2 of the square matrix *H*."""
    H = _as_square(H)
    return 0.5 * (H + H.conj().T)


def solve_hpd(H, b, check_pivots=True):
    """Solve H x = b for a Hermitian positive definite matrix H.

    The solve goes through a Cholesky factorization of the Hermitian part of
    *H*. Singular systems are never pseudo-inverted.

    Parameters
    ----------
    H : array_like
        A Hermitian positive definite n x n matrix.

    b : array_like
        The right hand side, a vector of length n.

    check_pivots : bool
        If False, only a failed factorization is rejected. Callers pass False
        for matrices that are positive definite by construction.

    Returns
    -------
    numpy.ndarray
        The solution x.

    Raises
    ------
    SingularMatrixError
        If the factorization fails or, with *check_pivots*, a squared
        Cholesky pivot is below ``1e-14 * ||H||``.

    See Also
    --------
    solve_general
    """
    H = as_hermitian(H)
    b = np.asarray(b, dtype=np.complex128)
    scale = np.linalg.norm(H)
    try:
        factor = scipy.linalg.cho_factor(H, lower=True, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise SingularMatrixError("Cholesky factorization failed: {}".format(err)) from err
    pivots = np.abs(np.diag(factor[0])) ** 2
    if check_pivots and pivots.min() <= PIVOT_TOLERANCE * scale:
        raise SingularMatrixError("Matrix is not positive definite within the pivot tolerance.")
    return scipy.linalg.cho_solve(factor, b)


def solve_diagonal_plus_gram(d, J, g, p=None):
    """Solve (diag(d) + J^* J) x = J^* g + p for a positive vector *d*.

    The system is reduced to residual space with the Woodbury identity,

        (I + J D^-1 J^*) u = g - J D^-1 p,    x = D^-1 (J^* u + p),

    where the m x m matrix has all eigenvalues at least 1. Large derivatives
    therefore never make the solve fail. For a single residual with constant
    *d* and p = 0 this is ``x = conj(j) g / (d + ||j||^2)``.

    Parameters
    ----------
    d : array_like
        The positive diagonal, a real vector of length n.

    J : array_like
        An m x n matrix.

    g : array_like
        A vector of length m.

    p : array_like, optional
        A vector of length n, zero if omitted.

    Returns
    -------
    numpy.ndarray
        The solution x of length n.

    Raises
    ------
    ValueError
        If *d* is not a finite positive vector or the shapes disagree.

    SingularMatrixError
        If the solution is not finite.
    """
    d = np.asarray(d, dtype=np.float64)
    J = np.atleast_2d(np.asarray(J, dtype=np.complex128))
    m, n = J.shape
    if d.shape != (n,) or not np.all(np.isfinite(d)) or not np.all(d > 0):
        raise ValueError("Expected a finite positive diagonal of length {}.".format(n))
    g = np.asarray(g, dtype=np.complex128).reshape(m)
    p = np.zeros(n, dtype=np.complex128) if p is None else np.asarray(p, dtype=np.complex128).reshape(n)
    W = J / d
    S = np.eye(m) + W @ J.conj().T
    u = solve_hpd(S, g - W @ p, check_pivots=False)
    x = (J.conj().T @ u + p) / d
    if not np.all(np.isfinite(x)):
        raise SingularMatrixError("Solution is not finite.")
    return x


def solve_general(H, b):
    """Solve H x = b for a general square matrix through an LU factorization.

    Raises
    ------
    SingularMatrixError
        If *H* is exactly singular or the solution is not finite.
    """
    b = np.asarray(b)
    H = _as_square(H, dtype=np.result_type(np.asarray(H), b, np.float64))
    b = b.astype(H.dtype)
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            lu, piv = scipy.linalg.lu_factor(H, check_finite=True)
        except (scipy.linalg.LinAlgWarning, np.linalg.LinAlgError, ValueError) as err:
            raise SingularMatrixError("LU factorization failed: {}".format(err)) from err
    if np.any(np.diag(lu) == 0):
        raise SingularMatrixError("Matrix is singular.")
    x = scipy.linalg.lu_solve((lu, piv), b)
    if not np.all(np.isfinite(x)):
        raise SingularMatrixError("Solution is not finite.")
    return x


def min_eigenvalue(H):
    """Return the smallest eigenvalue of the Hermitian matrix *H*.

    Examples
    --------
    >>> min_eigenvalue(np.diag([1.0, 3.0]))
    1.0
    """
    H = as_hermitian(H)
    return float(scipy.linalg.eigh(H, eigvals_only=True, subset_by_index=[0, 0])[0])


def inf_norm_vec(H):
    """Return the largest entry modulus of *H*, or 0 for an empty matrix."""
    H = np.asarray(H)
    if H.size == 0:
        return 0.0
    return float(np.max(np.abs(H)))


def hermitian_sqrt(H, inverse=False, clamp=1e-14):
    """Return the Hermitian square root of the positive semi-definite *H*.

    Eigenvalues are clamped from below at ``clamp * max|eigenvalue|`` before
    taking the root.

    Parameters
    ----------
    H : array_like
        A Hermitian positive semi-definite matrix.

    inverse : bool
        If True, return the inverse square root instead.

    clamp : float
        Relative clamping level for the eigenvalues.

    Returns
    -------
    numpy.ndarray
        The matrix W with W W = H (or its inverse).
    """
    H = as_hermitian(H)
    w, V = scipy.linalg.eigh(H)
    floor = clamp * max(np.max(np.abs(w)), np.finfo(float).tiny)
    if w.min() < floor:
        logger.debug("Clamping eigenvalue %g at %g in Hermitian square root.", w.min(), floor)
    w = np.maximum(w, floor)
    root = 1.0 / np.sqrt(w) if inverse else np.sqrt(w)
    W = (V * root) @ V.conj().T
    return 0.5 * (W + W.conj().T)
