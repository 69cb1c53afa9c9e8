# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Classification of critical points by the signature of the full Wirtinger
Hessian."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from mixnewpy.core.vectors import as_cvector
from mixnewpy.core.wirtinger import eval_objective, full_wirtinger_hessian, wirtinger_gradient
from mixnewpy.exceptions import NotCriticalPointError

__all__ = ["CLASSIFICATIONS", "CriticalPointRecord", "classify", "signature", "eigenvalue_tolerance"]

CLASSIFICATIONS = ("minimum", "saddle", "maximum", "degenerate")


@dataclass(frozen=True)
class CriticalPointRecord:
    """A critical point of an objective.

    Attributes
    ----------
    location : numpy.ndarray
        The point of C^n.

    objective : float
        The objective value at the point.

    classification : str
        One of ``minimum``, ``saddle``, ``maximum`` or ``degenerate``.

    grad_norm : float
        The norm of the Wirtinger gradient at the point.

    source : str
        ``"reference"`` for the tabulated reference points, ``"found"`` otherwise.

    label : str, optional
        A name such as ``"global"`` or ``"saddle"``.
    """

    location: np.ndarray
    objective: float
    classification: str
    grad_norm: float
    source: str = "found"
    label: Optional[str] = None


def eigenvalue_tolerance(M, rel_tol=1e-8, abs_tol=1e-12):
    """Return the threshold separating signed from zero eigenvalues of *M*."""
    return rel_tol * np.linalg.norm(M, 2) + abs_tol


def signature(H, tol=None):
    """Return the numbers of positive, negative and zero eigenvalues of the
    Hermitian matrix *H*.

    Parameters
    ----------
    H : array_like
        A Hermitian matrix.

    tol : float, optional
        Eigenvalues with modulus at most *tol* count as zero. Defaults to
        :func:`eigenvalue_tolerance` of *H*.

    Returns
    -------
    tuple
        ``(positive, negative, zero)``.
    """
    H = np.asarray(H)
    if tol is None:
        tol = eigenvalue_tolerance(H)
    w = scipy.linalg.eigvalsh(0.5 * (H + H.conj().T))
    return int(np.sum(w > tol)), int(np.sum(w < -tol)), int(np.sum(np.abs(w) <= tol))


def classify(system, z, tol=1e-8, source="found", label=None, objective=None):
    """Classify the critical point *z* of the objective of *system*.

    The full Wirtinger Hessian M = [[conj(B), conj(A)], [A, B]] has the same
    signature as the Hessian of the objective in real coordinates. The point
    is a ``minimum`` if M is positive definite, a ``saddle`` if M has
    eigenvalues of both signs, a ``maximum`` if M is negative definite and
    ``degenerate`` otherwise. Eigenvalues within ``1e-8 ||M|| + 1e-12`` of
    zero count as zero.

    Parameters
    ----------
    system : ResidualSystem
        The residual system.

    z : array_like
        The candidate critical point.

    tol : float
        The gradient norm below which *z* counts as critical.

    source, label : str
        Stored in the returned record.

    objective : float, optional
        The objective value to store. Defaults to the value of the system
        objective at *z*.

    Returns
    -------
    CriticalPointRecord

    Raises
    ------
    NotCriticalPointError
        If the Wirtinger gradient norm at *z* is not below *tol*.

    Examples
    --------
    >>> import mixnewpy as mp
    >>> mp.classify(mp.example(2), (1, 1)).classification
    'saddle'
    """
    z = as_cvector(z, system.n)
    grad_norm = float(np.linalg.norm(wirtinger_gradient(system, z)))
    if not grad_norm < tol:
        raise NotCriticalPointError("Gradient norm {:g} is not below {:g}.".format(grad_norm, tol))
    positive, negative, zero = signature(full_wirtinger_hessian(system, z))
    if zero == 0 and negative == 0:
        kind = "minimum"
    elif positive > 0 and negative > 0:
        kind = "saddle"
    elif zero == 0 and positive == 0:
        kind = "maximum"
    else:
        kind = "degenerate"
    if objective is None:
        objective = eval_objective(system, z)
    return CriticalPointRecord(z, float(objective), kind, grad_norm, source, label)
