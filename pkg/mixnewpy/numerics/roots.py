# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Scalar root finding for the step length of cubic-regularized steps."""

import logging

import numpy as np
import scipy.linalg

from mixnewpy.exceptions import NumericError
from mixnewpy.numerics.linalg import as_hermitian

__all__ = ["SHIFT_FORMS", "shift_for", "delta_lower_bound", "solve_delta"]

logger = logging.getLogger(__name__)

SHIFT_FORMS = ("quarter", "one_plus_quarter")

MAX_BISECTIONS = 200
MAX_EXPANSIONS = 200


def shift_for(delta, L, shift_form):
    """Return the diagonal shift s(delta) for the given *shift_form*.

    ``"quarter"`` gives delta L / 4 and ``"one_plus_quarter"`` gives
    L (1 + delta / 4).
    """
    if shift_form == "quarter":
        return delta * L / 4.0
    elif shift_form == "one_plus_quarter":
        return L * (1.0 + delta / 4.0)
    raise ValueError("Unknown shift form '{}'; expected one of {}.".format(shift_form, SHIFT_FORMS))


def delta_lower_bound(lambda_min, L, shift_form):
    """Return the smallest admissible delta, at which H + s(delta) I becomes
    positive semi-definite."""
    if shift_form == "quarter":
        return 4.0 / L * max(-lambda_min, 0.0)
    elif shift_form == "one_plus_quarter":
        return 4.0 * max(-lambda_min / L - 1.0, 0.0)
    raise ValueError("Unknown shift form '{}'; expected one of {}.".format(shift_form, SHIFT_FORMS))


def solve_delta(H, g, L, shift_form="quarter"):
    """Solve the scalar fixed-point condition delta = ||(H + s(delta) I)^{-1} g||.

    One Hermitian eigendecomposition H = V diag(w) V^* turns the norm into
    ``sqrt(sum |c_i|^2 / (w_i + s)^2)`` with c = V^* g, so each evaluation of

    .. math::

        \\phi(\\delta) = \\|(H + s(\\delta) I)^{-1} g\\| - \\delta

    is cheap. phi is strictly decreasing above the lower bound delta_min; its
    root is bracketed by geometric expansion and then bisected.

    Parameters
    ----------
    H : array_like
        A Hermitian matrix.

    g : array_like
        The right hand side.

    L : float
        A positive Lipschitz-type constant.

    shift_form : str
        ``"quarter"`` (s = delta L / 4) or ``"one_plus_quarter"``
        (s = L (1 + delta / 4)).

    Returns
    -------
    tuple
        ``(delta, x)`` where x solves (H + s(delta) I) x = g and ||x|| = delta.

    Raises
    ------
    ValueError
        If *L* is not positive or *g* is not finite.

    NumericError
        If no sign change exists above delta_min (the hard case) or the
        search does not converge.
    """
    if not L > 0:
        raise ValueError("Expected L to be positive.")
    if shift_form not in SHIFT_FORMS:
        raise ValueError("Unknown shift form '{}'; expected one of {}.".format(shift_form, SHIFT_FORMS))
    H = as_hermitian(H)
    g = np.asarray(g, dtype=np.complex128)
    if not np.all(np.isfinite(g)):
        raise ValueError("Expected a finite right hand side.")
    if np.linalg.norm(g) == 0:
        return 0.0, np.zeros_like(g)

    w, V = scipy.linalg.eigh(H)
    c = V.conj().T @ g
    weights = np.abs(c) ** 2
    delta_min = delta_lower_bound(float(w[0]), L, shift_form)

    def norm_at(delta):
        denom = w + shift_for(delta, L, shift_form)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(weights > 0, weights / denom ** 2, 0.0)
        if np.any((denom <= 0) & (weights > 0)):
            return np.inf
        return float(np.sqrt(np.sum(terms)))

    def phi(delta):
        return norm_at(delta) - delta

    lo = max(delta_min, 1e-12)
    if phi(lo) <= 0:
        if delta_min > 0:
            raise NumericError("No root above delta_min = {:g} (hard case).".format(delta_min))
        lo = 0.0
    hi = max(2.0 * lo, 1.0)
    expansions = 0
    while phi(hi) > 0:
        lo, hi = hi, 2.0 * hi
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            raise NumericError("Could not bracket the root of the step length equation.")

    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        value = phi(mid)
        if abs(value) < 1e-12 * max(1.0, mid):
            lo = hi = mid
            break
        if value > 0:
            lo = mid
        else:
            hi = mid

    delta = lo if abs(phi(lo)) <= abs(phi(hi)) else hi
    residual = abs(phi(delta))
    if not residual < 1e-10 * max(1.0, delta):
        raise NumericError("Step length search did not converge (residual {:g}).".format(residual))
    x = V @ (c / (w + shift_for(delta, L, shift_form)))
    logger.debug("solve_delta: delta=%g (delta_min=%g, residual=%g)", delta, delta_min, residual)
    return delta, x
