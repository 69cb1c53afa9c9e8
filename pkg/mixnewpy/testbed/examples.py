# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Polynomial test problems in two variables.

Three polynomials are provided:

1. ``(2 x1 - 3 x2)^2 + x1^2 (1 - x1)^2 + x2^2 (1 - x2)^2``
2. ``(x1 - x2)^2 + x1^2 (1 - x1)^2 + x2^2 (2 - x2)^2``
3. ``(x1 + 1)^4 + (x2 + 1)^4 + 4 x1 x2``

Each has a global minimum, one or two local minima and a saddle point. The
polynomial F is minimized either as the squared modulus of the single
holomorphic residual ``g0 = F - c`` (the default ``"single"`` mode) or, for
the first two, as the sum of the squared moduli of its three terms
(``"sum_of_squares"`` mode).
"""

import functools
import logging

import numpy as np

from mixnewpy.analysis.critical_points import classify
from mixnewpy.core.residuals import ResidualSystem
from mixnewpy.core.vectors import as_cvector
from mixnewpy.exceptions import NumericError
from mixnewpy.numerics.linalg import solve_general

__all__ = [
    "ThreeSquares",
    "SquaredSum",
    "CoupledQuartic",
    "PolynomialExample",
    "MODES",
    "example",
    "refine_critical_point",
]

logger = logging.getLogger(__name__)

MODES = ("single", "sum_of_squares")


class ThreeSquares(ResidualSystem):
    """The residuals ``p x1 - q x2``, ``x1 (1 - x1)`` and ``x2 (r - x2)``.

    ``ThreeSquares(2, 3, 1)`` and ``ThreeSquares(1, 1, 2)`` are the terms of
    the first and second polynomial.
    """

    n = 2
    m = 3

    def __init__(self, p, q, r):
        self.p, self.q, self.r = float(p), float(q), float(r)

    def values(self, z):
        x1, x2 = z[0], z[1]
        return np.array([self.p * x1 - self.q * x2, x1 * (1 - x1), x2 * (self.r - x2)], dtype=np.complex128)

    def jacobian(self, z):
        x1, x2 = z[0], z[1]
        return np.array([[self.p, -self.q], [1 - 2 * x1, 0], [0, self.r - 2 * x2]], dtype=np.complex128)

    def hessians(self, z):
        stack = np.zeros((3, 2, 2), dtype=np.complex128)
        stack[1, 0, 0] = -2.0
        stack[2, 1, 1] = -2.0
        return stack


class SquaredSum(ResidualSystem):
    """The single residual ``g0 = sum_j h_j^2 - shift`` built from the terms
    h_j of another residual system.

    The holomorphic squares are taken without conjugation, so g0 is real
    on the real subspace for real-coefficient terms.
    """

    m = 1

    def __init__(self, terms, shift=0.0):
        self.terms = terms
        self.shift = float(shift)
        self.n = terms.n

    def values(self, z):
        h = self.terms.values(z)
        return np.array([np.sum(h * h) - self.shift], dtype=np.complex128)

    def jacobian(self, z):
        h = self.terms.values(z)
        J = self.terms.jacobian(z)
        return (2.0 * h @ J)[np.newaxis, :]

    def hessians(self, z):
        h = self.terms.values(z)
        J = self.terms.jacobian(z)
        H = 2.0 * (J.T @ J + self.terms.weighted_hessian(z, h))
        return H[np.newaxis, :, :]


class CoupledQuartic(ResidualSystem):
    """The single residual ``(x1 + 1)^4 + (x2 + 1)^4 + 4 x1 x2 - shift``."""

    n = 2
    m = 1

    def __init__(self, shift=0.0):
        self.shift = float(shift)

    def values(self, z):
        x1, x2 = z[0], z[1]
        return np.array([(x1 + 1) ** 4 + (x2 + 1) ** 4 + 4 * x1 * x2 - self.shift], dtype=np.complex128)

    def jacobian(self, z):
        x1, x2 = z[0], z[1]
        return np.array([[4 * (x1 + 1) ** 3 + 4 * x2, 4 * (x2 + 1) ** 3 + 4 * x1]], dtype=np.complex128)

    def hessians(self, z):
        x1, x2 = z[0], z[1]
        return np.array([[[12 * (x1 + 1) ** 2, 4], [4, 12 * (x2 + 1) ** 2]]], dtype=np.complex128)


# reference locations and objective values of the critical points
_SEEDS = {
    1: (
        ("global", (0.0, 0.0), 0.0),
        ("local_1", (1.04987, 0.709507), 0.0460496),
        ("saddle", (0.577876, 0.378919), 0.11525),
    ),
    2: (
        ("global", (0.0, 0.0), 0.0),
        ("local_1", (1.27473, 1.81735), 0.527264593),
        ("saddle", (1.0, 1.0), 1.0),
    ),
    3: (
        ("global", (-0.31767219617, -0.31767219617), 0.83717564078542),
        ("local_1", (0.1537213755, -1.53568738679), 0.90983005625052),
        ("local_2", (-1.53568738679, 0.1537213755), 0.90983005625052),
        ("saddle", (-1.0, 0.0), 1.0),
    ),
}

_TERMS = {1: (2, 3, 1), 2: (1, 1, 2)}

# default gamma, square and number of starts of the basin experiments
_DEFAULTS = {
    1: (1e-3, (-1.0, 2.0), 625),
    2: (1e-3, (-1.0, 3.0), 1024),
    3: (1e-2, (-3.0, 2.0), 2601),
}


def _polynomial_system(id, shift=0.0):
    if id == 3:
        return CoupledQuartic(shift)
    return SquaredSum(ThreeSquares(*_TERMS[id]), shift)


def refine_critical_point(polynomial, seed, tol=1e-13, max_iters=100):
    """Refine a critical point of a real polynomial by damped Newton steps
    on its gradient.

    Parameters
    ----------
    polynomial : ResidualSystem
        A single-residual system whose residual is the polynomial; a
        :class:`PolynomialExample` may be passed instead.

    seed : array_like
        A real starting point.

    tol : float
        Stop once the gradient norm is below *tol*.

    max_iters : int
        The largest number of Newton steps.

    Returns
    -------
    tuple
        ``(location, grad_norm)`` where location is a complex array with zero
        imaginary part.

    Raises
    ------
    NumericError
        If the gradient norm does not drop below 1e-12.
    """
    if isinstance(polynomial, PolynomialExample):
        polynomial = polynomial.polynomial_system
    x = as_cvector(seed, polynomial.n).real

    def gradient(point):
        return np.real(polynomial.jacobian(point)[0])

    g = gradient(x)
    for _ in range(max_iters):
        norm = np.linalg.norm(g)
        if norm < tol:
            break
        d = solve_general(np.real(polynomial.hessians(x)[0]), g)
        t = 1.0
        while t > 1e-10:
            candidate = x - t * d
            g_new = gradient(candidate)
            if np.linalg.norm(g_new) < norm:
                break
            t *= 0.5
        else:
            break
        x, g = candidate, g_new
    grad_norm = float(np.linalg.norm(g))
    if not grad_norm < 1e-12:
        raise NumericError("Refinement from {} stalled with gradient norm {:g}.".format(seed, grad_norm))
    return x.astype(np.complex128), grad_norm


class PolynomialExample(ResidualSystem):
    """One of the polynomial test problems as a residual system.

    Use :func:`example` to construct instances. Residual evaluations are
    delegated to :attr:`system`.

    Attributes
    ----------
    id : int
        1, 2 or 3.

    mode : str
        ``"single"`` or ``"sum_of_squares"``.

    shift : float
        The constant c of the single residual ``g0 = F - c``.

    system : ResidualSystem
        The residual system minimized by the solvers.

    polynomial_system : ResidualSystem
        A single-residual system whose residual is the polynomial F.

    critical_points : tuple of CriticalPointRecord
        The refined critical points labelled ``global``, ``local_1``,
        ``local_2`` (third polynomial only) and ``saddle``.

    gamma, square, starts
        Default parameters of the basin experiment.
    """

    def __init__(self, id, mode, shift, system, polynomial_system):
        self.id = id
        self.mode = mode
        self.shift = shift
        self.system = system
        self.polynomial_system = polynomial_system
        self.n = system.n
        self.m = system.m
        self.gamma, self.square, self.starts = _DEFAULTS[id]
        self.critical_points = ()

    def values(self, z):
        return self.system.values(z)

    def jacobian(self, z):
        return self.system.jacobian(z)

    def hessians(self, z):
        return self.system.hessians(z)

    def weighted_hessian(self, z, weights):
        return self.system.weighted_hessian(z, weights)

    def has_hessians(self):
        return self.system.has_hessians()

    def polynomial(self, z):
        """Return the holomorphic extension of the polynomial at *z*."""
        return complex(self.polynomial_system.values(as_cvector(z, self.n))[0])

    def objective(self, x):
        """Return the value of the polynomial at the real point *x*."""
        return self.polynomial(x).real

    def labels(self):
        return [cp.label for cp in self.critical_points]

    def critical_point(self, label):
        """Return the critical point record with the given *label*.

        Raises
        ------
        KeyError
            If no critical point carries *label*.
        """
        for cp in self.critical_points:
            if cp.label == label:
                return cp
        raise KeyError(label)

    def __repr__(self):
        return "PolynomialExample(id={}, mode={!r}, shift={!r})".format(self.id, self.mode, self.shift)


@functools.lru_cache(maxsize=None)
def example(id, mode="single", shift=None):
    """Return the polynomial test problem *id* with refined critical points.

    Parameters
    ----------
    id : int
        1, 2 or 3.

    mode : str
        ``"single"`` (default) minimizes |F - c|^2 as a single residual;
        ``"sum_of_squares"`` minimizes the sum of the squared moduli of the
        three terms of F (first and second polynomial only).

    shift : float, optional
        The constant c of the single residual. Defaults to the global
        minimum value of F, so that the global minimum is a zero of the
        residual. ``shift=0`` gives the plain complexification of F.

    Returns
    -------
    PolynomialExample

    Raises
    ------
    ValueError
        If *id* or *mode* is invalid, or a shift is given in
        ``sum_of_squares`` mode.

    Examples
    --------
    >>> import mixnewpy as mp
    >>> mp.example(2).objective((1, 1))
    1.0
    """
    if isinstance(id, bool) or id not in _SEEDS:
        raise ValueError("Unknown example {!r}; expected 1, 2 or 3.".format(id))
    if mode not in MODES:
        raise ValueError("Unknown mode '{}'; expected one of {}.".format(mode, MODES))
    if mode == "sum_of_squares" and id not in _TERMS:
        raise ValueError("Example {} is not a sum of polynomial squares.".format(id))
    if mode == "sum_of_squares" and shift not in (None, 0):
        raise ValueError("A shift only applies to the single-residual mode.")

    polynomial_system = _polynomial_system(id)
    refined = []
    for label, seed, value in _SEEDS[id]:
        location, _ = refine_critical_point(polynomial_system, seed)
        refined.append((label, location))
        logger.debug("Example %d: %s refined to %s", id, label, location.real)

    if mode == "single":
        if shift is None:
            shift = float(np.real(polynomial_system.values(refined[0][1])[0]))
        system = _polynomial_system(id, shift)
    else:
        shift = 0.0
        system = ThreeSquares(*_TERMS[id])

    ex = PolynomialExample(id, mode, float(shift), system, polynomial_system)
    ex.critical_points = tuple(
        classify(ex, location, source="reference", label=label, objective=ex.objective(location))
        for label, location in refined
    )
    return ex
