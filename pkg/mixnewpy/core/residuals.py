# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Families of holomorphic residuals g_j whose squared moduli are summed.

A residual system over C^n supplies, at any point z, the residual values
g_j(z), the Jacobian whose j-th row is the gradient g_j'(z), and the
(symmetric) second derivatives g_j''(z). The objective is
f(z) = sum_j |g_j(z)|^2.
"""

import numpy as np

__all__ = [
    "ResidualSystem",
    "FunctionResiduals",
    "AffineResiduals",
    "RepulsivePenaltyResiduals",
    "with_repulsive_penalty",
]


class ResidualSystem:
    """Base class for a finite family of holomorphic residuals.

    Subclasses set the attributes ``n`` (dimension) and ``m`` (number of
    residuals) and implement :meth:`values`, :meth:`jacobian` and, when
    second derivatives are available, :meth:`hessians`.

    Evaluations must be pure functions of the point so that systems can be
    shared between threads and pickled to worker processes.
    """

    n = None
    m = None

    def values(self, z):
        """Return the residual values as a complex array of shape ``(m,)``."""
        raise NotImplementedError

    def jacobian(self, z):
        """Return the complex array of shape ``(m, n)`` whose rows are g_j'."""
        raise NotImplementedError

    def hessians(self, z):
        """Return the complex array of shape ``(m, n, n)`` of second derivatives."""
        raise NotImplementedError("Second derivatives are not available for {}.".format(type(self).__name__))

    def has_hessians(self):
        """Return whether :meth:`hessians` is implemented."""
        return type(self).hessians is not ResidualSystem.hessians

    def weighted_hessian(self, z, weights):
        """Return sum_j weights[j] * g_j''(z).

        Systems with many residuals override this to avoid materializing the
        stack of per-residual Hessians.
        """
        return np.einsum("j,jkl->kl", weights, self.hessians(z))


class FunctionResiduals(ResidualSystem):
    """Residual system assembled from per-residual callables.

    Parameters
    ----------
    n : int
        Dimension of the variable z.

    values : list of callables
        ``values[j](z)`` returns the complex scalar g_j(z).

    gradients : list of callables
        ``gradients[j](z)`` returns the length-*n* gradient g_j'(z).

    hessians : list of callables, optional
        ``hessians[j](z)`` returns the *n* x *n* symmetric matrix g_j''(z).
    """

    def __init__(self, n, values, gradients, hessians=None):
        if not float(n).is_integer() or n < 1:
            raise ValueError("Expected n to be a positive integer.")
        if len(values) != len(gradients) or len(values) < 1:
            raise ValueError("Expected one gradient per residual and at least one residual.")
        if hessians is not None and len(hessians) != len(values):
            raise ValueError("Expected one Hessian per residual.")
        self.n = int(n)
        self.m = len(values)
        self._values = list(values)
        self._gradients = list(gradients)
        self._hessians = None if hessians is None else list(hessians)

    def values(self, z):
        return np.array([g(z) for g in self._values], dtype=np.complex128)

    def jacobian(self, z):
        J = np.empty((self.m, self.n), dtype=np.complex128)
        for j, dg in enumerate(self._gradients):
            J[j] = dg(z)
        return J

    def hessians(self, z):
        if self._hessians is None:
            return ResidualSystem.hessians(self, z)
        stack = np.empty((self.m, self.n, self.n), dtype=np.complex128)
        for j, d2g in enumerate(self._hessians):
            stack[j] = d2g(z)
        return stack

    def has_hessians(self):
        return self._hessians is not None


class AffineResiduals(ResidualSystem):
    """Affine residuals g(z) = C z - d.

    Parameters
    ----------
    C : array_like
        Complex matrix of shape ``(m, n)``.

    d : array_like
        Complex vector of length *m*.
    """

    def __init__(self, C, d):
        C = np.atleast_2d(np.asarray(C, dtype=np.complex128))
        d = np.atleast_1d(np.asarray(d, dtype=np.complex128))
        if d.shape != (C.shape[0],):
            raise ValueError("Expected d to have one entry per row of C.")
        self.C = C
        self.d = d
        self.m, self.n = C.shape

    def values(self, z):
        return self.C @ z - self.d

    def jacobian(self, z):
        return self.C.copy()

    def hessians(self, z):
        return np.zeros((self.m, self.n, self.n), dtype=np.complex128)


class RepulsivePenaltyResiduals(ResidualSystem):
    """A residual system extended by the complex-repulsive penalty.

    The 2n residuals gamma * exp(i z_l) and gamma * exp(-i z_l) are appended
    to the residuals of *base*. Their squared moduli sum to
    2 gamma^2 sum_l cosh(2 Im z_l), which is the constant 2 n gamma^2 on the
    real subspace and grows exponentially with the imaginary parts.

    Parameters
    ----------
    base : ResidualSystem
        The system to extend.

    gamma : float
        A positive weighting coefficient.
    """

    def __init__(self, base, gamma):
        if not gamma > 0:
            raise ValueError("Expected gamma to be positive.")
        self.base = base
        self.gamma = float(gamma)
        self.n = base.n
        self.m = base.m + 2 * base.n

    def _exponentials(self, z):
        plus = self.gamma * np.exp(1j * z)
        minus = self.gamma * np.exp(-1j * z)
        return plus, minus

    def values(self, z):
        plus, minus = self._exponentials(z)
        return np.concatenate([self.base.values(z), plus, minus])

    def jacobian(self, z):
        plus, minus = self._exponentials(z)
        return np.vstack([self.base.jacobian(z), np.diag(1j * plus), np.diag(-1j * minus)])

    def hessians(self, z):
        plus, minus = self._exponentials(z)
        n = self.n
        extra = np.zeros((2 * n, n, n), dtype=np.complex128)
        idx = np.arange(n)
        extra[idx, idx, idx] = -plus
        extra[n + idx, idx, idx] = -minus
        return np.concatenate([self.base.hessians(z), extra])

    def weighted_hessian(self, z, weights):
        plus, minus = self._exponentials(z)
        m0, n = self.base.m, self.n
        H = self.base.weighted_hessian(z, weights[:m0])
        H = H - np.diag(weights[m0 : m0 + n] * plus + weights[m0 + n :] * minus)
        return H

    def has_hessians(self):
        return self.base.has_hessians()


def with_repulsive_penalty(system, gamma):
    """Return *system* extended by the complex-repulsive penalty residuals.

    See Also
    --------
    RepulsivePenaltyResiduals, repulsive_penalty
    """
    return RepulsivePenaltyResiduals(system, gamma)
