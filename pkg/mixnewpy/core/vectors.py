# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Complex vectors used as points of C^n."""

import numpy as np

__all__ = ["as_cvector", "basis_vector", "is_real_vector"]


def as_cvector(z, n=None):
    """Return *z* as a finite one-dimensional complex array.

    Parameters
    ----------
    z : array_like
        A scalar or a sequence of (complex) numbers.

    n : int, optional
        The expected length of the vector.

    Returns
    -------
    numpy.ndarray
        A new ``complex128`` array of shape ``(n,)``.

    Raises
    ------
    ValueError
        If *z* is empty, not one-dimensional, has the wrong length or
        contains NaN or Inf entries.
    """
    v = np.array(z, dtype=np.complex128, ndmin=1)
    if v.ndim != 1:
        raise ValueError("Expected a one-dimensional vector, got shape {}.".format(v.shape))
    if v.size < 1:
        raise ValueError("Expected a vector of length at least 1.")
    if n is not None and v.size != n:
        raise ValueError("Expected a vector of length {}, got {}.".format(n, v.size))
    if not np.all(np.isfinite(v)):
        raise ValueError("Vector entries must be finite.")
    return v


def basis_vector(n, j):
    """Return the *j*-th standard basis vector of C^n."""
    e = np.zeros(n, dtype=np.complex128)
    e[j] = 1.0
    return e


def is_real_vector(z, tol=0.0):
    """Return whether every entry of *z* has imaginary part at most *tol*."""
    return bool(np.all(np.abs(np.imag(z)) <= tol))
