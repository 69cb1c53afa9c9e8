# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Utility functions for comparing numerical results."""

import math

import numpy as np

__all__ = ["relative_error", "is_perfect_square"]


def relative_error(a, b, floor=1.0):
    """Return ||a - b|| / max(||b||, floor) using the Frobenius norm.

    The default floor of 1 makes the error absolute for small *b*. Pass a
    floor tied to the scale of the data to keep it relative.

    Examples
    --------
    >>> relative_error([1e-3], [2e-3])
    0.001
    >>> relative_error([1e-3], [2e-3], floor=1e-12)
    0.5
    """
    if not floor > 0:
        raise ValueError("Expected floor to be positive.")
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), floor))



def is_perfect_square(count):
    """Return whether the nonnegative integer *count* is a perfect square."""
    if count < 0:
        return False
    root = math.isqrt(count)
    return root * root == count
