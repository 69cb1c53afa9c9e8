# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Exceptions raised by MixNewPy."""

import numpy as np

__all__ = [
    "MixNewPyException",
    "EvaluationError",
    "SingularMatrixError",
    "NumericError",
    "NotCriticalPointError",
    "ParseError",
]


class MixNewPyException(Exception):
    """Base class for exceptions in MixNewPy."""


class EvaluationError(MixNewPyException, ValueError):
    """Raised when a residual or one of its derivatives is not finite.

    Parameters
    ----------
    message : str
        Human readable description.

    index : int, optional
        Index of the offending residual, if known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SingularMatrixError(MixNewPyException, np.linalg.LinAlgError):
    """Raised when a matrix factorization fails."""


class NumericError(MixNewPyException, ArithmeticError):
    """Raised when an inner numerical search does not converge."""


class NotCriticalPointError(MixNewPyException, ValueError):
    """Raised when a point expected to be critical has a large gradient."""


class ParseError(MixNewPyException, ValueError):
    """Raised when an input file cannot be parsed.

    Parameters
    ----------
    message : str
        Human readable description.

    line_number : int, optional
        1-based number of the offending line.
    """

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = "line {}: {}".format(line_number, message)
        super().__init__(message)
        self.line_number = line_number
