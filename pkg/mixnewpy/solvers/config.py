# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Solver configuration objects.

All configuration objects are frozen dataclasses validated on construction,
so a configuration can be shared freely between worker processes.
"""

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from mixnewpy.numerics.linalg import as_hermitian, min_eigenvalue

__all__ = [
    "METHODS",
    "normalize_method",
    "PenaltyParams",
    "LMParams",
    "CubicParams",
    "StopCriteria",
    "SolverConfig",
]

METHODS = ("mnm", "rmnm_fixed", "rmnm_repulsive", "onm", "lm_mnm", "lm_nm", "cnm", "cmnm")

_ALIASES = {"rmnm": "rmnm_repulsive", "rmnm_penalty": "rmnm_repulsive"}


def normalize_method(method):
    """Return the canonical method name for *method*.

    Names are case insensitive and dashes may replace underscores, so
    ``"LM-MNM"`` and ``"lm_mnm"`` name the same method. ``"rmnm"`` is an
    alias of ``"rmnm_repulsive"``.

    Raises
    ------
    TypeError
        If *method* is not a string.

    ValueError
        If *method* is not a known method.
    """
    if not isinstance(method, str):
        raise TypeError("Method must be a string.")
    name = method.strip().lower().replace("-", "_")
    name = _ALIASES.get(name, name)
    if name not in METHODS:
        raise ValueError("Unknown method '{}'; expected one of {}.".format(method, ", ".join(METHODS)))
    return name


def _check_positive(name, value):
    if not isinstance(value, (int, float, np.integer, np.floating)) or isinstance(value, bool):
        raise TypeError("{} must be a real number.".format(name))
    if not value > 0:
        raise ValueError("{} must be positive.".format(name))


@dataclass(frozen=True)
class PenaltyParams:
    """Weighting of the complex-repulsive penalty."""

    gamma: float

    def __post_init__(self):
        _check_positive("gamma", self.gamma)


@dataclass(frozen=True)
class LMParams:
    """Hyper-parameters of the Levenberg-Marquardt adaptive control.

    Parameters
    ----------
    lambda0 : float
        Initial regularization, nonnegative. Defaults to 0.01.

    alpha : float
        Multiplicative update factor, greater than 1. Defaults to 10.

    mu : float
        Step scale, positive. Defaults to 1.

    max_increases : int
        Number of consecutive increases of lambda allowed within one
        iteration before the run stops with a numeric error.
    """

    lambda0: float = 0.01
    alpha: float = 10.0
    mu: float = 1.0
    max_increases: int = 100

    def __post_init__(self):
        if not self.lambda0 >= 0:
            raise ValueError("lambda0 must be nonnegative.")
        if not self.alpha > 1:
            raise ValueError("alpha must be greater than 1.")
        _check_positive("mu", self.mu)
        _check_positive("max_increases", self.max_increases)


@dataclass(frozen=True)
class CubicParams:
    """Parameters of the cubic-regularized methods.

    With ``line_search`` enabled, L is doubled (at most ``max_doublings``
    times per iteration) while the new objective exceeds the cubic model
    bound; the doubled value is kept for later iterations.
    """

    L: float = 1.0
    line_search: bool = False
    max_doublings: int = 50

    def __post_init__(self):
        _check_positive("L", self.L)
        _check_positive("max_doublings", self.max_doublings)


@dataclass(frozen=True)
class StopCriteria:
    """Stopping rules shared by every method.

    Parameters
    ----------
    grad_tol : float
        Stop as converged when the Wirtinger gradient norm is below this.

    step_tol : float
        Stop as converged when the last step was shorter than this.

    max_iters : int
        Stop after this many iterations.

    divergence_bound : float
        Stop as diverged when an iterate leaves the ball of this radius.

    keep_history : bool
        If False only the first and the latest records are kept.
    """

    grad_tol: float = 1e-10
    step_tol: float = 1e-12
    max_iters: int = 1000
    divergence_bound: float = 1e8
    keep_history: bool = True

    def __post_init__(self):
        if not self.grad_tol >= 0 or not self.step_tol >= 0:
            raise ValueError("Tolerances must be nonnegative.")
        if not float(self.max_iters).is_integer() or self.max_iters < 0:
            raise ValueError("max_iters must be a nonnegative integer.")
        _check_positive("divergence_bound", self.divergence_bound)


@dataclass(frozen=True)
class SolverConfig:
    """Method selection and parameters for :func:`mixnewpy.run`.

    Parameters
    ----------
    method : str
        One of ``mnm``, ``rmnm_fixed``, ``rmnm_repulsive``, ``onm``,
        ``lm_mnm``, ``lm_nm``, ``cnm``, ``cmnm``.

    P : array_like, optional
        Hermitian positive definite regularizer, required by ``rmnm_fixed``.

    penalty : PenaltyParams, optional
        Required by ``rmnm_repulsive``.

    lm : LMParams
        Used by ``lm_mnm`` and ``lm_nm``.

    cubic : CubicParams
        Used by ``cnm`` and ``cmnm``.

    stop : StopCriteria
        Stopping rules.
    """

    method: str
    P: Optional[np.ndarray] = None
    penalty: Optional[PenaltyParams] = None
    lm: LMParams = field(default_factory=LMParams)
    cubic: CubicParams = field(default_factory=CubicParams)
    stop: StopCriteria = field(default_factory=StopCriteria)

    def __post_init__(self):
        object.__setattr__(self, "method", normalize_method(self.method))
        if self.P is not None:
            P = as_hermitian(self.P)
            if not min_eigenvalue(P) > 0:
                raise ValueError("P must be positive definite.")
            object.__setattr__(self, "P", P)
        if self.method == "rmnm_fixed" and self.P is None:
            raise ValueError("Method rmnm_fixed requires a positive definite P.")
        if self.method == "rmnm_repulsive" and self.penalty is None:
            raise ValueError("Method rmnm_repulsive requires penalty parameters.")
        if self.penalty is not None and not isinstance(self.penalty, PenaltyParams):
            raise TypeError("penalty must be a PenaltyParams instance.")

    def to_dict(self):
        """Return a flat dictionary describing the configuration."""
        out = {"method": self.method}
        if self.P is not None:
            out["P_min_eigenvalue"] = min_eigenvalue(self.P)
        if self.penalty is not None:
            out["gamma"] = self.penalty.gamma
        if self.method in ("lm_mnm", "lm_nm"):
            out.update({"lm_" + k: v for k, v in asdict(self.lm).items()})
        if self.method in ("cnm", "cmnm"):
            out.update({"cubic_" + k: v for k, v in asdict(self.cubic).items()})
        out.update(asdict(self.stop))
        return out
