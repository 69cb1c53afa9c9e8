# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""A one-hidden-layer tanh network with complex parameters as a residual
system.

For a sample x the network output is ``w2^T tanh(W1 x + b1) + b2`` with the
holomorphic complex tanh. The parameters are stored as one flat complex
vector ordered as W1 (row-major, H x M), b1 (H), w2 (H), b2 (1).
"""

from dataclasses import dataclass

import numpy as np

from mixnewpy.core.residuals import ResidualSystem
from mixnewpy.exceptions import EvaluationError

__all__ = ["AXES", "InitSpec", "MlpParams", "parameter_count", "init_params", "MlpResiduals", "mlp_residuals"]

AXES = ("real", "imaginary", "complex")

POLE_TOL = 1e-12


def parameter_count(M, H):
    """Return ``(M + 1) H + (H + 1)``, the number of network parameters."""
    return (M + 1) * H + H + 1


@dataclass(frozen=True)
class InitSpec:
    """Normal initialization of the parameters along one axis of C.

    Parameters
    ----------
    axis : str
        ``"real"`` for real samples, ``"imaginary"`` for purely imaginary
        samples and ``"complex"`` for independent real and imaginary parts.

    std : float
        Standard deviation of every real sample, positive.

    seed : int
        Seed of the random generator.
    """

    axis: str = "complex"
    std: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError("Unknown axis '{}'; expected one of {}.".format(self.axis, AXES))
        if not self.std > 0:
            raise ValueError("std must be positive.")


@dataclass(frozen=True)
class MlpParams:
    """Views into the flat parameter vector of a network with M inputs and H
    hidden neurons."""

    vector: np.ndarray
    M: int
    H: int

    def __post_init__(self):
        vector = np.asarray(self.vector, dtype=np.complex128)
        if vector.shape != (parameter_count(self.M, self.H),):
            raise ValueError(
                "Expected {} parameters for M={}, H={}, got shape {}.".format(
                    parameter_count(self.M, self.H), self.M, self.H, vector.shape
                )
            )
        object.__setattr__(self, "vector", vector)

    @property
    def W1(self):
        return self.vector[: self.H * self.M].reshape(self.H, self.M)

    @property
    def b1(self):
        start = self.H * self.M
        return self.vector[start : start + self.H]

    @property
    def w2(self):
        start = self.H * (self.M + 1)
        return self.vector[start : start + self.H]

    @property
    def b2(self):
        return self.vector[-1]

    def __len__(self):
        return len(self.vector)


def init_params(spec, M, H):
    """Return :class:`MlpParams` with i.i.d. normal(0, std^2) entries.

    Examples
    --------
    >>> params = init_params(InitSpec("real", 0.1, 0), 8, 10)
    >>> len(params), float(abs(params.vector.imag).max())
    (101, 0.0)
    """
    rng = np.random.default_rng(spec.seed)
    size = parameter_count(M, H)
    if spec.axis == "real":
        vector = rng.normal(0.0, spec.std, size) + 0j
    elif spec.axis == "imaginary":
        vector = 1j * rng.normal(0.0, spec.std, size)
    else:
        vector = rng.normal(0.0, spec.std, size) + 1j * rng.normal(0.0, spec.std, size)
    return MlpParams(vector, M, H)


class MlpResiduals(ResidualSystem):
    """Residuals ``r_j = (w2^T tanh(W1 x_j + b1) + b2 - y_j) / sqrt(N)`` as
    holomorphic functions of the flat parameter vector.

    The objective sum_j |r_j|^2 is the mean squared error on the data.

    Parameters
    ----------
    data : Dataset
        The (normalized) training data.

    H : int
        Number of hidden neurons.
    """

    def __init__(self, data, H):
        if not float(H).is_integer() or H < 1:
            raise ValueError("Expected H to be a positive integer.")
        self.X = np.asarray(data.features, dtype=float)
        self.y = np.asarray(data.targets, dtype=float)
        self.N, self.M = self.X.shape
        self.H = int(H)
        self.n = parameter_count(self.M, self.H)
        self.m = self.N
        self._scale = 1.0 / np.sqrt(self.N)
        self._Xt = np.hstack([self.X, np.ones((self.N, 1))])

    def _layer(self, z):
        p = MlpParams(z, self.M, self.H)
        a = self.X @ p.W1.T + p.b1
        c = np.cosh(a)
        bad = np.abs(c) < POLE_TOL
        if np.any(bad):
            j = int(np.flatnonzero(bad.any(axis=1))[0])
            raise EvaluationError("Sample {} is at a pole of tanh.".format(j), index=j)
        return p, np.tanh(a)

    def predict(self, z):
        """Return the network outputs for every sample."""
        p, t = self._layer(z)
        return t @ p.w2 + p.b2

    def values(self, z):
        return (self.predict(z) - self.y) * self._scale

    def jacobian(self, z):
        p, t = self._layer(z)
        s = 1.0 - t * t
        ws = s * p.w2
        dW1 = (ws[:, :, np.newaxis] * self.X[:, np.newaxis, :]).reshape(self.N, -1)
        ones = np.ones((self.N, 1))
        return np.hstack([dW1, ws, t, ones]) * self._scale

    def weighted_hessian(self, z, weights):
        p, t = self._layer(z)
        s = 1.0 - t * t
        u = np.asarray(weights) * self._scale
        M, H = self.M, self.H
        # second derivative of tanh is -2 tanh (1 - tanh^2)
        curvature = u[:, np.newaxis] * p.w2 * (-2.0 * t * s)
        blocks = np.einsum("jh,jk,jl->hkl", curvature, self._Xt, self._Xt)
        cross = np.einsum("jh,jk->hk", u[:, np.newaxis] * s, self._Xt)

        out = np.zeros((self.n, self.n), dtype=np.complex128)
        for h in range(H):
            idx = np.append(np.arange(h * M, (h + 1) * M), H * M + h)
            out[np.ix_(idx, idx)] = blocks[h]
            w2_index = H * (M + 1) + h
            out[idx, w2_index] = cross[h]
            out[w2_index, idx] = cross[h]
        return out

    def hessians(self, z):
        eye = np.eye(self.N)
        return np.stack([self.weighted_hessian(z, eye[j]) for j in range(self.N)])

    def has_hessians(self):
        return True


def mlp_residuals(params, data):
    """Return the :class:`MlpResiduals` of the network shape of *params* on
    *data*."""
    if params.M != data.dimension:
        raise ValueError("Parameters expect {} features, data has {}.".format(params.M, data.dimension))
    return MlpResiduals(data, params.H)
