# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Local dynamics of the regularized mixed Newton method near a critical
point.

Near a critical point z the errors (d, conj(d)) of the iteration
z - (B + P)^{-1} df/dz-bar evolve, to first order, by the linear map

.. math::

    Y = \\begin{pmatrix} I - (B+P)^{-1} B & -(B+P)^{-1} A \\\\
        -(\\bar B + \\bar P)^{-1} \\bar A & I - (\\bar B + \\bar P)^{-1} \\bar B \\end{pmatrix}.

With W = (B + P)^{1/2}, Q = W^{-1} P W^{-1} and S = W^{-1} A conj(W)^{-1},
Y is similar to the Hermitian matrix Y' = [[conj(Q), -conj(S)], [-S, Q]] and
the full Wirtinger Hessian M is congruent to M' = I - Y'. The iteration is
strictly stable exactly when M is positive definite.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mixnewpy.analysis.critical_points import eigenvalue_tolerance, signature
from mixnewpy.core.vectors import as_cvector
from mixnewpy.core.wirtinger import _assemble_m, wirtinger_eval
from mixnewpy.numerics.linalg import as_hermitian, hermitian_sqrt, solve_hpd
from mixnewpy.solvers.steps import rmnm_fixed_step

__all__ = [
    "DynamicsReport",
    "linearized_dynamics",
    "verify_stability_theorem",
    "empirical_rate",
    "random_regularizer",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DynamicsReport:
    """Linearized dynamics of the regularized mixed Newton method at a point.

    Attributes
    ----------
    Y : numpy.ndarray
        The 2n x 2n iteration matrix.

    spectral_radius : float
        The spectral radius of Y.

    M_min_eig : float
        The smallest eigenvalue of the full Wirtinger Hessian M.

    M_prime_spectrum_in_0_2 : bool
        Whether every eigenvalue of M' lies in the open interval (0, 2).

    stable : bool
        Whether the spectral radius is below 1.

    M, M_prime, Y_prime : numpy.ndarray
        The matrices used by the congruence and similarity checks.

    congruent : bool
        Whether M and M' have the same signature.

    similar : bool
        Whether the sorted spectra of Y and Y' agree to 1e-8.

    identity_residual : float
        The largest entry of |M' - (I - Y')|.

    identity_holds : bool
        Whether the identity residual is below 1e-10 max(1, ||M'||_2).
    """

    Y: np.ndarray
    spectral_radius: float
    M_min_eig: float
    M_prime_spectrum_in_0_2: bool
    stable: bool
    M: np.ndarray
    M_prime: np.ndarray
    Y_prime: np.ndarray
    congruent: bool
    similar: bool
    identity_residual: float
    identity_holds: bool


def _as_regularizer(P, n):
    P = np.asarray(P, dtype=np.complex128)
    if P.ndim == 0:
        return P * np.eye(n)
    return as_hermitian(P)


def _sorted_spectrum(X):
    w = np.linalg.eigvals(X)
    return w[np.lexsort((w.imag, w.real))]


def linearized_dynamics(system, z, P):
    """Return the :class:`DynamicsReport` of the iteration with regularizer
    *P* at the critical point *z*.

    Parameters
    ----------
    system : ResidualSystem
        A system with second derivatives.

    z : array_like
        A critical point.

    P : array_like
        A Hermitian matrix with B + P positive definite, or a scalar p
        standing for p I. ``P = 0`` is allowed when B itself is positive
        definite.

    Raises
    ------
    SingularMatrixError
        If B + P is not positive definite.
    """
    z = as_cvector(z, system.n)
    n = system.n
    ev = wirtinger_eval(system, z, with_a_block=True)
    A, B = ev.A, ev.B
    P = _as_regularizer(P, n)
    BP = B + P
    eye = np.eye(n)

    BP_inv_B = solve_hpd(BP, B)
    BP_inv_A = solve_hpd(BP, A)
    Y = np.block([[eye - BP_inv_B, -BP_inv_A], [-BP_inv_A.conj(), eye - BP_inv_B.conj()]])
    spectral_radius = float(np.max(np.abs(np.linalg.eigvals(Y))))

    W_inv = hermitian_sqrt(BP, inverse=True)
    Q = W_inv @ P @ W_inv
    S = W_inv @ A @ W_inv.conj()
    Y_prime = np.block([[Q.conj(), -S.conj()], [-S, Q]])
    M_prime = np.block([[eye - Q.conj(), S.conj()], [S, eye - Q]])
    M_prime = 0.5 * (M_prime + M_prime.conj().T)
    M = _assemble_m(A, B)

    w_m = scipy.linalg.eigvalsh(M)
    w_mp = scipy.linalg.eigvalsh(M_prime)
    tol = eigenvalue_tolerance(M)
    congruent = signature(M, tol) == signature(M_prime, eigenvalue_tolerance(M_prime))
    spectrum_gap = np.max(np.abs(_sorted_spectrum(Y) - _sorted_spectrum(Y_prime)))
    similar = bool(spectrum_gap < 1e-8 * max(1.0, spectral_radius))
    identity_residual = float(np.max(np.abs(M_prime - (np.eye(2 * n) - Y_prime))))
    identity_bound = 1e-10 * max(1.0, float(np.max(np.abs(w_mp))))

    return DynamicsReport(
        Y=Y,
        spectral_radius=spectral_radius,
        M_min_eig=float(w_m[0]),
        M_prime_spectrum_in_0_2=bool(w_mp[0] > 0 and w_mp[-1] < 2),
        stable=spectral_radius < 1,
        M=M,
        M_prime=M_prime,
        Y_prime=Y_prime,
        congruent=bool(congruent),
        similar=similar,
        identity_residual=identity_residual,
        identity_holds=identity_residual < identity_bound,
    )


def verify_stability_theorem(system, z, P, rho_tol=1e-9):
    """Return whether the stability criterion holds at the critical point *z*.

    The criterion is: the spectral radius of Y is below 1 if and only if M is
    positive definite, and in that case the spectrum of M' lies in (0, 2).
    At a degenerate point (M positive semi-definite and singular) the
    spectral radius must instead be 1 up to *rho_tol* or larger.

    Returns
    -------
    bool
        True if the criterion holds.
    """
    report = linearized_dynamics(system, z, P)
    tol = eigenvalue_tolerance(report.M)
    definite = report.M_min_eig > tol
    degenerate = abs(report.M_min_eig) <= tol
    if definite:
        ok = report.spectral_radius < 1 - rho_tol and report.M_prime_spectrum_in_0_2
    elif degenerate:
        ok = report.spectral_radius > 1 - 1e3 * rho_tol
    else:
        ok = report.spectral_radius > 1 + rho_tol
    if not ok:
        logger.warning(
            "Stability criterion fails at %s: rho(Y)=%.12g, lambda_min(M)=%.3g",
            z,
            report.spectral_radius,
            report.M_min_eig,
        )
    return bool(ok)


def random_regularizer(n, rng, low=1e-6, high=1.0):
    """Return a random Hermitian positive definite n x n matrix whose scale
    is log-uniform in [low, high]."""
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    scale = 10 ** rng.uniform(np.log10(low), np.log10(high))
    P = scale * (G @ G.conj().T / n + 0.1 * np.eye(n))
    return as_hermitian(P)


def empirical_rate(system, z, P, trials, seed=0, perturbation=1e-4, window=(5, 20)):
    """Return the median geometric decay rate of the error of the fixed
    regularized mixed Newton method started near *z*.

    Each trial starts at ``z + perturbation * u`` for a random complex unit
    vector u and fits log ||z_k - z|| linearly over the iterations in
    *window*. When the error reaches round-off before the window ends, the
    rate ``(e_K / e_0)^(1/K)`` at the first such iteration K is used.

    Raises
    ------
    ValueError
        If *trials* is not a positive integer.
    """
    if not float(trials).is_integer() or trials < 1:
        raise ValueError("Expected trials to be a positive integer.")
    z = as_cvector(z, system.n)
    n = system.n
    P = _as_regularizer(P, n)
    rng = np.random.default_rng(seed)
    first, last = window
    floor = 1e-13 * max(1.0, np.linalg.norm(z))
    rates = []
    for _ in range(int(trials)):
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x = z + perturbation * u / np.linalg.norm(u)
        errors = [np.linalg.norm(x - z)]
        for _ in range(last):
            x = rmnm_fixed_step(system, x, P)
            errors.append(np.linalg.norm(x - z))
            if errors[-1] <= floor:
                break
        errors = np.asarray(errors)
        if len(errors) > last and np.all(errors[first:] > floor):
            k = np.arange(first, last + 1)
            slope = np.polyfit(k, np.log(errors[first:]), 1)[0]
            rates.append(float(np.exp(slope)))
        else:
            K = len(errors) - 1
            rates.append(float((max(errors[K], 1e-300) / errors[0]) ** (1.0 / K)))
    return float(np.median(rates))
