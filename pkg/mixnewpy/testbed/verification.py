# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Numerical property checks run by ``mixnewpy verify``."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mixnewpy.analysis.critical_points import signature
from mixnewpy.analysis.dynamics import linearized_dynamics, random_regularizer, verify_stability_theorem
from mixnewpy.core.finite_differences import CorruptedDerivatives, check_derivatives, fd_oracle
from mixnewpy.core.wirtinger import a_block, full_wirtinger_hessian, mixed_hessian, wirtinger_gradient
from mixnewpy.utils.norms import relative_error

__all__ = ["PropertyResult", "random_points", "verify_example"]

logger = logging.getLogger(__name__)

# errors of small blocks are measured against this share of the largest block
DATA_SCALE_FLOOR = 1e-3


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of one property check."""

    name: str
    passed: bool
    detail: str = ""


def random_points(rng, n, count, radius=2.0):
    """Return *count* complex points with real and imaginary parts uniform
    in [-radius, radius]."""
    return rng.uniform(-radius, radius, (count, n)) + 1j * rng.uniform(-radius, radius, (count, n))


def _derivative_errors(system, z):
    fd = fd_oracle(system, z)
    pairs = [
        (wirtinger_gradient(system, z), fd.grad_zbar),
        (mixed_hessian(system, z), fd.B),
        (a_block(system, z), fd.A),
    ]
    floor = DATA_SCALE_FLOOR * max(max(np.linalg.norm(b) for _, b in pairs), np.finfo(float).tiny)
    return max(relative_error(a, b, floor=floor) for a, b in pairs)


def _eigen_errors(system, z):
    fd = fd_oracle(system, z)
    H_r = np.block([[fd.H_xx, fd.H_xy], [fd.H_yx, fd.H_yy]])
    expected = np.sort(scipy.linalg.eigvalsh(0.5 * (H_r + H_r.T))) / 2.0
    actual = np.sort(scipy.linalg.eigvalsh(full_wirtinger_hessian(system, z)))
    return relative_error(actual, expected, floor=np.finfo(float).tiny)


def verify_example(example, trials=10, seed=0, break_derivative=False):
    """Run the property suite on a polynomial example.

    The suite checks analytic derivatives against finite differences and
    holomorphy, positive semi-definiteness and rank of the mixed Hessian, the
    eigenvalue relation between the full Wirtinger Hessian and the real
    Hessian, and at every critical point the stability criterion together
    with the congruence, similarity and identity relations of the
    linearized dynamics for *trials* random regularizers.

    Parameters
    ----------
    example : PolynomialExample
        The example to check.

    trials : int
        Number of random points and random regularizers.

    seed : int
        Seed of the random generator.

    break_derivative : bool
        Check a copy of the system with corrupted first derivatives instead;
        the derivative checks must then fail.

    Returns
    -------
    list of PropertyResult
    """
    if not float(trials).is_integer() or trials < 1:
        raise ValueError("Expected trials to be a positive integer.")
    rng = np.random.default_rng(seed)
    system = CorruptedDerivatives(example) if break_derivative else example
    n, m = system.n, system.m
    points = random_points(rng, n, int(trials))
    results = []

    errors = [_derivative_errors(system, z) for z in points]
    worst = max(errors)
    detail = "max rel. err {:.2e}".format(worst)
    results.append(PropertyResult("derivatives match finite differences", worst < 1e-6, detail))

    checks = [check_derivatives(system, z) for z in points]
    results.append(PropertyResult("residual derivatives are holomorphic", all(c.passed() for c in checks)))

    psd, rank = True, True
    for z in points:
        B = mixed_hessian(system, z)
        w = scipy.linalg.eigvalsh(B)
        psd &= bool(w[0] >= -1e-10 * max(1.0, np.linalg.norm(B)))
        s = scipy.linalg.svdvals(B)
        rank &= bool(np.sum(s > 1e-10 * s[0]) <= m) if s[0] > 0 else True
    results.append(PropertyResult("mixed Hessian is positive semi-definite", psd))
    results.append(PropertyResult("mixed Hessian rank is at most m", rank))

    eigen = max(_eigen_errors(system, z) for z in points)
    detail = "max rel. err {:.2e}".format(eigen)
    results.append(PropertyResult("M eigenvalues are half of the real Hessian's", eigen < 1e-5, detail))

    stable, congruent, similar, identity, maxima = True, True, True, True, True
    for cp in example.critical_points:
        for _ in range(int(trials)):
            P = random_regularizer(n, rng)
            stable &= verify_stability_theorem(system, cp.location, P)
            report = linearized_dynamics(system, cp.location, P)
            congruent &= report.congruent
            similar &= report.similar
            identity &= report.identity_holds
        positive, negative, zero = signature(full_wirtinger_hessian(system, cp.location))
        maxima &= not (positive == 0 and zero == 0)
    results.append(PropertyResult("stability criterion at critical points", stable))
    results.append(PropertyResult("signature of M' equals signature of M", congruent))
    results.append(PropertyResult("spectrum of Y' equals spectrum of Y", similar))
    results.append(PropertyResult("M' equals I - Y'", identity))
    results.append(PropertyResult("no critical point is a maximum", maxima))

    for r in results:
        logger.info("%s: %s %s", "PASS" if r.passed else "FAIL", r.name, r.detail)
    return results
