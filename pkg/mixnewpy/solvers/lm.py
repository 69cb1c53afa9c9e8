# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Levenberg-Marquardt adaptive regularization control.

Each iteration tries ``z - mu (H + lambda ||vec(H)||_inf I)^{-1} df/dz-bar``.
A step that decreases the objective is accepted and lambda is divided by
alpha; otherwise lambda is multiplied by alpha and the step is retried from
the stored point. H is the mixed Hessian B (LM-MNM) or the effective
Hessian B + Re(A) (LM-NM).
"""

import logging
import time

import numpy as np

from mixnewpy.core.vectors import as_cvector
from mixnewpy.core.wirtinger import effective_hessian, wirtinger_eval
from mixnewpy.exceptions import EvaluationError, SingularMatrixError
from mixnewpy.numerics.linalg import inf_norm_vec, solve_hpd
from mixnewpy.solvers.config import SolverConfig
from mixnewpy.solvers.trace import IterationRecord, Trace

__all__ = ["lm_adaptive_run", "LAMBDA_RESTART"]

logger = logging.getLogger(__name__)

LAMBDA_RESTART = 1e-8


def _assemble(system, z, full):
    ev = wirtinger_eval(system, z, with_a_block=full)
    H = effective_hessian(ev) if full else ev.B
    return ev.f, ev.grad_zbar, H


def lm_adaptive_run(system, z0, config):
    """Run the Levenberg-Marquardt adaptive control from *z0*.

    Parameters
    ----------
    system : ResidualSystem
        The residual system.

    z0 : array_like
        The starting point.

    config : SolverConfig
        A configuration with method ``lm_mnm`` or ``lm_nm``.

    Returns
    -------
    Trace
        One record per accepted iteration with ``param`` set to the value of
        lambda after the update. The recorded objective values are strictly
        decreasing.

    Notes
    -----
    A singular regularized matrix or a non-finite trial objective counts as
    no decrease. With a positive lambda only a failed Cholesky factorization
    makes the regularized matrix singular. A lambda of zero that has to grow restarts from 1e-8, and a
    zero Hessian uses the scale 1 in place of ``||vec(H)||_inf``. The run stops
    as converged when a trial step is shorter than ``step_tol`` and as
    ``numeric_error`` when lambda had to grow ``max_increases`` times in a
    row.
    """
    if not isinstance(config, SolverConfig):
        raise TypeError("config must be a SolverConfig.")
    if config.method not in ("lm_mnm", "lm_nm"):
        raise ValueError("lm_adaptive_run expects method lm_mnm or lm_nm, got {}.".format(config.method))
    full = config.method == "lm_nm"
    params, stop = config.lm, config.stop
    trace = Trace(config.method, keep_history=stop.keep_history)
    start = time.perf_counter()

    z = as_cvector(z0, system.n)
    lam = float(params.lambda0)
    try:
        f, grad, H = _assemble(system, z, full)
    except EvaluationError as err:
        trace.finish("diverged", str(err))
        return trace
    grad_norm = float(np.linalg.norm(grad))
    trace.append(IterationRecord(0, z, f, grad_norm, 0.0, lam))
    k = 0

    while True:
        if grad_norm < stop.grad_tol:
            trace.finish("converged", "gradient norm below tolerance")
            break
        if k >= stop.max_iters:
            trace.finish("max_iters")
            break

        scale = inf_norm_vec(H) or 1.0
        eye = np.eye(system.n)
        increases = 0
        accepted = None
        while accepted is None:
            try:
                step = params.mu * solve_hpd(H + lam * scale * eye, grad, check_pivots=lam == 0)
            except SingularMatrixError:
                step = None
            if step is not None:
                step_norm = float(np.linalg.norm(step))
                if step_norm < stop.step_tol:
                    break
                z_new = z - step
                try:
                    f_new, grad_new, H_new = _assemble(system, z_new, full)
                except EvaluationError:
                    f_new = np.inf
                if f_new < f:
                    lam = lam / params.alpha
                    accepted = (z_new, f_new, grad_new, H_new, step_norm)
                    continue
            lam = lam * params.alpha if lam > 0 else LAMBDA_RESTART
            increases += 1
            if increases > params.max_increases:
                break

        if accepted is None:
            if increases > params.max_increases:
                logger.warning("Regularization grew %d times without decrease at iteration %d.", increases, k)
                trace.finish("numeric_error", "lambda increased too many times")
            else:
                trace.finish("converged", "step length below tolerance")
            break

        z, f, grad, H, step_norm = accepted
        k += 1
        grad_norm = float(np.linalg.norm(grad))
        trace.append(IterationRecord(k, z, f, grad_norm, step_norm, lam))
        logger.debug("%s iter %d: f=%.6e |grad|=%.3e lambda=%.3e", config.method, k, f, grad_norm, lam)

    trace.elapsed = time.perf_counter() - start
    return trace
