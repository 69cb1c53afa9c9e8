# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""The shared iteration driver for all methods."""

import logging
import time

import numpy as np

from mixnewpy.core.vectors import as_cvector, is_real_vector
from mixnewpy.core.wirtinger import effective_hessian, eval_objective, residual_values, wirtinger_eval
from mixnewpy.exceptions import EvaluationError, NumericError, SingularMatrixError
from mixnewpy.numerics.linalg import solve_general, solve_hpd
from mixnewpy.solvers.config import SolverConfig
from mixnewpy.solvers.lm import lm_adaptive_run
from mixnewpy.solvers.steps import _cmnm_solve, _cnm_solve, _onm_blocks, _penalized_blocks
from mixnewpy.solvers.steps import cmnm_model, cnm_model
from mixnewpy.solvers.trace import IterationRecord, Trace

__all__ = ["run"]

logger = logging.getLogger(__name__)


class _Cubic:
    """Cubic step with an optional doubling of L that persists between
    iterations."""

    def __init__(self, system, config):
        self.system = system
        self.L = float(config.cubic.L)
        self.line_search = config.cubic.line_search
        self.max_doublings = config.cubic.max_doublings
        self.full = config.method == "cnm"

    def prepare(self, z):
        ev = wirtinger_eval(self.system, z, with_a_block=self.full)
        H = effective_hessian(ev) if self.full else ev.B

        def advance():
            for _ in range(self.max_doublings + 1):
                if self.full:
                    delta, x = _cnm_solve(ev, self.L)
                    bound = cnm_model(ev.f, ev.grad_zbar, H, -x, self.L)
                else:
                    delta, x = _cmnm_solve(ev, self.L)
                    bound = cmnm_model(ev.f, ev.grad_zbar, H, -x, self.L)
                z_new = z - x
                if not self.line_search:
                    return z_new, delta
                try:
                    f_new = eval_objective(self.system, z_new)
                except EvaluationError:
                    f_new = np.inf
                if f_new <= bound + 1e-12 * max(1.0, abs(bound)):
                    return z_new, delta
                self.L *= 2.0
                logger.debug("Cubic model bound violated; doubling L to %g.", self.L)
            raise NumericError("Cubic model bound still violated after {} doublings of L.".format(self.max_doublings))

        return ev.f, ev.grad_zbar, advance


def _prepare_mnm(system, z, P=None):
    ev = wirtinger_eval(system, z)
    H = ev.B if P is None else ev.B + P

    def advance():
        return z - solve_hpd(H, ev.grad_zbar), None

    return ev.f, ev.grad_zbar, advance


def _prepare_repulsive(system, z, gamma):
    f, grad, solve = _penalized_blocks(system, z, gamma)

    def advance():
        return z - solve(), None

    return f, grad, advance


def _prepare_onm(system, z):
    x = z.real
    grad, H = _onm_blocks(system, x)
    g = residual_values(system, x)
    f = float(np.real(np.vdot(g, g)))

    def advance():
        return (x - solve_general(H, grad)).astype(np.complex128), None

    return f, grad, advance


def _preparer(system, config):
    method = config.method
    if method == "mnm":
        return lambda z: _prepare_mnm(system, z)
    elif method == "rmnm_fixed":
        return lambda z: _prepare_mnm(system, z, config.P)
    elif method == "rmnm_repulsive":
        return lambda z: _prepare_repulsive(system, z, config.penalty.gamma)
    elif method == "onm":
        return lambda z: _prepare_onm(system, z)
    return _Cubic(system, config).prepare


def run(system, z0, config):
    """Iterate the configured method from *z0* and return its trace.

    Parameters
    ----------
    system : ResidualSystem
        The residual system.

    z0 : array_like
        The starting point. Must be real for the ``onm`` method.

    config : SolverConfig
        The method and its parameters.

    Returns
    -------
    Trace
        The records of the run and its terminal status:

        * ``converged`` when the gradient norm drops below ``grad_tol`` or a
          step is shorter than ``step_tol``;
        * ``max_iters`` when ``max_iters`` iterations were performed;
        * ``diverged`` when an iterate leaves the ball of radius
          ``divergence_bound``, is not finite, or cannot be evaluated, and
          when the ordinary Newton matrix is singular;
        * ``numeric_error`` when a linear solve or a step length search of
          the other methods fails.

    Notes
    -----
    For ``rmnm_repulsive`` the recorded objective and gradient include the
    penalty term. The run is a deterministic function of its inputs.

    See Also
    --------
    SolverConfig, lm_adaptive_run

    Examples
    --------
    >>> import mixnewpy as mp
    >>> sys = mp.AffineResiduals([[1.0]], [2.0])
    >>> trace = mp.run(sys, [0.0], mp.SolverConfig("mnm"))
    >>> trace.status
    'converged'
    """
    if not isinstance(config, SolverConfig):
        raise TypeError("config must be a SolverConfig.")
    if config.method in ("lm_mnm", "lm_nm"):
        return lm_adaptive_run(system, z0, config)

    z = as_cvector(z0, system.n)
    if config.method == "onm" and not is_real_vector(z):
        raise ValueError("The ordinary Newton method needs a real starting point.")
    stop = config.stop
    trace = Trace(config.method, keep_history=stop.keep_history)
    prepare = _preparer(system, config)
    failure_status = "diverged" if config.method == "onm" else "numeric_error"
    start = time.perf_counter()

    k, step_norm, param = 0, 0.0, None
    while True:
        try:
            f, grad, advance = prepare(z)
        except EvaluationError as err:
            trace.finish("diverged", str(err))
            break
        grad_norm = float(np.linalg.norm(grad))
        trace.append(IterationRecord(k, z, f, grad_norm, step_norm, param))
        if grad_norm < stop.grad_tol:
            trace.finish("converged", "gradient norm below tolerance")
            break
        if k > 0 and step_norm < stop.step_tol:
            trace.finish("converged", "step length below tolerance")
            break
        if k >= stop.max_iters:
            trace.finish("max_iters")
            break
        try:
            z_new, param = advance()
        except SingularMatrixError as err:
            trace.finish(failure_status, str(err))
            break
        except NumericError as err:
            trace.finish("numeric_error", str(err))
            break
        if not np.all(np.isfinite(z_new)) or np.linalg.norm(z_new) > stop.divergence_bound:
            trace.finish("diverged", "iterate left the ball of radius {:g}".format(stop.divergence_bound))
            break
        step_norm = float(np.linalg.norm(z_new - z))
        z = z_new
        k += 1

    trace.elapsed = time.perf_counter() - start
    logger.debug("%s finished with status %s after %d iterations.", config.method, trace.status, k)
    return trace
