# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Training of the complex-parameter network with the solvers of
:mod:`mixnewpy.solvers`."""

import csv
import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Optional

from mixnewpy.models.data import normalize, split as split_data
from mixnewpy.models.evaluation import aggregate_trials, metrics
from mixnewpy.models.mlp import MlpParams, init_params, mlp_residuals
from mixnewpy.solvers.driver import run

__all__ = [
    "METRICS_COLUMNS",
    "TRAINING_METHODS",
    "TrainingResult",
    "train",
    "pad_series",
    "write_metrics_csv",
    "write_aggregate_csv",
]

logger = logging.getLogger(__name__)

METRICS_COLUMNS = ("iter", "mse", "r2", "nmse_db", "lambda_or_delta")

TRAINING_METHODS = ("lm_mnm", "lm_nm", "cnm", "cmnm")


@dataclass
class TrainingResult:
    """Outcome of :func:`train`.

    Attributes
    ----------
    trace : Trace
        The solver trace over the parameter vector.

    history : list of dict
        One row per recorded iteration with the keys of
        :data:`METRICS_COLUMNS`, measured on the training data.

    params : MlpParams
        The final parameters.

    summary : dict
        Final training ``mse``, ``r2``, ``nmse_db``, the number of
        ``iterations`` and ``seconds_per_iteration``.

    test_metrics : dict, optional
        Metrics on the held-out part when a split was requested.
    """

    trace: object
    history: list = field(default_factory=list)
    params: Optional[MlpParams] = None
    summary: dict = field(default_factory=dict)
    test_metrics: Optional[dict] = None

    def mse_series(self):
        return [row["mse"] for row in self.history]


def train(data, H, init, config, iters, split=None, split_seed=0):
    """Train a one-hidden-layer network on *data*.

    Parameters
    ----------
    data : Dataset
        The dataset. It is normalized first unless it already is.

    H : int
        Number of hidden neurons.

    init : InitSpec
        Initialization of the parameters.

    config : SolverConfig
        A configuration with method ``lm_mnm``, ``lm_nm``, ``cnm`` or
        ``cmnm``. Its iteration cap is replaced by *iters*.

    iters : int
        The number of iterations.

    split : float, optional
        If given, train on this fraction of the rows and report test metrics
        on the rest.

    split_seed : int
        Seed of the row shuffle used by the split.

    Returns
    -------
    TrainingResult

    Notes
    -----
    With real data and ``init.axis == "real"`` the parameters stay real for
    every method whose step keeps real points real, in particular LM-MNM.
    """
    if config.method not in TRAINING_METHODS:
        raise ValueError("Training needs one of {}, got {}.".format(TRAINING_METHODS, config.method))
    if not data.normalized:
        data = normalize(data)
    test = None
    if split is not None:
        data, test = split_data(data, split, split_seed)

    params = init_params(init, data.dimension, H)
    system = mlp_residuals(params, data)
    stop = dataclasses.replace(config.stop, max_iters=int(iters), keep_history=True)
    config = dataclasses.replace(config, stop=stop)
    logger.info(
        "Training %s on %d samples, %d parameters, %s init, %d iterations.",
        config.method,
        data.size,
        system.n,
        init.axis,
        iters,
    )

    trace = run(system, params.vector, config)
    history = []
    for record in trace.records:
        row = metrics(system.predict(record.z), data.targets)
        history.append(
            {
                "iter": record.k,
                "mse": row["mse"],
                "r2": row["r2"],
                "nmse_db": row["nmse_db"],
                "lambda_or_delta": "" if record.param is None else record.param,
            }
        )

    final = MlpParams(trace.final_point(), data.dimension, H)
    last = history[-1]
    summary = {
        "mse": last["mse"],
        "r2": last["r2"],
        "nmse_db": last["nmse_db"],
        "iterations": trace.iterations(),
        "status": trace.status,
        "seconds_per_iteration": trace.seconds_per_iteration(),
    }
    test_metrics = None
    if test is not None:
        test_system = mlp_residuals(final, test)
        test_metrics = metrics(test_system.predict(final.vector), test.targets)
    logger.info("Training finished with %s: mse %.6g, r2 %.4f.", trace.status, summary["mse"], summary["r2"])
    return TrainingResult(trace, history, final, summary, test_metrics)


def pad_series(series, length):
    """Extend *series* to *length* entries by repeating its last value.

    Runs that stop early (for instance on a vanishing step) have reached a
    plateau, so their final loss stands for the remaining iterations.
    """
    series = list(series)
    if not series:
        raise ValueError("Expected a nonempty series.")
    if len(series) > length:
        raise ValueError("Series is longer than {}.".format(length))
    return series + [series[-1]] * (length - len(series))


def write_metrics_csv(history, path):
    """Write the per-iteration *history* of :func:`train` as CSV."""
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.DictWriter(stream, fieldnames=METRICS_COLUMNS)
        writer.writeheader()
        writer.writerows(history)


def write_aggregate_csv(series, path):
    """Write the pointwise mean, minimum and maximum of several MSE series
    as CSV with the columns ``iter,mse_aver,mse_min,mse_max``."""
    length = max(len(s) for s in series)
    aggregate = aggregate_trials([pad_series(s, length) for s in series])
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream)
        writer.writerow(["iter", "mse_aver", "mse_min", "mse_max"])
        for k in range(length):
            writer.writerow([k, aggregate["aver"][k], aggregate["min"][k], aggregate["max"][k]])
    return aggregate
