# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Regression metrics and aggregation of training trials."""

import numpy as np

from mixnewpy.utils.sequences import first_index_within

__all__ = ["metrics", "nmse_db", "aggregate_trials", "iterations_to_plateau"]


def nmse_db(mse):
    """Return ``20 log10(mse)``.

    The mean squared error of normalized targets in decibels, with the
    amplitude factor 20.
    """
    with np.errstate(divide="ignore"):
        return float(20.0 * np.log10(mse))


def metrics(predictions, targets):
    """Return the mean squared error, the coefficient of determination and
    the normalized error in decibels of *predictions*.

    Parameters
    ----------
    predictions : array_like
        Real or complex predictions.

    targets : array_like
        Real targets of the same length, at least two.

    Returns
    -------
    dict
        ``{"mse": ..., "r2": ..., "nmse_db": ...}`` with
        ``mse = mean |pred - y|^2`` and ``r2 = 1 - mse / var(y)``.

    Raises
    ------
    ValueError
        If the lengths differ, fewer than two targets are given, or the
        targets have zero variance.

    Examples
    --------
    >>> metrics([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    {'mse': 0.0, 'r2': 1.0, 'nmse_db': -inf}
    """
    predictions = np.asarray(predictions)
    targets = np.asarray(targets, dtype=float)
    if predictions.shape != targets.shape:
        raise ValueError("Predictions and targets differ in shape.")
    if targets.size < 2:
        raise ValueError("Expected at least two targets.")
    variance = float(np.var(targets))
    if variance == 0:
        raise ValueError("R^2 is undefined for targets with zero variance.")
    mse = float(np.mean(np.abs(predictions - targets) ** 2))
    return {"mse": mse, "r2": 1.0 - mse / variance, "nmse_db": nmse_db(mse)}


def aggregate_trials(series):
    """Return the pointwise mean, minimum and maximum of several loss series.

    Parameters
    ----------
    series : list of array_like
        One loss series per trial, all of the same length. Trials from
        several initialization axes can be passed together.

    Returns
    -------
    dict
        ``{"aver": ..., "min": ..., "max": ...}`` of numpy arrays.

    Raises
    ------
    ValueError
        If *series* is empty or the lengths differ.
    """
    series = [np.asarray(s, dtype=float) for s in series]
    if not series:
        raise ValueError("Expected at least one trial.")
    if len({s.shape for s in series}) != 1:
        raise ValueError("All trials must have the same length.")
    stacked = np.vstack(series)
    return {"aver": stacked.mean(axis=0), "min": stacked.min(axis=0), "max": stacked.max(axis=0)}


def iterations_to_plateau(series, rel_tol=1e-3):
    """Return the first iteration whose loss is within *rel_tol* of the
    smallest loss of *series*."""
    series = list(series)
    if not series:
        raise ValueError("Expected a nonempty series.")
    return first_index_within(series, min(series), rel_tol)
