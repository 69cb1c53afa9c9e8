# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Regression datasets in the LIBSVM text format."""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from mixnewpy.exceptions import ParseError

__all__ = ["Dataset", "parse_libsvm", "load_libsvm", "normalize", "split"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    """A dense regression dataset.

    Attributes
    ----------
    features : numpy.ndarray
        Real matrix of shape ``(N, M)``.

    targets : numpy.ndarray
        Real vector of length N.

    feature_mean, feature_std : numpy.ndarray, optional
        Per-feature statistics removed by :func:`normalize`.

    target_mean, target_std : float, optional
        Target statistics removed by :func:`normalize`.
    """

    features: np.ndarray
    targets: np.ndarray
    feature_mean: Optional[np.ndarray] = None
    feature_std: Optional[np.ndarray] = None
    target_mean: Optional[float] = None
    target_std: Optional[float] = None

    @property
    def size(self):
        return self.features.shape[0]

    @property
    def dimension(self):
        return self.features.shape[1]

    @property
    def normalized(self):
        return self.feature_mean is not None

    def denormalize_targets(self, values):
        """Map normalized target values back to the original scale."""
        values = np.asarray(values)
        if not self.normalized:
            return values
        return values * self.target_std + self.target_mean


def parse_libsvm(stream):
    """Parse a regression dataset in the LIBSVM text format.

    Every nonempty line reads ``<label> <index>:<value> ...`` with 1-based,
    strictly increasing indices. Absent indices are zero and the number of
    features is the largest index observed.

    Parameters
    ----------
    stream : iterable of str
        An open text file or a list of lines.

    Returns
    -------
    Dataset

    Raises
    ------
    ParseError
        If a line is malformed (with its 1-based line number) or the input
        holds no samples.

    Examples
    --------
    >>> data = parse_libsvm(["0.5 1:0.1 3:-2"])
    >>> data.features
    array([[ 0.1,  0. , -2. ]])
    """
    labels, rows = [], []
    width = 0
    for number, line in enumerate(stream, start=1):
        tokens = line.split()
        if not tokens:
            continue
        try:
            label = float(tokens[0])
        except ValueError:
            raise ParseError("invalid label '{}'".format(tokens[0]), number)
        row = {}
        last = 0
        for token in tokens[1:]:
            index, sep, value = token.partition(":")
            if not sep:
                raise ParseError("expected '<index>:<value>', got '{}'".format(token), number)
            try:
                index, value = int(index), float(value)
            except ValueError:
                raise ParseError("invalid feature '{}'".format(token), number)
            if index < 1:
                raise ParseError("feature indices are 1-based, got {}".format(index), number)
            if index <= last:
                raise ParseError("feature index {} is not increasing".format(index), number)
            row[index] = value
            last = index
        labels.append(label)
        rows.append(row)
        width = max(width, last)
    if not rows:
        raise ParseError("no samples in input")

    features = np.zeros((len(rows), width))
    for i, row in enumerate(rows):
        for index, value in row.items():
            features[i, index - 1] = value
    logger.info("Parsed %d samples with %d features.", len(rows), width)
    return Dataset(features, np.asarray(labels, dtype=float))


def load_libsvm(path):
    """Read the LIBSVM file at *path*; see :func:`parse_libsvm`."""
    with open(path, encoding="utf-8") as stream:
        return parse_libsvm(stream)


def normalize(data):
    """Return *data* with zero-mean, unit-variance features and targets.

    Constant columns are centered and keep the scale 1.
    """
    X = np.asarray(data.features, dtype=float)
    y = np.asarray(data.targets, dtype=float)
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std[std == 0] = 1.0
    y_mean = float(y.mean())
    y_std = float(y.std()) or 1.0
    return Dataset((X - mean) / std, (y - y_mean) / y_std, mean, std, y_mean, y_std)


def split(data, fraction=0.8, seed=0):
    """Split *data* into a training and a test part.

    The rows are shuffled by a generator seeded with *seed*; the first
    ``round(fraction * N)`` shuffled rows form the training part.

    Raises
    ------
    ValueError
        If either part would be empty.
    """
    if not 0 < fraction < 1:
        raise ValueError("Expected 0 < fraction < 1.")
    order = np.random.default_rng(seed).permutation(data.size)
    cut = int(round(fraction * data.size))
    if cut == 0 or cut == data.size:
        raise ValueError("Split of {} samples at {} leaves an empty part.".format(data.size, fraction))
    first, second = order[:cut], order[cut:]
    return (
        replace(data, features=data.features[first], targets=data.targets[first]),
        replace(data, features=data.features[second], targets=data.targets[second]),
    )
