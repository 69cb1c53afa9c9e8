# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Trace class for keeping track of the iterates of a solver run."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = ["IterationRecord", "Trace", "STATUSES"]

STATUSES = ("running", "converged", "max_iters", "diverged", "numeric_error")


@dataclass(frozen=True)
class IterationRecord:
    """State of a run after *k* iterations.

    ``step_norm`` is the length of the step that produced ``z`` (0 for
    k = 0) and ``param`` holds lambda for the adaptive methods, delta for the
    cubic methods and None otherwise.
    """

    k: int
    z: np.ndarray
    f: float
    grad_norm: float
    step_norm: float
    param: Optional[float] = None


class Trace:
    """Class for keeping track of the records of a solver run.

    Parameters
    ----------
    method : str
        Name of the method that produced the trace.

    keep_history : bool
        If False only the first and the latest records are stored.
    """

    def __init__(self, method, keep_history=True):
        self.method = method
        self.keep_history = keep_history
        self.records = []
        self.status = "running"
        self.message = ""
        self.elapsed = 0.0

    def append(self, record):
        if self.records and record.k <= self.records[-1].k:
            raise ValueError("Records must be appended in iteration order.")
        if not np.isfinite(record.f):
            raise ValueError("Recorded objective values must be finite.")
        if not self.keep_history and len(self.records) == 2:
            self.records[-1] = record
        else:
            self.records.append(record)

    def finish(self, status, message=""):
        if status not in STATUSES[1:]:
            raise ValueError("Unknown terminal status '{}'.".format(status))
        self.status = status
        self.message = message

    def iterations(self):
        """Return the number of iterations performed.

        Returns
        -------
        int
            The iteration index of the last record.
        """
        return self.records[-1].k if self.records else 0

    def final_point(self):
        """Return the last recorded iterate."""
        return self.records[-1].z

    def final_objective(self):
        return self.records[-1].f

    def objective_values(self):
        """Return the recorded objective values in iteration order.

        Returns
        -------
        list
            The objective value of each stored record.
        """
        return [r.f for r in self.records]

    def get_points(self):
        return [r.z for r in self.records]

    def is_converged(self):
        """Return whether the run stopped with status ``converged``."""
        return self.status == "converged"

    def seconds_per_iteration(self):
        """Return the average wall-clock time per iteration, or 0."""
        k = self.iterations()
        return self.elapsed / k if k else 0.0

    def __len__(self):
        return len(self.records)

    def __repr__(self):
        return "Trace(method={!r}, status={!r}, iterations={})".format(self.method, self.status, self.iterations())
