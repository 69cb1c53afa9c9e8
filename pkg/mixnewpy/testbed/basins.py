# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Basin-of-attraction experiments on grids of starting points."""

import csv
import dataclasses
import functools
import io
import logging
import math
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional

import numpy as np
from tqdm import tqdm

from mixnewpy.solvers.driver import run
from mixnewpy.utils.norms import is_perfect_square

__all__ = [
    "TABLE_COLUMNS",
    "GRID_LAYOUTS",
    "grid",
    "StartOutcome",
    "BasinResult",
    "basin_experiment",
    "TableReport",
    "table_report",
]

logger = logging.getLogger(__name__)

TABLE_COLUMNS = (
    "example",
    "method",
    "gamma",
    "starts",
    "to_global",
    "to_local_1",
    "to_local_2",
    "to_saddle",
    "no_convergence",
)

_COUNT_KEYS = ("global", "local_1", "local_2", "saddle")

GRID_LAYOUTS = ("closed", "half_open", "centered")


def grid(square, count, imag_offset=0.0, layout="closed"):
    """Return a uniform grid of starting points in a square of C^2.

    Parameters
    ----------
    square : tuple
        ``(lo, hi)``; both coordinates range over [lo, hi].

    count : int
        The number of points, a perfect square k^2.

    imag_offset : complex
        Added to every coordinate. ``1j`` shifts every point to
        ``(x + i, y + i)``.

    layout : str
        Placement of the k points on each axis: ``"closed"`` includes both
        ends, ``"half_open"`` includes lo and spaces the points by
        (hi - lo) / k, and ``"centered"`` takes the centers of k equal cells.

    Returns
    -------
    numpy.ndarray
        Complex array of shape ``(count, 2)``. Point ``i * k + j`` is
        ``(a_i, a_j) + imag_offset`` where a is the axis of the layout. The
        closed axis is ``a_i = lo + i (hi - lo) / (k - 1)``.

    Raises
    ------
    ValueError
        If *count* is not a positive perfect square, ``hi <= lo`` or the
        layout is unknown.

    Examples
    --------
    >>> pts = grid((-1, 2), 625)
    >>> pts.shape
    (625, 2)
    """
    lo, hi = square
    if not float(count).is_integer() or count < 1 or not is_perfect_square(int(count)):
        raise ValueError("Expected the number of starts to be a positive perfect square, got {}.".format(count))
    if not hi > lo:
        raise ValueError("Expected hi > lo.")
    if layout not in GRID_LAYOUTS:
        raise ValueError("Unknown grid layout {!r}; expected one of {}.".format(layout, ", ".join(GRID_LAYOUTS)))
    k = math.isqrt(int(count))
    if layout == "closed":
        axis = np.linspace(lo, hi, k)
    elif layout == "half_open":
        axis = lo + (hi - lo) * np.arange(k) / k
    else:
        axis = lo + (hi - lo) * (np.arange(k) + 0.5) / k
    x1, x2 = np.meshgrid(axis, axis, indexing="ij")
    points = np.column_stack([x1.ravel(), x2.ravel()]).astype(np.complex128)
    return points + imag_offset


@dataclass(frozen=True)
class StartOutcome:
    """Terminal state of one run of a basin experiment."""

    index: int
    start: np.ndarray
    status: str
    terminal: np.ndarray
    iterations: int
    label: Optional[str] = None


@dataclass
class BasinResult:
    """Outcomes of a basin experiment and the counts per critical point.

    ``counts`` has the keys ``global``, ``local_1``, ``local_2``, ``saddle``
    and ``no_convergence``; they sum to the number of starts. Runs that
    diverged are part of ``no_convergence`` and also counted in ``diverged``.
    """

    example: int
    method: str
    gamma: Optional[float]
    outcomes: list = field(default_factory=list)
    match_tol: float = 1e-4
    elapsed: float = 0.0

    @property
    def starts(self):
        return len(self.outcomes)

    @property
    def counts(self):
        counts = dict.fromkeys(_COUNT_KEYS + ("no_convergence",), 0)
        for outcome in self.outcomes:
            counts[outcome.label if outcome.label is not None else "no_convergence"] += 1
        return counts

    @property
    def diverged(self):
        return sum(1 for outcome in self.outcomes if outcome.status == "diverged")

    def row(self):
        """Return the table row of this result as a dictionary."""
        counts = self.counts
        return {
            "example": self.example,
            "method": self.method,
            "gamma": "" if self.gamma is None else repr(self.gamma),
            "starts": self.starts,
            "to_global": counts["global"],
            "to_local_1": counts["local_1"],
            "to_local_2": counts["local_2"],
            "to_saddle": counts["saddle"],
            "no_convergence": counts["no_convergence"],
        }


def _match(point, critical_points, match_tol):
    best, best_distance = None, np.inf
    for cp in critical_points:
        distance = np.linalg.norm(point - cp.location)
        if distance < best_distance:
            best, best_distance = cp, distance
    if best is not None and best_distance <= match_tol:
        return best.label
    return None


def _run_start(system, config, critical_points, match_tol, item):
    index, start = item
    trace = run(system, start, config)
    terminal = trace.final_point()
    label = _match(terminal, critical_points, match_tol) if trace.status == "converged" else None
    return StartOutcome(index, start, trace.status, terminal, trace.iterations(), label)


def basin_experiment(example, config, starts, match_tol=1e-4, threads=1, progress=False):
    """Run the solver from every start and match the terminal points to the
    known critical points of *example*.

    Parameters
    ----------
    example : PolynomialExample
        The test problem; its :attr:`critical_points` are the match targets.

    config : SolverConfig
        The solver configuration. Only the first and last records of every
        trace are kept.

    starts : array_like
        Starting points, one per row.

    match_tol : float
        A converged run counts for the nearest critical point within this
        distance. Runs that stop otherwise count as ``no_convergence``.

    threads : int
        Number of worker processes. The result does not depend on it.

    progress : bool
        Show a progress bar.

    Returns
    -------
    BasinResult
        The outcomes in the order of *starts*.
    """
    if not match_tol > 0:
        raise ValueError("Expected match_tol to be positive.")
    if not float(threads).is_integer() or threads < 1:
        raise ValueError("Expected threads to be a positive integer.")
    config = dataclasses.replace(config, stop=dataclasses.replace(config.stop, keep_history=False))
    starts = np.asarray(starts, dtype=np.complex128)
    worker = functools.partial(_run_start, example, config, example.critical_points, match_tol)
    items = list(enumerate(starts))
    gamma = config.penalty.gamma if config.penalty is not None else None
    result = BasinResult(example.id, config.method, gamma, match_tol=match_tol)
    logger.info(
        "Basin experiment: example %d, %s, %d starts, %d workers.", example.id, config.method, len(items), threads
    )

    begin = time.perf_counter()
    bar = functools.partial(tqdm, total=len(items), disable=not progress, desc="example {}".format(example.id))
    if threads == 1:
        outcomes = [worker(item) for item in bar(items)]
    else:
        chunksize = max(1, len(items) // (4 * int(threads)))
        with Pool(int(threads)) as pool:
            outcomes = list(bar(pool.imap(worker, items, chunksize=chunksize)))
    result.outcomes = outcomes
    result.elapsed = time.perf_counter() - begin
    logger.info("Basin experiment finished in %.1f s: %s", result.elapsed, result.counts)
    return result


class TableReport:
    """Rows of basin results with CSV and aligned text renderings.

    Parameters
    ----------
    rows : list of dict
        One dictionary per row with the keys of :data:`TABLE_COLUMNS`.
    """

    def __init__(self, rows):
        self.rows = list(rows)

    def __len__(self):
        return len(self.rows)

    def to_csv(self):
        """Return the table as CSV text with a header row."""
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buffer.getvalue()

    def to_text(self):
        """Return the table as right-aligned plain text."""
        cells = [list(TABLE_COLUMNS)] + [[str(row[c]) for c in TABLE_COLUMNS] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(TABLE_COLUMNS))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in cells]
        return "\n".join(lines) + "\n"


def table_report(results):
    """Return a :class:`TableReport` with one row per basin result, in order."""
    return TableReport(result.row() for result in results)
