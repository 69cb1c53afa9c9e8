# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Utility functions for dealing with sequences of iterates and losses."""

__all__ = ["is_strictly_decreasing", "first_index_within"]


def is_strictly_decreasing(sequence):
    return all(b < a for a, b in zip(sequence, sequence[1:]))


def first_index_within(sequence, target, rel_tol):
    """Return the first index whose value is within *rel_tol* of *target*
    (relative to ``max(|target|, 1e-300)``), or None."""
    scale = max(abs(target), 1e-300)
    for i, value in enumerate(sequence):
        if abs(value - target) <= rel_tol * scale:
            return i
    return None
