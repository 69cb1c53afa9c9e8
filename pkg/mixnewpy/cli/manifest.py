# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Run manifests written next to every output of the command-line tools."""

import logging
import platform
from dataclasses import dataclass, field

import numpy as np

__all__ = ["RunManifest", "read_manifest"]

logger = logging.getLogger(__name__)


def _format(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_format(v) for v in value)
    if isinstance(value, np.ndarray):
        return " ".join(_format(v) for v in value.tolist())
    return str(value)


@dataclass
class RunManifest:
    """Resolved configuration, artifacts and statistics of one command run.

    The manifest is a UTF-8 text file of ``key = value`` lines. Keys are
    prefixed by their section: ``config.``, ``artifact.`` and ``stats.``.

    Parameters
    ----------
    command : str
        The subcommand, for example ``"basins"``.

    config : dict
        Every resolved option of the run.

    artifacts : dict
        Paths of the files written by the run.

    stats : dict
        Wall-clock time, iteration counts and similar measurements.
    """

    command: str
    config: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def items(self):
        yield "command", self.command
        yield "python", platform.python_version()
        yield "numpy", np.__version__
        for prefix, section in (("config", self.config), ("artifact", self.artifacts), ("stats", self.stats)):
            for key, value in section.items():
                yield "{}.{}".format(prefix, key), value

    def to_text(self):
        return "".join("{} = {}\n".format(key, _format(value)) for key, value in self.items())

    def write(self, path):
        """Write the manifest to *path*."""
        with open(path, "w", encoding="utf-8") as stream:
            stream.write(self.to_text())
        logger.info("Wrote manifest %s", path)


def read_manifest(path):
    """Return the ``key = value`` lines of a manifest as a dictionary of
    strings."""
    out = {}
    with open(path, encoding="utf-8") as stream:
        for line in stream:
            key, sep, value = line.rstrip("\n").partition(" = ")
            if sep:
                out[key] = value
    return out
