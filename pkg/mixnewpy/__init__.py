# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.

"""Top-level package for MixNewPy."""

import sys

if sys.version_info[:2] < (3, 8):
    m = "Python 3.8 or later is required for MixNewPy (%d.%d detected)."
    raise ImportError(m % sys.version_info[:2])
del sys

__author__ = """MixNewPy developers"""
__version__ = "0.1.0"

from mixnewpy.exceptions import *  # noqa

import mixnewpy.utils  # noqa
from mixnewpy.utils import *  # noqa

import mixnewpy.core  # noqa
from mixnewpy.core import *  # noqa

import mixnewpy.numerics  # noqa
from mixnewpy.numerics import *  # noqa

import mixnewpy.solvers  # noqa
from mixnewpy.solvers import *  # noqa

import mixnewpy.analysis  # noqa
from mixnewpy.analysis import *  # noqa

import mixnewpy.testbed  # noqa
from mixnewpy.testbed import *  # noqa

import mixnewpy.models  # noqa
from mixnewpy.models import *  # noqa
