# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""Allow ``python -m mixnewpy``."""

import sys

from mixnewpy.cli.main import main

sys.exit(main())
