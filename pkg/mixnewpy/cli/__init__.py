from mixnewpy.cli.manifest import *  # noqa
from mixnewpy.cli.main import build_parser, main  # noqa
