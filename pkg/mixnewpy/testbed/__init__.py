from mixnewpy.testbed.examples import *  # noqa
from mixnewpy.testbed.basins import *  # noqa
from mixnewpy.testbed.verification import *  # noqa
