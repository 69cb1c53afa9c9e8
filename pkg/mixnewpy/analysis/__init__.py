from mixnewpy.analysis.critical_points import *  # noqa
from mixnewpy.analysis.dynamics import *  # noqa
