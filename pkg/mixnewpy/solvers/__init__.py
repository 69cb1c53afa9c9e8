from mixnewpy.solvers.config import *  # noqa
from mixnewpy.solvers.trace import *  # noqa
from mixnewpy.solvers.steps import *  # noqa
from mixnewpy.solvers.lm import *  # noqa
from mixnewpy.solvers.driver import *  # noqa
