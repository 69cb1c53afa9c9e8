from mixnewpy.core.vectors import *  # noqa
from mixnewpy.core.residuals import *  # noqa
from mixnewpy.core.wirtinger import *  # noqa
from mixnewpy.core.finite_differences import *  # noqa
