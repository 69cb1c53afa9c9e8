from mixnewpy.utils.norms import *  # noqa
from mixnewpy.utils.sequences import *  # noqa
