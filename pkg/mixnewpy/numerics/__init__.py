from mixnewpy.numerics.linalg import *  # noqa
from mixnewpy.numerics.roots import *  # noqa
