from mixnewpy.models.data import *  # noqa
from mixnewpy.models.mlp import *  # noqa
from mixnewpy.models.evaluation import *  # noqa
from mixnewpy.models.training import *  # noqa
