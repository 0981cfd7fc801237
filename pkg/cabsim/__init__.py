from cabsim.algorithms import ThetaSchedule  # noqa
from cabsim.algorithms import run_alg  # noqa
from cabsim.algorithms import run_etc  # noqa
from cabsim.engine import ExperimentConfig  # noqa
from cabsim.engine import export  # noqa
from cabsim.engine import run_batch  # noqa
from cabsim.environment import CABInstance  # noqa
from cabsim.environment import RewardModel  # noqa
from cabsim.experiments import estimate_beta  # noqa
from cabsim.experiments import run_zerogap  # noqa
from cabsim.policies import make_policy  # noqa
