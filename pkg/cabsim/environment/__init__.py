from cabsim.environment.instance import Arm  # noqa
from cabsim.environment.instance import ArmType  # noqa
from cabsim.environment.instance import CABInstance  # noqa
from cabsim.environment.reservoir import ArmReservoir  # noqa
from cabsim.environment.reservoir import RewardStream  # noqa
from cabsim.environment.reservoir import draw_new_arm  # noqa
from cabsim.environment.reward_models import RewardKind  # noqa
from cabsim.environment.reward_models import RewardModel  # noqa
from cabsim.environment.reward_models import sample_reward  # noqa
