from cabsim.policies.factory import BasePolicy  # noqa
from cabsim.policies.factory import PolicyFactory  # noqa
from cabsim.policies.factory import make_policy  # noqa
from cabsim.policies.greedy import GreedyCommitPolicy  # noqa
from cabsim.policies.state import PolicyState  # noqa
from cabsim.policies.thompson import BetaThompsonPolicy  # noqa
from cabsim.policies.thompson import GaussianThompsonPolicy  # noqa
from cabsim.policies.ucb import UCBPolicy  # noqa
from cabsim.policies.ucb import ucb_index  # noqa
