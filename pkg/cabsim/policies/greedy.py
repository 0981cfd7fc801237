from typing import Optional

import numpy as np

from cabsim.policies.factory import BasePolicy
from cabsim.policies.factory import PolicyFactory
from cabsim.policies.state import PolicyState


@PolicyFactory.register_class(type_names=["greedy-commit"])
class GreedyCommitPolicy(BasePolicy):
    """Empirical-mean winner, ties to arm 1; unplayed arms first."""

    def select_arm(
        self,
        state: PolicyState,
        t: int,
        rng: Optional[np.random.Generator] = None,
    ) -> int:
        if state.plays[0] == 0:
            return 1
        if state.plays[1] == 0:
            return 2
        return 1 if state.mean(1) >= state.mean(2) else 2
