import math
from typing import Optional

import numpy as np

from cabsim.exceptions import DomainError
from cabsim.policies.factory import BasePolicy
from cabsim.policies.factory import PolicyFactory
from cabsim.policies.state import PolicyState


def ucb_index(state: PolicyState, arm: int, t: int, rho: float) -> float:
    """X̄_arm + sqrt(rho * log(t) / N_arm)."""
    n = state.n(arm)
    if n == 0:
        raise DomainError(f"UCB index of arm {arm} needs at least one play")
    if t < 1:
        raise DomainError(f"UCB index needs t >= 1, got {t}")
    return state.reward_sums[arm - 1] / n + math.sqrt(rho * math.log(t) / n)


@PolicyFactory.register_class(type_names=["ucb1", "ucb-rho"])
class UCBPolicy(BasePolicy):
    """UCB(rho); ``ucb1`` is rho = 2.

    Each arm is played once before the index applies. At decision time t the
    index is computed on the history through t - 1.
    """

    def __init__(self, type_name: str, param: Optional[float] = None):
        if type_name == "ucb1":
            param = None
            self.rho = 2.0
        else:
            if param is None:
                raise DomainError("ucb-rho needs an exploration coefficient")
            self.rho = float(param)
        if not self.rho > 0.5:
            raise DomainError(f"rho must exceed 1/2, got {self.rho}")
        super().__init__(type_name, param)

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
        b1 = ucb_index(state, 1, t - 1, self.rho)
        b2 = ucb_index(state, 2, t - 1, self.rho)
        return 1 if b1 >= b2 else 2
