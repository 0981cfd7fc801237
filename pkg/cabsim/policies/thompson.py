import math
from typing import Optional

import numpy as np

from cabsim.exceptions import DomainError
from cabsim.policies.factory import BasePolicy
from cabsim.policies.factory import PolicyFactory
from cabsim.policies.state import PolicyState


@PolicyFactory.register_class(type_names=["ts-beta"])
class BetaThompsonPolicy(BasePolicy):
    """Thompson Sampling with Beta(1, 1) priors.

    Rewards strictly inside (0, 1) are reduced to a Bernoulli trial with
    success probability equal to the reward before the conjugate update.
    """

    def select_arm(
        self,
        state: PolicyState,
        t: int,
        rng: Optional[np.random.Generator] = None,
    ) -> int:
        if rng is None:
            raise DomainError("Thompson Sampling needs a random stream")
        a1, b1 = state.beta_posterior(1)
        a2, b2 = state.beta_posterior(2)
        return 1 if rng.beta(a1, b1) >= rng.beta(a2, b2) else 2

    def update(
        self,
        state: PolicyState,
        arm: int,
        reward: float,
        rng: Optional[np.random.Generator] = None,
    ) -> PolicyState:
        super().update(state, arm, reward, rng)
        if reward == 1.0:
            success = True
        elif reward == 0.0:
            success = False
        elif rng is None:
            raise DomainError(f"Non-binary reward {reward} needs a random stream")
        else:
            success = bool(rng.random() < reward)
        if success:
            state.successes[arm - 1] += 1
        else:
            state.failures[arm - 1] += 1
        return state


@PolicyFactory.register_class(type_names=["ts-gauss"])
class GaussianThompsonPolicy(BasePolicy):
    """Thompson Sampling with N(0, sigma^2) priors, standard normal by default.

    The posterior of arm i is N(S_i / (N_i + 1), sigma^2 / (N_i + 1)). Its mean
    is the empirical mean shrunk towards the prior, X_i * N_i / (N_i + 1), and
    unlike X_i it is defined before the first play, where it is the prior
    itself. Rewards may be unbounded.
    """

    bounded_rewards = False

    def __init__(self, type_name: str, param: Optional[float] = None):
        self.sigma = 1.0 if param is None else float(param)
        if not self.sigma > 0.0:
            raise DomainError(f"ts-gauss needs sigma > 0, got {self.sigma}")
        super().__init__(type_name, param)

    def posterior(self, state: PolicyState, arm: int):
        k = state.n(arm) + 1
        return state.reward_sums[arm - 1] / k, self.sigma / math.sqrt(k)

    def select_arm(
        self,
        state: PolicyState,
        t: int,
        rng: Optional[np.random.Generator] = None,
    ) -> int:
        if rng is None:
            raise DomainError("Thompson Sampling needs a random stream")
        m1, s1 = self.posterior(state, 1)
        m2, s2 = self.posterior(state, 2)
        return 1 if rng.normal(m1, s1) >= rng.normal(m2, s2) else 2
