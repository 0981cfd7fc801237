from dataclasses import dataclass
from dataclasses import field
from typing import List
from typing import Tuple

from cabsim.exceptions import DomainError


@dataclass
class PolicyState:
    """Sufficient statistics of a two-armed bandit; arms are labelled 1 and 2."""

    plays: List[int] = field(default_factory=lambda: [0, 0])
    reward_sums: List[float] = field(default_factory=lambda: [0.0, 0.0])
    # Bernoulli-trial counts for Beta posteriors
    successes: List[int] = field(default_factory=lambda: [0, 0])
    failures: List[int] = field(default_factory=lambda: [0, 0])

    @property
    def total_plays(self) -> int:
        return self.plays[0] + self.plays[1]

    def n(self, arm: int) -> int:
        return self.plays[arm - 1]

    def mean(self, arm: int) -> float:
        n = self.plays[arm - 1]
        if n == 0:
            raise DomainError(f"Arm {arm} has not been played; its mean is undefined")
        return self.reward_sums[arm - 1] / n

    def beta_posterior(self, arm: int) -> Tuple[int, int]:
        return 1 + self.successes[arm - 1], 1 + self.failures[arm - 1]

    def record(self, arm: int, reward: float) -> None:
        if arm not in (1, 2):
            raise DomainError(f"Arm must be 1 or 2, got {arm}")
        self.plays[arm - 1] += 1
        self.reward_sums[arm - 1] += reward
