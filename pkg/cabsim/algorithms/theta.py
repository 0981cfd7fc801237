import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any
from typing import Dict

import numpy as np

from cabsim.constants import ALG_PRESET
from cabsim.constants import BETA_PRESET
from cabsim.exceptions import DomainError
from cabsim.models import ScheduleReport


@lru_cache(maxsize=1 << 16)
def _theta(m0: int, gamma: float, m: int) -> float:
    x = m + m0
    return math.sqrt(m * m / x * (4.0 * math.log(x) + gamma * math.log(math.log(x))))


@dataclass(frozen=True)
class ThetaSchedule:
    """Deterministic thresholds of the paired-difference test.

    theta_m = sqrt(m^2 / (m + m0) * (4 log(m + m0) + gamma log log(m + m0))),
    natural logarithms. Only configurations with m0 >= 2 are accepted so that
    log log(m + m0) > 0 from m = 1 on.
    """

    m0: int
    gamma: float

    def __post_init__(self):
        if int(self.m0) != self.m0 or self.m0 < 0:
            raise DomainError(f"m0 must be a nonnegative integer, got {self.m0}")
        if not self.gamma > 2.0:
            raise DomainError(f"gamma must exceed 2, got {self.gamma}")
        if self.m0 + 1 < 3:
            raise DomainError(
                f"m0={self.m0}: log log(m + m0) is undefined or negative at m=1"
            )
        object.__setattr__(self, "m0", int(self.m0))
        object.__setattr__(self, "gamma", float(self.gamma))

    @classmethod
    def alg_default(cls) -> "ThetaSchedule":
        return cls(*ALG_PRESET)

    @classmethod
    def beta_default(cls) -> "ThetaSchedule":
        return cls(*BETA_PRESET)

    def theta(self, m: int) -> float:
        if m < 1:
            raise DomainError(f"theta_m is defined for m >= 1, got m={m}")
        return _theta(self.m0, self.gamma, int(m))

    def values(self, upto: int) -> np.ndarray:
        """theta_1 .. theta_upto as an array (index 0 holds theta_1)."""
        m = np.arange(1, upto + 1, dtype=np.float64)
        x = m + self.m0
        return np.sqrt(m * m / x * (4.0 * np.log(x) + self.gamma * np.log(np.log(x))))

    def to_dict(self) -> Dict[str, Any]:
        return {"m0": self.m0, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ThetaSchedule":
        return cls(int(payload["m0"]), float(payload["gamma"]))


def theta(schedule: ThetaSchedule, m: int) -> float:
    return schedule.theta(m)


def validate_schedule(schedule: ThetaSchedule, horizon: int) -> ScheduleReport:
    """Check the conditions the survival argument needs on [1, horizon].

    Parameters
    ----------
    schedule : ThetaSchedule
        Schedule under test.
    horizon : int
        Largest m checked, at least 2.

    Returns
    -------
    ScheduleReport
        Accepted iff theta_1 < 1, theta_m / m is strictly decreasing and
        theta_m >= 0 on the whole prefix.
    """
    if horizon < 2:
        raise DomainError(f"horizon must be at least 2, got {horizon}")
    values = schedule.values(horizon)
    ratio = values / np.arange(1, horizon + 1)
    steps = np.diff(ratio)
    bad = np.flatnonzero(steps >= 0.0)
    theta1 = schedule.theta(1)
    return ScheduleReport(
        m0=schedule.m0,
        gamma=schedule.gamma,
        horizon=horizon,
        theta1=theta1,
        theta1_below_one=theta1 < 1.0,
        ratio_decreasing=bad.size == 0,
        nonnegative=bool(np.all(values >= 0.0)),
        first_ratio_violation=int(bad[0]) + 2 if bad.size else None,
    )
