import enum
from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import Sequence
from typing import Tuple

from cabsim.environment.reward_models import RewardModel
from cabsim.environment.reward_models import check_family
from cabsim.exceptions import InvalidInstanceError


class ArmType(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2


@dataclass(frozen=True)
class CABInstance:
    """Two-type countable-armed bandit: type means, reservoir split and families.

    Parameters
    ----------
    mu1, mu2 : float
        Mean rewards of the optimal and the inferior type, ``mu1 > mu2``.
    alpha : float
        Probability that a freshly drawn arm is of type 1.
    family1, family2 : tuple of RewardModel
        Reward distributions available to each type, all with the type's mean.
    zero_gap : bool
        Set only by :meth:`zero_gap_pair`; allows ``mu1 == mu2`` and
        unbounded models.
    """

    mu1: float
    mu2: float
    alpha: float
    family1: Tuple[RewardModel, ...]
    family2: Tuple[RewardModel, ...]
    zero_gap: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family1", tuple(self.family1))
        object.__setattr__(self, "family2", tuple(self.family2))
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidInstanceError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.zero_gap:
            if self.mu1 != self.mu2:
                raise InvalidInstanceError(
                    f"Zero-gap pair needs equal means, got {self.mu1} and {self.mu2}"
                )
        else:
            if not 0.0 < self.mu2 < self.mu1 < 1.0:
                raise InvalidInstanceError(
                    f"Need 0 < mu2 < mu1 < 1, got mu1={self.mu1}, mu2={self.mu2}"
                )
        check_family(self.family1, self.mu1, allow_unbounded=self.zero_gap)
        check_family(self.family2, self.mu2, allow_unbounded=self.zero_gap)

    @property
    def gap(self) -> float:
        return self.mu1 - self.mu2

    @classmethod
    def bernoulli(cls, mu1: float, mu2: float, alpha: float) -> "CABInstance":
        return cls(
            mu1,
            mu2,
            alpha,
            (RewardModel.bernoulli(mu1),),
            (RewardModel.bernoulli(mu2),),
        )

    @classmethod
    def from_models(
        cls,
        family1: Sequence[RewardModel],
        family2: Sequence[RewardModel],
        alpha: float,
    ) -> "CABInstance":
        return cls(family1[0].mean, family2[0].mean, alpha, family1, family2)

    @classmethod
    def zero_gap_pair(cls, model1: RewardModel, model2: RewardModel) -> "CABInstance":
        if model1.mean != model2.mean:
            raise InvalidInstanceError(
                f"Zero-gap pair needs equal means: {model1} has {model1.mean}, "
                f"{model2} has {model2.mean}"
            )
        return cls(model1.mean, model2.mean, 1.0, (model1,), (model2,), zero_gap=True)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mu1": self.mu1,
            "mu2": self.mu2,
            "alpha": self.alpha,
            "family1": [m.to_dict() for m in self.family1],
            "family2": [m.to_dict() for m in self.family2],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "CABInstance":
        try:
            return cls(
                mu1=float(payload["mu1"]),
                mu2=float(payload["mu2"]),
                alpha=float(payload["alpha"]),
                family1=tuple(RewardModel.from_dict(m) for m in payload["family1"]),
                family2=tuple(RewardModel.from_dict(m) for m in payload["family2"]),
            )
        except KeyError as e:
            raise InvalidInstanceError(f"Instance description misses field {e}")


@dataclass(frozen=True)
class Arm:
    label: int
    arm_type: ArmType
    model: RewardModel
