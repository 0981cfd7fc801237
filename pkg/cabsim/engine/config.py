import json
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Union

from cabsim.algorithms import ThetaSchedule
from cabsim.algorithms import check_delta
from cabsim.algorithms import validate_schedule
from cabsim.constants import ALG_PRESET
from cabsim.constants import BETA_PRESET
from cabsim.constants import DEFAULT_BINS
from cabsim.constants import DEFAULT_EPSILONS
from cabsim.constants import DEFAULT_TRUNCATION
from cabsim.constants import EXPERIMENT_KINDS
from cabsim.environment import CABInstance
from cabsim.environment import RewardModel
from cabsim.exceptions import CabsimError
from cabsim.exceptions import InvalidConfigurationError
from cabsim.helpers import geometric_checkpoints
from cabsim.helpers import parse_policy
from cabsim.helpers import stable_hash

_NEEDS_INSTANCE = ("etc-regret", "alg-regret")
_NEEDS_REWARDS = ("zerogap", "beta", "lemma1", "epoch-stats")
_USES_SCHEDULE = ("alg-regret", "beta", "lemma1", "epoch-stats")
# fields that only say where results go; they do not enter the config hash
_DESTINATION_FIELDS = ("out", "format")


@dataclass
class ExperimentConfig:
    """Everything a batch of replications depends on.

    ``reward1`` / ``reward2`` hold one reward-model object each, or a list of
    them for the survival estimate over families.
    """

    kind: str
    n: int = 10**4
    reps: int = 100
    master_seed: int = 0
    instance: Optional[Dict[str, Any]] = None
    delta: Optional[float] = None
    policy: str = "ucb1"
    schedule: Optional[Dict[str, Any]] = None
    reward1: Optional[Union[Dict[str, Any], List[Dict[str, Any]]]] = None
    reward2: Optional[Union[Dict[str, Any], List[Dict[str, Any]]]] = None
    truncation: int = DEFAULT_TRUNCATION
    bins: int = DEFAULT_BINS
    epsilons: List[float] = field(default_factory=lambda: list(DEFAULT_EPSILONS))
    checkpoints: Optional[List[int]] = None
    beta_hat: Optional[float] = None
    c2: Optional[float] = None
    # percentile-bootstrap resamples for summary intervals; 0 disables
    bootstrap: int = 0
    out: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        self.epsilons = [float(e) for e in self.epsilons]
        if self.checkpoints is not None:
            self.checkpoints = sorted({int(c) for c in self.checkpoints})
        try:
            self._validate()
        except InvalidConfigurationError:
            raise
        except (CabsimError, KeyError, TypeError, ValueError) as e:
            raise InvalidConfigurationError(f"Invalid {self.kind} config: {e}")

    def _validate(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise InvalidConfigurationError(
                f"Unknown experiment kind '{self.kind}', expected one of "
                f"{', '.join(EXPERIMENT_KINDS)}"
            )
        if self.n < 1:
            raise InvalidConfigurationError(f"n must be positive, got {self.n}")
        if self.reps < 0:
            raise InvalidConfigurationError(f"reps must be >= 0, got {self.reps}")
        if self.bootstrap < 0:
            raise InvalidConfigurationError(
                f"bootstrap must be >= 0, got {self.bootstrap}"
            )
        if self.format not in ("csv", "json"):
            raise InvalidConfigurationError(f"Unknown format '{self.format}'")
        if self.kind in _NEEDS_INSTANCE:
            if self.instance is None:
                raise InvalidConfigurationError(f"{self.kind} needs an instance")
            if self.n < 2:
                raise InvalidConfigurationError(f"{self.kind} needs n >= 2")
            self.cab_instance()
        if self.kind == "etc-regret":
            if self.delta is None:
                raise InvalidConfigurationError("etc-regret needs delta")
            check_delta(self.delta)
        if self.kind in _NEEDS_REWARDS:
            if self.reward1 is None or self.reward2 is None:
                raise InvalidConfigurationError(
                    f"{self.kind} needs reward1 and reward2"
                )
            self.family1()
            self.family2()
        if self.kind in ("alg-regret", "zerogap", "epoch-stats", "lemma1"):
            parse_policy(self.policy)
        if self.kind in _USES_SCHEDULE:
            horizon = self.truncation if self.kind == "beta" else self.n
            schedule = self.theta_schedule()
            report = validate_schedule(schedule, max(horizon, 2))
            if not report.accepted:
                raise InvalidConfigurationError(
                    f"Schedule {schedule} rejected: {', '.join(report.failures)}"
                )

    def cab_instance(self) -> CABInstance:
        return CABInstance.from_dict(self.instance)

    def family1(self) -> List[RewardModel]:
        return _family(self.reward1)

    def family2(self) -> List[RewardModel]:
        return _family(self.reward2)

    def theta_schedule(self) -> ThetaSchedule:
        if self.schedule is not None:
            return ThetaSchedule.from_dict(self.schedule)
        return ThetaSchedule(*(BETA_PRESET if self.kind == "beta" else ALG_PRESET))

    def checkpoint_list(self) -> List[int]:
        if self.checkpoints:
            return [c for c in self.checkpoints if 1 <= c <= self.n]
        return geometric_checkpoints(self.n)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(payload) - known
        if unknown:
            raise InvalidConfigurationError(
                f"Unknown config fields: {', '.join(sorted(unknown))}"
            )
        if "kind" not in payload:
            raise InvalidConfigurationError("Config misses 'kind'")
        return cls(**payload)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidConfigurationError(f"Config is not valid JSON: {e}")
        if not isinstance(payload, dict):
            raise InvalidConfigurationError("Config must be a JSON object")
        return cls.from_dict(payload)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InvalidConfigurationError(f"Cannot read config {path}: {e}")
        return cls.from_json(text)

    def config_hash(self) -> str:
        payload = self.to_dict()
        for name in _DESTINATION_FIELDS:
            payload.pop(name)
        return stable_hash(payload)


def _family(value) -> List[RewardModel]:
    items = value if isinstance(value, list) else [value]
    if not items:
        raise InvalidConfigurationError("A reward family must not be empty")
    return [RewardModel.from_dict(item) for item in items]
