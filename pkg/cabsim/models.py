import enum
import math
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np


@dataclass
class ScheduleReport:
    m0: int
    gamma: float
    horizon: int
    theta1: float
    theta1_below_one: bool
    ratio_decreasing: bool
    nonnegative: bool
    first_ratio_violation: Optional[int] = None

    @property
    def accepted(self) -> bool:
        return self.theta1_below_one and self.ratio_decreasing and self.nonnegative

    @property
    def failures(self) -> List[str]:
        checks = {
            "theta_1 < 1": self.theta1_below_one,
            "theta_m / m decreasing": self.ratio_decreasing,
            "theta_m >= 0": self.nonnegative,
        }
        return [name for name, ok in checks.items() if not ok]


@dataclass(frozen=True)
class RegretBound:
    value: float
    # the closed form was not applicable and only the linear branch is returned
    degenerate: bool = False


@dataclass(frozen=True)
class TailBound:
    value: float
    exponent: float
    vacuous: bool


class EpochVerdict(str, enum.Enum):
    DISCARDED_HOMOGENEOUS = "discarded"
    COMMITTED = "committed"
    HORIZON_REACHED = "horizon"


@dataclass
class EpochTrace:
    epoch_index: int
    arm_labels: Tuple[int, int]
    arm_types: Tuple[int, int]
    length: int
    verdict: EpochVerdict
    test_fires_at_m: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["arm_labels"] = list(self.arm_labels)
        payload["arm_types"] = [int(t) for t in self.arm_types]
        payload["verdict"] = self.verdict.value
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "EpochTrace":
        return cls(
            epoch_index=payload["epoch_index"],
            arm_labels=tuple(payload["arm_labels"]),
            arm_types=tuple(payload["arm_types"]),
            length=payload["length"],
            verdict=EpochVerdict(payload["verdict"]),
            test_fires_at_m=payload.get("test_fires_at_m"),
        )


@dataclass
class RunRecord:
    """Trace of one replication of a CAB algorithm."""

    algo: str
    instance: Dict[str, Any]
    n: int
    seed: int
    rep: int
    gap: float
    epochs: List[EpochTrace]
    plays_on_type2: int
    regret_checkpoints: List[Tuple[int, float]]
    pseudo_regret_trajectory: Optional[np.ndarray] = None
    committed_arm_type: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def final_regret(self) -> float:
        return self.gap * self.plays_on_type2

    @property
    def total_plays(self) -> int:
        return sum(e.length for e in self.epochs)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "algo": self.algo,
            "instance": self.instance,
            "n": self.n,
            "seed": self.seed,
            "rep": self.rep,
            "gap": self.gap,
            "params": self.params,
            "epochs": [e.to_dict() for e in self.epochs],
            "plays_on_type2": self.plays_on_type2,
            "final_regret": self.final_regret,
            "regret_checkpoints": [list(c) for c in self.regret_checkpoints],
            "committed_arm_type": self.committed_arm_type,
        }
        if self.pseudo_regret_trajectory is not None:
            payload["pseudo_regret_trajectory"] = [
                float(v) for v in self.pseudo_regret_trajectory
            ]
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "RunRecord":
        trajectory = payload.get("pseudo_regret_trajectory")
        return cls(
            algo=payload["algo"],
            instance=payload["instance"],
            n=payload["n"],
            seed=payload["seed"],
            rep=payload["rep"],
            gap=payload["gap"],
            epochs=[EpochTrace.from_dict(e) for e in payload["epochs"]],
            plays_on_type2=payload["plays_on_type2"],
            regret_checkpoints=[tuple(c) for c in payload["regret_checkpoints"]],
            pseudo_regret_trajectory=(
                None if trajectory is None else np.asarray(trajectory, dtype=float)
            ),
            committed_arm_type=payload.get("committed_arm_type"),
            params=payload.get("params", {}),
        )


@dataclass(frozen=True)
class EpochOutcome:
    """Result of a single epoch of the paired-test algorithm."""

    length: int
    plays: Tuple[int, int]
    fired_at_m: Optional[int]
    # largest m the paired test was evaluated at
    last_tested_m: int = 0

    @property
    def censored(self) -> bool:
        return self.fired_at_m is None


@dataclass(frozen=True)
class Lemma1Check:
    equal: bool
    tau_adaptive: Optional[int]
    tau_paired: Optional[int]
    plays: int

    @property
    def censored(self) -> bool:
        return self.tau_adaptive is None and self.tau_paired is None


@dataclass
class EpochLengthStats:
    n: int
    reps: int
    mean_tau: float
    quantiles: Dict[str, float]
    censored_fraction: float
    taus: List[int] = field(default_factory=list, repr=False)


@dataclass
class BetaEstimate:
    """Monte-Carlo survival estimate of the paired walk, truncated at M.

    The estimate is biased upwards: surviving to M does not imply surviving
    forever.
    """

    delta: float
    m0: int
    gamma: float
    M: int
    reps: int
    estimate: float
    std_error: float
    checkpoints: List[int]
    survival: List[float]
    models: Tuple[str, str] = ("", "")

    @property
    def survival_curve(self) -> List[Tuple[int, float]]:
        return list(zip(self.checkpoints, self.survival))

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["models"] = list(self.models)
        payload["bias"] = "overestimate"
        return payload


@dataclass
class ZeroGapResult:
    policy_id: str
    reward1: str
    reward2: str
    n: int
    reps: int
    samples: List[float]
    bin_edges: List[float]
    counts: List[int]
    mean: float
    std: float
    tails: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def std_error(self) -> float:
        return self.std / math.sqrt(self.reps) if self.reps else math.nan

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class AggregateResult:
    """Reduction of a batch of replications, independent of arrival order."""

    kind: str
    config: Dict[str, Any]
    config_hash: str
    reps: int
    header: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    checkpoints: List[int] = field(default_factory=list)
    mean_regret: List[float] = field(default_factory=list)
    std_error: List[float] = field(default_factory=list)
    overlays: Dict[str, List[float]] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    # wall time and worker count vary between identical runs; never exported
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload.pop("metadata")
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "AggregateResult":
        return cls(**{k: v for k, v in payload.items() if k != "metadata"})
