import enum
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from cabsim.algorithms.regret import RegretTracker
from cabsim.algorithms.theta import ThetaSchedule
from cabsim.algorithms.theta import validate_schedule
from cabsim.environment import ArmReservoir
from cabsim.environment import ArmType
from cabsim.environment import CABInstance
from cabsim.environment import RewardStream
from cabsim.exceptions import DomainError
from cabsim.helpers import derive_stream
from cabsim.helpers import geometric_checkpoints
from cabsim.models import EpochOutcome
from cabsim.models import EpochTrace
from cabsim.models import EpochVerdict
from cabsim.models import RunRecord
from cabsim.policies import BasePolicy
from cabsim.policies import PolicyState
from cabsim.policies import make_policy


class PairedTestResult(str, enum.Enum):
    FIRE = "fire"
    SURVIVE = "survive"


def paired_test(
    diff_prefix_sums: Sequence[float], m: int, schedule: ThetaSchedule
) -> PairedTestResult:
    """Fire iff |sum_{j <= m} (X_1j - X_2j)| < theta_m."""
    if not 1 <= m <= len(diff_prefix_sums):
        raise DomainError(
            f"m={m} outside the {len(diff_prefix_sums)} available paired samples"
        )
    if abs(diff_prefix_sums[m - 1]) < schedule.theta(m):
        return PairedTestResult.FIRE
    return PairedTestResult.SURVIVE


def run_epoch(
    stream1: RewardStream,
    stream2: RewardStream,
    budget: int,
    policy: BasePolicy,
    schedule: ThetaSchedule,
    rng: Optional[np.random.Generator] = None,
    tracker: Optional[RegretTracker] = None,
    inferior: Tuple[bool, bool] = (False, False),
) -> EpochOutcome:
    """Run one epoch on a fresh pair until the paired test fires or the budget
    is spent.

    Both arms are played once, then before every further play the test is
    evaluated at m = min(N_1, N_2) on each arm's first m rewards. The test is
    only re-evaluated when m grows, since its outcome depends on m alone, and
    never once the budget is spent: an epoch cut by the horizon is censored.
    """
    state = PolicyState()
    streams = (stream1, stream2)
    rewards: Tuple[List[float], List[float]] = ([], [])
    s = 0

    def play(arm: int) -> None:
        reward = streams[arm - 1].next()
        rewards[arm - 1].append(reward)
        policy.update(state, arm, reward, rng)
        if tracker is not None:
            tracker.add(1, inferior[arm - 1])

    for arm in (1, 2):
        if s == budget:
            return EpochOutcome(s, tuple(state.plays), None)
        play(arm)
        s += 1

    m, tested, paired = 1, 0, 0.0
    while True:
        if s == budget:
            return EpochOutcome(s, tuple(state.plays), None, tested)
        if m > tested:
            paired += rewards[0][m - 1] - rewards[1][m - 1]
            tested = m
            if abs(paired) < schedule.theta(m):
                return EpochOutcome(s, tuple(state.plays), m, tested)
        play(policy.select_arm(state, s + 1, rng))
        s += 1
        m = min(state.plays)


def run_alg(
    instance: CABInstance,
    n: int,
    policy_id: str,
    schedule: ThetaSchedule,
    seed: int = 0,
    rep: int = 0,
    checkpoints: Optional[Sequence[int]] = None,
) -> RunRecord:
    """Anytime epoch algorithm driven by a playing rule and a threshold schedule.

    Epochs never commit: a pair is played until the paired test discards it,
    and the run simply stops at play ``n``.
    """
    if n < 2:
        raise DomainError(f"Horizon must be at least 2, got {n}")
    report = validate_schedule(schedule, n)
    if not report.accepted:
        raise DomainError(f"Schedule {schedule} rejected: {report.failures}")
    policy = make_policy(policy_id)
    reservoir = ArmReservoir(
        instance,
        derive_stream(seed, rep, "types"),
        lambda label: derive_stream(seed, rep, f"arm:{label}"),
    )
    policy_rng = derive_stream(seed, rep, "policy")
    tracker = RegretTracker(instance.gap)
    budget = n
    epochs = []

    while budget > 0:
        arm1, arm2 = reservoir.draw_new_arm(), reservoir.draw_new_arm()
        outcome = run_epoch(
            reservoir.stream(arm1),
            reservoir.stream(arm2),
            budget,
            policy,
            schedule,
            rng=policy_rng,
            tracker=tracker,
            inferior=(
                arm1.arm_type is ArmType.TYPE2,
                arm2.arm_type is ArmType.TYPE2,
            ),
        )
        budget -= outcome.length
        epochs.append(
            EpochTrace(
                epoch_index=len(epochs),
                arm_labels=(arm1.label, arm2.label),
                arm_types=(int(arm1.arm_type), int(arm2.arm_type)),
                length=outcome.length,
                verdict=(
                    EpochVerdict.HORIZON_REACHED
                    if outcome.censored
                    else EpochVerdict.DISCARDED_HOMOGENEOUS
                ),
                test_fires_at_m=outcome.fired_at_m,
            )
        )

    return RunRecord(
        algo=f"alg:{policy.policy_id}",
        instance=instance.to_dict(),
        n=n,
        seed=seed,
        rep=rep,
        gap=instance.gap,
        epochs=epochs,
        plays_on_type2=tracker.plays_on_type2,
        regret_checkpoints=tracker.at_checkpoints(
            checkpoints or geometric_checkpoints(n)
        ),
        pseudo_regret_trajectory=tracker.trajectory(),
        params={"policy": policy.policy_id, **schedule.to_dict()},
    )
