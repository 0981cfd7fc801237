import math
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from cabsim.algorithms.regret import RegretTracker
from cabsim.environment import ArmReservoir
from cabsim.environment import ArmType
from cabsim.environment import CABInstance
from cabsim.environment import RewardModel
from cabsim.environment import RewardStream
from cabsim.exceptions import DomainError
from cabsim.helpers import derive_stream
from cabsim.helpers import geometric_checkpoints
from cabsim.models import EpochTrace
from cabsim.models import EpochVerdict
from cabsim.models import RunRecord


def exploration_length(n: int, delta: float) -> int:
    """L = ceil(2 log(n) / delta^2)."""
    return math.ceil(2.0 / delta**2 * math.log(n))


def explore_and_test(
    stream1: RewardStream, stream2: RewardStream, m: int, delta: float
) -> Tuple[bool, float, float]:
    """Play both arms ``m`` times and run the paired test.

    Returns
    -------
    tuple
        fired : bool
            True when |sum_j (X_1j - X_2j)| < delta m, i.e. the pair looks
            homogeneous and is discarded.
        sum1, sum2 : float
            Reward totals of each arm.
    """
    x1 = stream1.take(m)
    x2 = stream2.take(m)
    diff = float(np.sum(x1 - x2))
    return abs(diff) < delta * m, float(x1.sum()), float(x2.sum())


def check_delta(delta: float) -> None:
    if delta <= 0.0:
        raise DomainError(f"delta must be positive, got {delta}")
    if delta > 1.0:
        raise DomainError(f"delta > 1 makes the test fire on every pair, got {delta}")


def run_etc(
    instance: CABInstance,
    n: int,
    delta: float,
    seed: int = 0,
    rep: int = 0,
    checkpoints: Optional[Sequence[int]] = None,
) -> RunRecord:
    """Explore-then-commit over an infinite reservoir with two types.

    Each epoch draws two fresh arms and plays each m = min(L, floor(T/2))
    times, arm 1's block first. A pair whose paired sum stays below delta m is
    discarded for good; otherwise the remaining budget T goes to the arm with
    the larger reward total (ties to arm 1). When a discard leaves a single
    play, it is made on arm 1 of the discarded pair.
    """
    if n < 2:
        raise DomainError(f"Horizon must be at least 2, got {n}")
    check_delta(delta)

    reservoir = ArmReservoir(
        instance,
        derive_stream(seed, rep, "types"),
        lambda label: derive_stream(seed, rep, f"arm:{label}"),
    )
    tracker = RegretTracker(instance.gap)
    L = exploration_length(n, delta)
    budget = n
    epochs = []
    committed = None

    while budget > 0:
        arm1, arm2 = reservoir.draw_new_arm(), reservoir.draw_new_arm()
        inferior1 = arm1.arm_type is ArmType.TYPE2
        inferior2 = arm2.arm_type is ArmType.TYPE2
        m = min(L, budget // 2)
        fired, sum1, sum2 = explore_and_test(
            reservoir.stream(arm1), reservoir.stream(arm2), m, delta
        )
        tracker.add(m, inferior1)
        tracker.add(m, inferior2)
        budget -= 2 * m
        length = 2 * m

        if fired and budget == 1:
            tracker.add(1, inferior1)
            budget, length = 0, length + 1
            verdict = EpochVerdict.HORIZON_REACHED
        elif fired:
            verdict = EpochVerdict.DISCARDED_HOMOGENEOUS
        else:
            winner = arm1 if sum1 >= sum2 else arm2
            tracker.add(budget, winner.arm_type is ArmType.TYPE2)
            length += budget
            budget = 0
            verdict = EpochVerdict.COMMITTED
            committed = int(winner.arm_type)

        epochs.append(
            EpochTrace(
                epoch_index=len(epochs),
                arm_labels=(arm1.label, arm2.label),
                arm_types=(int(arm1.arm_type), int(arm2.arm_type)),
                length=length,
                verdict=verdict,
                test_fires_at_m=m if fired else None,
            )
        )

    return RunRecord(
        algo="etc",
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
        committed_arm_type=committed,
        params={"delta": delta, "L": L},
    )


def etc_test_error_rates(
    model1: RewardModel,
    model2: RewardModel,
    n: int,
    delta: float,
    reps: int,
    seed: int = 0,
) -> Tuple[float, float]:
    """Empirical rate of each verdict of one full-length exploration phase.

    Returns
    -------
    tuple
        discard_rate, keep_rate : float
            Fractions of ``reps`` paired tests that fired and that did not.
            On a homogeneous pair the keep rate is the false-keep rate; on a
            heterogeneous pair the discard rate is the false-discard rate.
    """
    check_delta(delta)
    L = exploration_length(n, delta)
    fired = 0
    for rep in range(reps):
        s1 = RewardStream(model1, derive_stream(seed, rep, "arm:0"))
        s2 = RewardStream(model2, derive_stream(seed, rep, "arm:1"))
        fired += explore_and_test(s1, s2, L, delta)[0]
    return fired / reps, (reps - fired) / reps
