from typing import Optional

from cabsim.algorithms.alg import run_epoch
from cabsim.algorithms.theta import ThetaSchedule
from cabsim.environment import RewardModel
from cabsim.environment import RewardStream
from cabsim.helpers import derive_stream
from cabsim.models import Lemma1Check
from cabsim.policies import make_policy


def paired_stopping_index(
    stream1: RewardStream, stream2: RewardStream, schedule: ThetaSchedule, max_m: int
) -> Optional[int]:
    """First m <= max_m with |sum_{j <= m} (X_1j - X_2j)| < theta_m, else None."""
    paired = 0.0
    for m in range(1, max_m + 1):
        paired += stream1.next() - stream2.next()
        if abs(paired) < schedule.theta(m):
            return m
    return None


def check_lemma1_equality(
    model1: RewardModel,
    model2: RewardModel,
    n: int,
    schedule: ThetaSchedule,
    seed: int,
    rep: int = 0,
    policy_id: str = "ucb1",
) -> Lemma1Check:
    """Compare the adaptive epoch's stopping count with the i.i.d. paired one.

    The epoch is run under ``policy_id`` (UCB1 by default) for at most ``n``
    plays and stops at some time tau; the adaptive count is min_i N_i(tau).
    The paired count is the first m at which the test fires when the same
    two reward streams are simply read side by side, up to the last m the
    epoch tested. Both are None when the test does not fire within the horizon.
    """

    def fresh(model, tag):
        return RewardStream(model, derive_stream(seed, rep, tag))

    outcome = run_epoch(
        fresh(model1, "arm:0"),
        fresh(model2, "arm:1"),
        n,
        make_policy(policy_id),
        schedule,
        rng=derive_stream(seed, rep, "policy"),
    )
    tau_paired = paired_stopping_index(
        fresh(model1, "arm:0"), fresh(model2, "arm:1"), schedule, outcome.last_tested_m
    )
    return Lemma1Check(
        equal=tau_paired == outcome.fired_at_m,
        tau_adaptive=outcome.fired_at_m,
        tau_paired=tau_paired,
        plays=outcome.length,
    )
