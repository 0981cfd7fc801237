import math
from typing import Any
from typing import Dict
from typing import List
from typing import Sequence

import numpy as np

from cabsim.constants import BOREL_CANTELLI_FLOOR
from cabsim.constants import DEFAULT_BINS
from cabsim.constants import DEFAULT_EPSILONS
from cabsim.environment import CABInstance
from cabsim.environment import RewardModel
from cabsim.environment import RewardStream
from cabsim.exceptions import DomainError
from cabsim.exceptions import InvalidInstanceError
from cabsim.helpers import derive_stream
from cabsim.helpers import setup_logger
from cabsim.models import TailBound
from cabsim.models import ZeroGapResult
from cabsim.policies import BasePolicy
from cabsim.policies import PolicyState
from cabsim.policies import UCBPolicy
from cabsim.policies import make_policy

logger = setup_logger("[ZeroGapLab]")

# exponents this close to zero count as zero
_EXPONENT_TOLERANCE = 1e-12


def generic_ucb_tail_bound(n: int, epsilon: float, rho: float) -> TailBound:
    """2^(2 rho - 1) n^-(2 rho - 1 - 2 rho sqrt(1 - 4 eps^2)).

    Bounds P(|N_i(n)/n - 1/2| > eps) for UCB(rho) on two arms with equal
    means; vacuous when the exponent is not positive.
    """
    if not 0.0 < epsilon < 0.5:
        raise DomainError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if not rho > 0.5:
        raise DomainError(f"rho must exceed 1/2, got {rho}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    exponent = 2.0 * rho - 1.0 - 2.0 * rho * math.sqrt(1.0 - 4.0 * epsilon**2)
    value = 2.0 ** (2.0 * rho - 1.0) * float(n) ** (-exponent)
    return TailBound(value, exponent, vacuous=exponent <= _EXPONENT_TOLERANCE)


def ucb1_tail_bound(n: int, epsilon: float) -> TailBound:
    """8 n^-(3 - 4 sqrt(1 - 4 eps^2)); vacuous for eps <= sqrt(7)/8."""
    return generic_ucb_tail_bound(n, epsilon, 2.0)


def check_zerogap_pair(
    policy: BasePolicy, reward1: RewardModel, reward2: RewardModel
) -> None:
    CABInstance.zero_gap_pair(reward1, reward2)
    if policy.bounded_rewards and not (reward1.bounded and reward2.bounded):
        raise InvalidInstanceError(
            f"{policy.policy_id} needs rewards in [0, 1]; unbounded rewards are "
            "only run under Gaussian Thompson Sampling"
        )


def play_zerogap(
    policy: BasePolicy,
    reward1: RewardModel,
    reward2: RewardModel,
    n: int,
    seed: int,
    rep: int,
    swap_arms: bool = False,
) -> int:
    """Play ``n`` rounds and return N_1(n).

    With ``swap_arms`` the two reward models change places together with
    their substreams.
    """
    streams = [
        RewardStream(reward1, derive_stream(seed, rep, "arm:0")),
        RewardStream(reward2, derive_stream(seed, rep, "arm:1")),
    ]
    if swap_arms:
        streams.reverse()
    rng = derive_stream(seed, rep, "policy")
    state = PolicyState()
    for t in range(1, n + 1):
        arm = policy.select_arm(state, t, rng)
        policy.update(state, arm, streams[arm - 1].next(), rng)
    return state.plays[0]


def tail_table(
    policy: BasePolicy, n: int, samples: Sequence[float], epsilons: Sequence[float]
) -> List[Dict[str, Any]]:
    reps = len(samples)
    rows = []
    for eps in epsilons:
        freq = _tail(samples, eps)
        row: Dict[str, Any] = {
            "epsilon": eps,
            "empirical": freq,
            "std_error": math.sqrt(freq * (1.0 - freq) / reps) if reps else math.nan,
            "theoretical_bound": None,
            "vacuous_flag": None,
        }
        if isinstance(policy, UCBPolicy) and 0.0 < eps < 0.5:
            bound = generic_ucb_tail_bound(n, eps, policy.rho)
            row["theoretical_bound"] = bound.value
            row["vacuous_flag"] = bound.vacuous
        rows.append(row)
    return rows


def summarize_zerogap(
    policy: BasePolicy,
    reward1: RewardModel,
    reward2: RewardModel,
    n: int,
    samples: Sequence[float],
    bins: int = DEFAULT_BINS,
    epsilons: Sequence[float] = DEFAULT_EPSILONS,
) -> ZeroGapResult:
    reps = len(samples)
    counts, edges = np.histogram(np.asarray(samples), bins=bins, range=(0.0, 1.0))
    if isinstance(policy, UCBPolicy) and reps:
        closest = min(min(x, 1.0 - x) for x in samples)
        if closest <= BOREL_CANTELLI_FLOOR:
            logger.warning(
                f"{policy.policy_id}: an arm was played a fraction {closest:.4f} "
                f"of the time, at or below {BOREL_CANTELLI_FLOOR:.4f}"
            )
    return ZeroGapResult(
        policy_id=policy.policy_id,
        reward1=str(reward1),
        reward2=str(reward2),
        n=n,
        reps=reps,
        samples=list(samples),
        bin_edges=edges.tolist(),
        counts=counts.tolist(),
        mean=float(np.mean(samples)) if reps else math.nan,
        std=float(np.std(samples, ddof=1)) if reps > 1 else math.nan,
        tails=tail_table(policy, n, samples, epsilons),
    )


def run_zerogap(
    policy_id: str,
    reward1: RewardModel,
    reward2: RewardModel,
    n: int,
    reps: int,
    bins: int = DEFAULT_BINS,
    seed: int = 0,
    epsilons: Sequence[float] = DEFAULT_EPSILONS,
    swap_arms: bool = False,
) -> ZeroGapResult:
    """Distribution of N_1(n)/n over ``reps`` runs on two equal-mean arms."""
    policy = make_policy(policy_id)
    check_zerogap_pair(policy, reward1, reward2)
    samples = [
        play_zerogap(policy, reward1, reward2, n, seed, rep, swap_arms) / n
        for rep in range(reps)
    ]
    return summarize_zerogap(policy, reward1, reward2, n, samples, bins, epsilons)


def _tail(samples: Sequence[float], epsilon: float) -> float:
    if not samples:
        return math.nan
    return sum(1 for x in samples if abs(x - 0.5) > epsilon) / len(samples)


def tail_frequency(result: ZeroGapResult, epsilon: float) -> float:
    """Fraction of runs with |N_1(n)/n - 1/2| > epsilon."""
    if not result.samples:
        raise DomainError("tail_frequency needs a nonempty result")
    return _tail(result.samples, epsilon)
