import math
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from cabsim.algorithms import ThetaSchedule
from cabsim.algorithms import run_epoch
from cabsim.algorithms import validate_schedule
from cabsim.constants import DEFAULT_TRUNCATION
from cabsim.constants import WALK_CHUNK_START
from cabsim.environment import RewardModel
from cabsim.environment import RewardStream
from cabsim.exceptions import DomainError
from cabsim.helpers import derive_stream
from cabsim.helpers import geometric_checkpoints
from cabsim.helpers import setup_logger
from cabsim.models import BetaEstimate
from cabsim.models import EpochLengthStats
from cabsim.policies import make_policy

logger = setup_logger("[BetaEstimator]")

ModelOrFamily = Union[RewardModel, Sequence[RewardModel]]


def first_violation(
    model1: RewardModel,
    model2: RewardModel,
    thetas: np.ndarray,
    rng1: np.random.Generator,
    rng2: np.random.Generator,
) -> Optional[int]:
    """First m with |sum_{j <= m} (Y1_j - Y2_j)| < theta_m, or None if the walk
    stays at or above the thresholds up to ``len(thetas)``.

    The walk is drawn in chunks that double in size; the chunk sizes do not
    depend on the truncation, so a longer truncation extends the same path.
    """
    M = len(thetas)
    pos, level, chunk = 0, 0.0, WALK_CHUNK_START
    while pos < M:
        steps = model1.sample(rng1, chunk) - model2.sample(rng2, chunk)
        walk = level + np.cumsum(steps)
        upto = min(chunk, M - pos)
        hits = np.flatnonzero(np.abs(walk[:upto]) < thetas[pos : pos + upto])
        if hits.size:
            return pos + int(hits[0]) + 1
        level = float(walk[-1])
        pos += chunk
        chunk *= 2
    return None


def walk_streams(seed: int, rep: int, pair_index: int = 0):
    return (
        derive_stream(seed, rep, f"walk:{pair_index}:1"),
        derive_stream(seed, rep, f"walk:{pair_index}:2"),
    )


def summarize_violations(
    violations: Sequence[Optional[int]],
    M: int,
    delta: float,
    schedule: ThetaSchedule,
    models: Tuple[str, str] = ("", ""),
) -> BetaEstimate:
    """Survival curve and estimate from per-path first-violation times."""
    reps = len(violations)
    checkpoints = geometric_checkpoints(M)
    times = np.array([M + 1 if v is None else v for v in violations], dtype=np.int64)
    survival = [
        float(np.count_nonzero(times > c)) / reps if reps else math.nan
        for c in checkpoints
    ]
    estimate = survival[-1] if survival else math.nan
    std_error = math.sqrt(estimate * (1.0 - estimate) / reps) if reps else math.nan
    return BetaEstimate(
        delta=delta,
        m0=schedule.m0,
        gamma=schedule.gamma,
        M=M,
        reps=reps,
        estimate=estimate,
        std_error=std_error,
        checkpoints=checkpoints,
        survival=survival,
        models=models,
    )


def _as_family(models: ModelOrFamily) -> List[RewardModel]:
    if isinstance(models, RewardModel):
        return [models]
    return list(models)


def checked_gap(model1: RewardModel, model2: RewardModel, diagnostic: bool) -> float:
    delta = abs(model1.mean - model2.mean)
    if delta == 0.0 and not diagnostic:
        raise DomainError(
            f"{model1} and {model2} have equal means; survival is only estimated "
            "for a positive gap outside diagnostic mode"
        )
    return delta


def _estimate_pair(
    model1: RewardModel,
    model2: RewardModel,
    schedule: ThetaSchedule,
    M: int,
    reps: int,
    seed: int,
    pair_index: int,
    diagnostic: bool,
) -> BetaEstimate:
    delta = checked_gap(model1, model2, diagnostic)
    thetas = schedule.values(M)
    violations = [
        first_violation(model1, model2, thetas, *walk_streams(seed, rep, pair_index))
        for rep in range(reps)
    ]
    return summarize_violations(
        violations, M, delta, schedule, models=(str(model1), str(model2))
    )


def estimate_beta(
    model1: ModelOrFamily,
    model2: ModelOrFamily,
    schedule: Optional[ThetaSchedule] = None,
    M: int = DEFAULT_TRUNCATION,
    reps: int = 10**4,
    seed: int = 0,
    diagnostic: bool = False,
) -> BetaEstimate:
    """Estimate the probability that the paired walk never drops below theta.

    Parameters
    ----------
    model1, model2 : RewardModel or sequence of RewardModel
        The type-1 and type-2 reward distributions. With families, every
        (F1, F2) pair is estimated and the smallest estimate is returned.
    schedule : ThetaSchedule, optional
        Thresholds; defaults to the (m0=4000, gamma=2.1) preset.
    M : int
        Truncation of the infinite intersection; the estimate is biased
        upwards.
    reps : int
        Number of independent paths per pair.
    seed : int
        Master seed.
    diagnostic : bool
        Allow equal means, where the survival probability decays to 0.

    Returns
    -------
    BetaEstimate
    """
    schedule = schedule or ThetaSchedule.beta_default()
    report = validate_schedule(schedule, max(M, 2))
    if not report.accepted:
        raise DomainError(f"Schedule {schedule} rejected: {report.failures}")
    pairs = [(f1, f2) for f1 in _as_family(model1) for f2 in _as_family(model2)]
    estimates = [
        _estimate_pair(f1, f2, schedule, M, reps, seed, k, diagnostic)
        for k, (f1, f2) in enumerate(pairs)
    ]
    best = min(estimates, key=lambda e: e.estimate)
    logger.debug(
        f"beta_hat={best.estimate:.4f} (se {best.std_error:.4f}) for {best.models}, "
        f"M={M}, reps={reps}"
    )
    return best


def survival_curve(
    model1: ModelOrFamily,
    model2: ModelOrFamily,
    schedule: Optional[ThetaSchedule] = None,
    M: int = DEFAULT_TRUNCATION,
    reps: int = 10**4,
    seed: int = 0,
    diagnostic: bool = False,
) -> List[Tuple[int, float]]:
    return estimate_beta(
        model1, model2, schedule, M, reps, seed, diagnostic
    ).survival_curve


def centered_bernoulli_pair(gap: float) -> Tuple[RewardModel, RewardModel]:
    """Bernoulli((1 + gap) / 2) against Bernoulli((1 - gap) / 2)."""
    if not 0.0 < gap < 1.0:
        raise DomainError(f"gap must lie in (0, 1), got {gap}")
    return RewardModel.bernoulli((1.0 + gap) / 2.0), RewardModel.bernoulli(
        (1.0 - gap) / 2.0
    )


def beta_vs_gap(
    gaps: Sequence[float],
    schedule: Optional[ThetaSchedule] = None,
    M: int = DEFAULT_TRUNCATION,
    reps: int = 10**4,
    seed: int = 0,
) -> List[BetaEstimate]:
    """Survival estimates over a grid of gaps with centered Bernoulli types."""
    return [
        estimate_beta(*centered_bernoulli_pair(gap), schedule, M, reps, seed)
        for gap in gaps
    ]


def epoch_length(
    model1: RewardModel,
    model2: RewardModel,
    schedule: ThetaSchedule,
    policy_id: str,
    n: int,
    seed: int,
    rep: int,
) -> Tuple[int, bool]:
    """Length of one epoch on a forced pair and whether it hit the horizon."""
    outcome = run_epoch(
        RewardStream(model1, derive_stream(seed, rep, "arm:0")),
        RewardStream(model2, derive_stream(seed, rep, "arm:1")),
        n,
        make_policy(policy_id),
        schedule,
        rng=derive_stream(seed, rep, "policy"),
    )
    return outcome.length, outcome.censored


def summarize_epoch_lengths(
    lengths: Sequence[Tuple[int, bool]], n: int
) -> EpochLengthStats:
    taus = [tau for tau, _ in lengths]
    finished = [tau for tau, censored in lengths if not censored]
    reps = len(lengths)
    quantiles = {}
    if taus:
        for q in (0.5, 0.9, 0.99):
            quantiles[f"q{int(q * 100)}"] = float(np.quantile(taus, q))
    return EpochLengthStats(
        n=n,
        reps=reps,
        mean_tau=float(np.mean(finished)) if finished else math.nan,
        quantiles=quantiles,
        censored_fraction=(reps - len(finished)) / reps if reps else math.nan,
        taus=taus,
    )


def epoch_length_stats(
    model1: RewardModel,
    model2: RewardModel,
    schedule: ThetaSchedule,
    policy_id: str,
    n: int,
    reps: int,
    seed: int = 0,
) -> EpochLengthStats:
    """Empirical distribution of the termination time of single epochs.

    Epochs that reach the horizon ``n`` are censored; they count as ``n`` in
    the quantiles and are excluded from ``mean_tau``.
    """
    return summarize_epoch_lengths(
        [
            epoch_length(model1, model2, schedule, policy_id, n, seed, rep)
            for rep in range(reps)
        ],
        n,
    )
