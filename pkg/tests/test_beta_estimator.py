import math

import pytest

from cabsim.algorithms import ThetaSchedule
from cabsim.algorithms import run_epoch
from cabsim.environment import RewardModel
from cabsim.environment import RewardStream
from cabsim.exceptions import DomainError
from cabsim.experiments import beta_vs_gap
from cabsim.experiments import centered_bernoulli_pair
from cabsim.experiments import epoch_length_stats
from cabsim.experiments import estimate_beta
from cabsim.experiments import survival_curve
from cabsim.experiments.beta_estimator import first_violation
from cabsim.experiments.beta_estimator import walk_streams
from cabsim.policies import make_policy


def test_deterministic_gap_always_survives():
    estimate = estimate_beta(
        RewardModel.dirac(0.9), RewardModel.dirac(0.5), M=5000, reps=20
    )
    assert estimate.estimate == 1.0
    assert estimate.std_error == 0.0
    assert estimate.to_dict()["bias"] == "overestimate"


def test_equal_means_need_diagnostic_mode():
    half = RewardModel.dirac(0.5)
    with pytest.raises(DomainError):
        estimate_beta(half, half, M=100, reps=5)
    estimate = estimate_beta(half, half, M=100, reps=5, diagnostic=True)
    assert estimate.estimate == 0.0


def test_longer_truncation_extends_the_same_paths():
    high, low = RewardModel.bernoulli(0.6), RewardModel.bernoulli(0.4)
    thetas = ThetaSchedule.beta_default().values(8000)
    for rep in range(100):
        short = first_violation(high, low, thetas[:2000], *walk_streams(5, rep))
        long = first_violation(high, low, thetas, *walk_streams(5, rep))
        if short is not None:
            assert long == short
        elif long is not None:
            assert long > 2000


def test_estimate_is_nonincreasing_in_truncation():
    high, low = RewardModel.bernoulli(0.6), RewardModel.bernoulli(0.4)
    a = estimate_beta(high, low, M=2000, reps=300, seed=2)
    b = estimate_beta(high, low, M=8000, reps=300, seed=2)
    assert b.estimate <= a.estimate


def test_survival_curve_is_nonincreasing():
    curve = survival_curve(
        RewardModel.bernoulli(0.7), RewardModel.bernoulli(0.3), M=4096, reps=200
    )
    checkpoints = [c for c, _ in curve]
    survival = [p for _, p in curve]
    assert checkpoints[-1] == 4096
    assert all(b <= a for a, b in zip(survival, survival[1:]))


def test_family_estimate_is_the_worst_pair():
    estimate = estimate_beta(
        [RewardModel.dirac(0.9)],
        [RewardModel.dirac(0.5), RewardModel.uniform()],
        M=1000,
        reps=300,
    )
    assert estimate.models == ("dirac(0.9)", "uniform()")
    assert estimate.estimate < 1.0


def test_centered_bernoulli_pair():
    high, low = centered_bernoulli_pair(0.4)
    assert high.mean == pytest.approx(0.7)
    assert low.mean == pytest.approx(0.3)
    with pytest.raises(DomainError):
        centered_bernoulli_pair(0.0)


def test_epoch_length_stats_on_homogeneous_pair():
    half = RewardModel.bernoulli(0.5)
    stats = epoch_length_stats(
        half, half, ThetaSchedule.alg_default(), "ucb1", 2000, reps=100
    )
    assert stats.reps == 100
    assert set(stats.quantiles) == {"q50", "q90", "q99"}
    assert stats.censored_fraction < 0.2
    assert stats.mean_tau >= 2


@pytest.mark.slow
def test_beta_tracks_the_gap():
    gaps = [0.2, 0.4, 0.5, 0.6, 0.7]
    by_gap = dict(zip(gaps, beta_vs_gap(gaps, M=10**5, reps=10**4)))
    rising = [by_gap[0.2], by_gap[0.4], by_gap[0.6]]
    for a, b in zip(rising, rising[1:]):
        slack = 2 * math.hypot(a.std_error, b.std_error)
        assert b.estimate >= a.estimate - slack
    for gap in (0.5, 0.6, 0.7):
        assert abs(by_gap[gap].estimate - gap) <= 0.15


@pytest.mark.slow
def test_homogeneous_epochs_have_stable_length():
    half = RewardModel.bernoulli(0.5)
    schedule = ThetaSchedule.alg_default()
    short = epoch_length_stats(half, half, schedule, "ucb1", 10**4, reps=1000)
    long = epoch_length_stats(half, half, schedule, "ucb1", 10**5, reps=1000)
    assert long.censored_fraction < 0.05
    assert abs(long.mean_tau - short.mean_tau) <= 0.1 * short.mean_tau


def test_epochs_at_two_plays_are_all_censored():
    half = RewardModel.dirac(0.5)
    stats = epoch_length_stats(
        half, half, ThetaSchedule.alg_default(), "ucb1", 2, reps=20
    )
    assert stats.censored_fraction == 1.0
    assert stats.taus == [2] * 20


@pytest.mark.slow
def test_heterogeneous_epochs_survive_at_least_as_often_as_the_walk():
    # epochs read the walk's own streams, so an epoch can only fire where the
    # walk does
    high, low = RewardModel.bernoulli(0.9), RewardModel.bernoulli(0.5)
    schedule = ThetaSchedule.beta_default()
    n, reps = 10**4, 400
    censored = 0
    for rep in range(reps):
        rng1, rng2 = walk_streams(7, rep)
        outcome = run_epoch(
            RewardStream(high, rng1),
            RewardStream(low, rng2),
            n,
            make_policy("ucb1"),
            schedule,
        )
        censored += outcome.censored
    estimate = estimate_beta(high, low, schedule, M=n, reps=reps, seed=7)
    assert estimate.estimate > 0.0
    assert censored / reps >= estimate.estimate - 2 * estimate.std_error
