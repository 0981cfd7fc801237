import math

import numpy as np
import pytest

from cabsim.exceptions import DomainError
from cabsim.environment import RewardModel
from cabsim.exceptions import UnknownPolicyError
from cabsim.policies import BetaThompsonPolicy
from cabsim.policies import GaussianThompsonPolicy
from cabsim.policies import PolicyFactory
from cabsim.policies import PolicyState
from cabsim.policies import UCBPolicy
from cabsim.policies import make_policy
from cabsim.policies import ucb_index


def _state(plays, sums):
    state = PolicyState()
    state.plays = list(plays)
    state.reward_sums = list(sums)
    return state


def test_registry_resolves_every_policy():
    assert {"ucb1", "ucb-rho", "ts-beta", "ts-gauss", "greedy-commit"} <= set(
        PolicyFactory.class_registry
    )
    assert isinstance(make_policy("ucb1"), UCBPolicy)
    assert make_policy("ucb-rho:3").rho == 3.0
    assert make_policy("ts-gauss:0.5").sigma == 0.5
    with pytest.raises(UnknownPolicyError):
        make_policy("softmax")


def test_ucb_index_value():
    state = _state([4, 1], [2.0, 0.0])
    assert ucb_index(state, 1, 100, 2.0) == pytest.approx(2.01743, abs=1e-5)
    with pytest.raises(DomainError):
        ucb_index(_state([0, 1], [0.0, 0.0]), 1, 10, 2.0)


def test_ucb_rho_must_exceed_half():
    with pytest.raises(DomainError):
        make_policy("ucb-rho:0.5")


def test_ucb_forced_plays_and_ties():
    policy = make_policy("ucb1")
    state = PolicyState()
    assert policy.select_arm(state, 1) == 1
    policy.update(state, 1, 1.0)
    assert policy.select_arm(state, 2) == 2
    policy.update(state, 2, 1.0)
    # equal indices break to arm 1
    assert policy.select_arm(state, 3) == 1


def test_ucb_uses_history_through_previous_round():
    policy = make_policy("ucb1")
    state = _state([3, 5], [1.5, 2.5])
    t = 9
    b1 = 0.5 + math.sqrt(2 * math.log(t - 1) / 3)
    b2 = 0.5 + math.sqrt(2 * math.log(t - 1) / 5)
    assert b1 > b2
    assert policy.select_arm(state, t) == 1


def test_bounded_policies_reject_out_of_range_rewards():
    policy = make_policy("ucb1")
    with pytest.raises(DomainError):
        policy.update(PolicyState(), 1, 1.5)
    unbounded = make_policy("ts-gauss")
    state = unbounded.update(PolicyState(), 1, 3.0)
    assert state.reward_sums[0] == 3.0


def test_beta_thompson_counts():
    policy = make_policy("ts-beta")
    assert isinstance(policy, BetaThompsonPolicy)
    state = PolicyState()
    rng = np.random.default_rng(0)
    policy.update(state, 1, 1.0, rng)
    policy.update(state, 1, 0.0, rng)
    policy.update(state, 2, 0.3, rng)
    assert state.beta_posterior(1) == (2, 2)
    assert sum(state.beta_posterior(2)) == 3
    with pytest.raises(DomainError):
        policy.update(state, 2, 0.3)


def test_beta_thompson_needs_a_stream():
    with pytest.raises(DomainError):
        make_policy("ts-beta").select_arm(PolicyState(), 1)


def test_beta_thompson_follows_lopsided_posteriors():
    policy = make_policy("ts-beta")
    state = PolicyState()
    state.successes = [200, 0]
    state.failures = [0, 200]
    rng = np.random.default_rng(1)
    assert all(policy.select_arm(state, t, rng) == 1 for t in range(1, 50))


def test_gaussian_posterior():
    policy = make_policy("ts-gauss:2")
    assert isinstance(policy, GaussianThompsonPolicy)
    state = _state([3, 0], [1.5, 0.0])
    mean, scale = policy.posterior(state, 1)
    assert mean == pytest.approx(1.5 / 4)
    assert mean == pytest.approx(state.mean(1) * 3 / 4)
    assert scale == pytest.approx(2.0 / 2.0)
    # an unplayed arm samples from the prior
    assert policy.posterior(state, 2) == (0.0, 2.0)


def test_greedy_commit_prefers_higher_mean():
    policy = make_policy("greedy-commit")
    assert policy.select_arm(_state([2, 2], [0.5, 1.5]), 5) == 2
    assert policy.select_arm(_state([2, 2], [1.0, 1.0]), 5) == 1
    assert policy.select_arm(_state([1, 0], [1.0, 0.0]), 2) == 2


def test_state_mean_requires_plays():
    with pytest.raises(DomainError):
        PolicyState().mean(1)


def _ucb1_counts(model1, model2, horizons, seed=0):
    policy = make_policy("ucb1")
    state = PolicyState()
    rng = np.random.default_rng(seed)
    rewards = (model1.sample(rng, horizons[-1]), model2.sample(rng, horizons[-1]))
    counts = {}
    for t in range(1, horizons[-1] + 1):
        arm = policy.select_arm(state, t)
        policy.update(state, arm, float(rewards[arm - 1][state.n(arm)]))
        if t in horizons:
            counts[t] = min(state.plays)
    return counts


@pytest.mark.parametrize(
    "model1, model2",
    [
        (RewardModel.bernoulli(0.5), RewardModel.bernoulli(0.5)),
        (RewardModel.bernoulli(0.9), RewardModel.bernoulli(0.5)),
    ],
)
def test_ucb_keeps_playing_both_arms(model1, model2):
    assert _ucb1_counts(model1, model2, [10**5])[10**5] >= 50


def test_ucb_count_diverges_even_on_a_unit_gap():
    # about 2 log t plays of the losing arm
    winner, loser = RewardModel.dirac(1.0), RewardModel.dirac(0.0)
    counts = _ucb1_counts(winner, loser, [10**3, 10**5])
    assert 5 <= counts[10**3] < counts[10**5]
