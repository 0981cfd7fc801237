from cabsim.experiments.beta_estimator import beta_vs_gap  # noqa
from cabsim.experiments.beta_estimator import centered_bernoulli_pair  # noqa
from cabsim.experiments.beta_estimator import epoch_length_stats  # noqa
from cabsim.experiments.beta_estimator import estimate_beta  # noqa
from cabsim.experiments.beta_estimator import survival_curve  # noqa
from cabsim.experiments.zerogap import generic_ucb_tail_bound  # noqa
from cabsim.experiments.zerogap import run_zerogap  # noqa
from cabsim.experiments.zerogap import tail_frequency  # noqa
from cabsim.experiments.zerogap import ucb1_tail_bound  # noqa
