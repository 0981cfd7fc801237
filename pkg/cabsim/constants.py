"""
A file contains all constant values
"""

import math

# theta-schedule presets as (m0, gamma)
ALG_PRESET = (11, 2.1)
BETA_PRESET = (4000, 2.1)

# absolute constant of the UCB1 regret analysis
C1 = 1.0 + math.pi**2 / 3.0

# asymptotic lower-bound constant on the gap-normalized curve
LOWER_BOUND_PRESET_C = 0.5

MEAN_TOLERANCE = 1e-12

# per-play regret trajectories are kept only up to this horizon
FULL_TRAJECTORY_MAX = 10**5

REWARD_BLOCK_SIZE = 512

# first chunk of the paired walk in the beta estimator, doubled each chunk
WALK_CHUNK_START = 64

DEFAULT_TRUNCATION = 10**5
DEFAULT_BINS = 100
DEFAULT_EPSILONS = (0.25, 0.40, 0.45, 0.48)

DESK_SCALE = {
    "zerogap": {"n": 10**4, "reps": 2000},
    "beta": {"truncation": 10**5, "reps": 10**4},
}
FULL_SCALE = {
    "zerogap": {"n": 10**4, "reps": 20000},
    "beta": {"truncation": 10**6, "reps": 10**5},
}

DESK_GAP_GRID = (0.2, 0.4, 0.5, 0.6, 0.7)
FULL_GAP_GRID = tuple(round(0.05 * k, 2) for k in range(1, 20))

# 1/2 - sqrt(3)/4, almost-sure linear sampling rate of either arm under UCB1
BOREL_CANTELLI_FLOOR = 0.5 - math.sqrt(3.0) / 4.0

# standard errors of Monte-Carlo slack in bound comparisons
MC_SLACK_SE = 2.0

POLICY_PATTERNS = [
    r"^(ucb1)$",
    r"^(ucb-rho):([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)$",
    r"^(ts-beta)$",
    r"^(ts-gauss)(?::([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))?$",
    r"^(greedy-commit)$",
]

EXPERIMENT_KINDS = (
    "etc-regret",
    "alg-regret",
    "zerogap",
    "beta",
    "lemma1",
    "epoch-stats",
)

ZEROGAP_CSV_HEADER = "policy,seed,rep,n,N1_over_n"
BETA_CSV_HEADER = "delta,m0,gamma,M,reps,beta_hat,std_error,checkpoint,survival"
LEMMA1_CSV_HEADER = "seed,rep,tau_adaptive,tau_paired,censored,equal"
EPOCH_STATS_CSV_HEADER = "seed,rep,tau,censored"
REGRET_CSV_PREFIX = "algo,seed,rep,n,alpha,mu1,mu2,delta_or_m0_gamma"
REGRET_CSV_SUFFIX = "epochs_count,plays_on_type2"

# worker processes log too, so records carry the pid
LOG_FORMAT = (
    "%(log_color)s%(asctime)s - %(name)s[%(process)d] - %(levelname)s - %(message)s"
)
LOG_DATEFMT = "%y-%m-%d %H:%M:%S"
LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "red,bg_white",
}
