from cabsim.algorithms.alg import PairedTestResult  # noqa
from cabsim.algorithms.alg import paired_test  # noqa
from cabsim.algorithms.alg import run_alg  # noqa
from cabsim.algorithms.alg import run_epoch  # noqa
from cabsim.algorithms.bounds import alg_regret_bound  # noqa
from cabsim.algorithms.bounds import etc_f  # noqa
from cabsim.algorithms.bounds import etc_regret_bound  # noqa
from cabsim.algorithms.bounds import lower_bound_curve  # noqa
from cabsim.algorithms.bounds import ucb_two_armed_bound  # noqa
from cabsim.algorithms.etc import check_delta  # noqa
from cabsim.algorithms.etc import etc_test_error_rates  # noqa
from cabsim.algorithms.etc import exploration_length  # noqa
from cabsim.algorithms.etc import explore_and_test  # noqa
from cabsim.algorithms.etc import run_etc  # noqa
from cabsim.algorithms.lemmas import check_lemma1_equality  # noqa
from cabsim.algorithms.lemmas import paired_stopping_index  # noqa
from cabsim.algorithms.regret import RegretTracker  # noqa
from cabsim.algorithms.theta import ThetaSchedule  # noqa
from cabsim.algorithms.theta import theta  # noqa
from cabsim.algorithms.theta import validate_schedule  # noqa
