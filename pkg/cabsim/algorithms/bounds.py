"""Closed-form regret curves the simulated regret is compared against."""

import math

from cabsim.constants import C1
from cabsim.constants import LOWER_BOUND_PRESET_C
from cabsim.exceptions import DomainError
from cabsim.helpers import setup_logger
from cabsim.models import RegretBound

logger = setup_logger("[bounds]")


def etc_f(n: int, delta: float, gap: float) -> float:
    """Vanishing correction term of the explore-then-commit bound."""
    if not 0.0 < delta < gap:
        raise DomainError(f"f(n, delta, gap) needs 0 < delta < gap, got {delta}, {gap}")
    q = n ** (-(((gap - delta) / delta) ** 2))
    return q / (1.0 - q) * (2.0 / delta**2 * math.log(n) + 3.0)


def etc_regret_bound(n: int, delta: float, gap: float, alpha: float) -> RegretBound:
    """Upper bound on the expected regret of explore-then-commit.

    min(gap n, 2 gap (1 + 1/(2 alpha)) (2/delta^2 log n + 1)
               + gap/alpha (2 + f(n, delta, gap))).

    For delta >= gap the correction f is undefined; the linear branch is
    returned with ``degenerate=True``.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if delta <= 0.0:
        raise DomainError(f"delta must be positive, got {delta}")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    linear = gap * n
    if delta >= gap:
        logger.warning(f"delta={delta} >= gap={gap}: only the linear bound applies")
        return RegretBound(linear, degenerate=True)
    if n == 1:
        return RegretBound(linear)
    epoch = 2.0 / delta**2 * math.log(n) + 1.0
    explore = 2.0 * gap * (1.0 + 1.0 / (2.0 * alpha)) * epoch
    residual = gap / alpha * (2.0 + etc_f(n, delta, gap))
    return RegretBound(min(linear, explore + residual))


def alg_regret_bound(n: int, gap: float, alpha: float, beta: float, c2: float) -> float:
    """min(gap n, 8 log n / (gap beta) + (C1 + c2/alpha) gap / beta).

    ``c2`` depends only on the schedule parameters and has no closed form; the
    caller supplies it.
    """
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"beta must lie in (0, 1], got {beta}")
    if c2 < 0.0:
        raise DomainError(f"C2 must be nonnegative, got {c2}")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if gap <= 0.0:
        raise DomainError(f"gap must be positive, got {gap}")
    return min(
        gap * n, 8.0 * math.log(n) / (gap * beta) + (C1 + c2 / alpha) * gap / beta
    )


def ucb_two_armed_bound(n: int, gap: float) -> float:
    """Finite two-armed UCB1 bound min(gap n, 8 log n / gap + C1 gap)."""
    if gap <= 0.0:
        raise DomainError(f"gap must be positive, got {gap}")
    return min(gap * n, 8.0 * math.log(n) / gap + C1 * gap)


def lower_bound_curve(n: int, gap: float, c: float = LOWER_BOUND_PRESET_C) -> float:
    """Reference curve c log n / gap."""
    if gap <= 0.0:
        raise DomainError(f"gap must be positive, got {gap}")
    return c * math.log(n) / gap
