import re
from typing import Optional
from typing import Tuple

from cabsim.constants import POLICY_PATTERNS
from cabsim.exceptions import UnknownPolicyError


def parse_policy(policy_id: str) -> Tuple[str, Optional[float]]:
    """Split a policy id into its registered name and optional parameter.

    Parameters
    ----------
    policy_id : str
        One of ``"ucb1"``, ``"ucb-rho:<rho>"``, ``"ts-beta"``,
        ``"ts-gauss"``, ``"ts-gauss:<sigma>"`` or ``"greedy-commit"``.

    Returns
    -------
    tuple
        name : str
            The registry name, e.g. ``"ucb-rho"``.
        param : float or None
            The numeric parameter after the colon, if any.
    """
    for pattern in POLICY_PATTERNS:
        match = re.match(pattern, policy_id.strip())
        if match:
            groups = match.groups()
            name = groups[0]
            param = float(groups[1]) if len(groups) > 1 and groups[1] else None
            return name, param
    raise UnknownPolicyError(f"Unknown policy id '{policy_id}'")
