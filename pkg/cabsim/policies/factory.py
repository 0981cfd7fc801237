import importlib
import pkgutil
from abc import ABC
from abc import abstractmethod
from pathlib import Path
from typing import Optional

import numpy as np

from cabsim.exceptions import DomainError
from cabsim.exceptions import UnknownPolicyError
from cabsim.helpers import parse_policy
from cabsim.policies.state import PolicyState


class BasePolicy(ABC):
    """Abstract base class for two-armed playing rules."""

    # rewards must lie in [0, 1]
    bounded_rewards = True

    def __init__(self, type_name: str, param: Optional[float] = None):
        self.type_name = type_name
        self.param = param

    @property
    def policy_id(self) -> str:
        if self.param is None:
            return self.type_name
        return f"{self.type_name}:{self.param:g}"

    @abstractmethod
    def select_arm(
        self,
        state: PolicyState,
        t: int,
        rng: Optional[np.random.Generator] = None,
    ) -> int:
        """Arm (1 or 2) to play at decision time ``t``."""
        raise NotImplementedError

    def update(
        self,
        state: PolicyState,
        arm: int,
        reward: float,
        rng: Optional[np.random.Generator] = None,
    ) -> PolicyState:
        if self.bounded_rewards and not 0.0 <= reward <= 1.0:
            raise DomainError(f"{self.policy_id} needs rewards in [0, 1], got {reward}")
        state.record(arm, reward)
        return state

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.policy_id!r})"


class PolicyFactory:
    """Registry of playing rules, keyed by the name part of a policy id.

    ``"ucb-rho:3"`` resolves to the class registered under ``"ucb-rho"``,
    constructed with parameter 3.0.
    """

    class_registry = {}

    @classmethod
    def register_class(cls, type_names):
        """Decorator to register a policy class with specified type names.

        Parameters
        ----------
        type_names : list[str]
            List of type names that map to the class.

        Returns
        -------
        function
            Wrapper function that registers the class.
        """

        def wrapper(class_type):
            for type_name in type_names:
                cls.class_registry[type_name] = class_type
            return class_type

        return wrapper

    @classmethod
    def call_class(cls, policy_id: str) -> BasePolicy:
        """Build the policy named by ``policy_id``.

        Raises
        ------
        UnknownPolicyError
            If the id does not parse or its name is not registered.
        """
        type_name, param = parse_policy(policy_id)
        if type_name not in cls.class_registry:
            raise UnknownPolicyError(f"Policy '{type_name}' is not registered")
        return cls.class_registry[type_name](type_name=type_name, param=param)

    @classmethod
    def auto_import_classes(cls):
        """Import every module of this package so that policies register."""
        package_dir = Path(__file__).parent
        for _, module_name, _ in pkgutil.iter_modules([str(package_dir)]):
            if module_name not in ("factory", "state"):
                importlib.import_module(f"cabsim.policies.{module_name}")


def make_policy(policy_id: str) -> BasePolicy:
    return PolicyFactory.call_class(policy_id)


PolicyFactory.auto_import_classes()
