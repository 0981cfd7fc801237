import importlib
from abc import ABC
from abc import abstractmethod
from typing import Any
from typing import List
from typing import Optional
from typing import Sequence

from cabsim.engine.config import ExperimentConfig
from cabsim.exceptions import InvalidConfigurationError
from cabsim.helpers import bootstrap_ci
from cabsim.helpers import derive_stream
from cabsim.models import AggregateResult


class BaseExperiment(ABC):
    """One experiment kind: how to run a replication and how to reduce many.

    Replication results must be JSON-serializable so that completed ones can
    be salvaged when a batch fails.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config

    @abstractmethod
    def run_replication(self, rep: int) -> Any:
        raise NotImplementedError

    @abstractmethod
    def aggregate(self, results: List[Any]) -> AggregateResult:
        """Reduce results already ordered by replication index."""
        raise NotImplementedError

    def bootstrap_interval(self, values: Sequence[float]) -> Optional[List[float]]:
        """Bootstrap interval of the mean, or None when disabled or empty."""
        if not self.config.bootstrap or not values:
            return None
        rng = derive_stream(self.config.master_seed, 0, "bootstrap")
        return list(bootstrap_ci(values, self.config.bootstrap, rng))

    def new_result(self, **kwargs) -> AggregateResult:
        config = self.config.to_dict()
        config.pop("out")
        config.pop("format")
        return AggregateResult(
            kind=self.config.kind,
            config=config,
            config_hash=self.config.config_hash(),
            **kwargs,
        )


class ExperimentFactory:
    """Registry of experiment kinds, populated by `register_class`."""

    class_registry = {}

    @classmethod
    def register_class(cls, type_names):
        def wrapper(class_type):
            for type_name in type_names:
                cls.class_registry[type_name] = class_type
            return class_type

        return wrapper

    @classmethod
    def call_class(cls, config: ExperimentConfig) -> BaseExperiment:
        if config.kind in cls.class_registry:
            return cls.class_registry[config.kind](config)
        raise InvalidConfigurationError(f"Kind '{config.kind}' is not supported.")

    @classmethod
    def auto_import_classes(cls, module_name):
        importlib.import_module(f"cabsim.engine.{module_name}")


ExperimentFactory.auto_import_classes("kinds")
