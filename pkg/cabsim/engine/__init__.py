from cabsim.engine.config import ExperimentConfig  # noqa
from cabsim.engine.export import export  # noqa
from cabsim.engine.export import load_result  # noqa
from cabsim.engine.export import to_csv  # noqa
from cabsim.engine.export import to_json  # noqa
from cabsim.engine.factory import BaseExperiment  # noqa
from cabsim.engine.factory import ExperimentFactory  # noqa
from cabsim.engine.runner import ReplicationSink  # noqa
from cabsim.engine.runner import run_batch  # noqa
