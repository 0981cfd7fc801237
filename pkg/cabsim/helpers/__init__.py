from cabsim.helpers.logging_config import set_level  # noqa
from cabsim.helpers.logging_config import setup_logger  # noqa
from cabsim.helpers.parse_policy import parse_policy  # noqa
from cabsim.helpers.rng import derive_stream  # noqa
from cabsim.helpers.utils import bootstrap_ci  # noqa
from cabsim.helpers.utils import canonical_json  # noqa
from cabsim.helpers.utils import geometric_checkpoints  # noqa
from cabsim.helpers.utils import indent  # noqa
from cabsim.helpers.utils import mean_and_std_error  # noqa
from cabsim.helpers.utils import stable_hash  # noqa
