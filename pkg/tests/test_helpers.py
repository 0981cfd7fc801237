import logging

import numpy as np
import pytest

from cabsim.exceptions import UnknownPolicyError
from cabsim.helpers import bootstrap_ci
from cabsim.helpers import derive_stream
from cabsim.helpers import geometric_checkpoints
from cabsim.helpers import indent
from cabsim.helpers import mean_and_std_error
from cabsim.helpers import parse_policy
from cabsim.helpers import set_level
from cabsim.helpers import setup_logger
from cabsim.helpers import stable_hash


def test_derive_stream_is_reproducible_and_tag_specific():
    a = derive_stream(7, 3, "arm:0").random(5)
    b = derive_stream(7, 3, "arm:0").random(5)
    c = derive_stream(7, 3, "arm:1").random(5)
    d = derive_stream(7, 4, "arm:0").random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_substreams_are_uncorrelated():
    first = [derive_stream(11, r, "arm:0").random() for r in range(10**4)]
    second = [derive_stream(11, r, "walk:0:1").random() for r in range(10**4)]
    assert abs(np.corrcoef(first, second)[0, 1]) < 0.05


def test_parse_policy():
    assert parse_policy("ucb1") == ("ucb1", None)
    assert parse_policy("ucb-rho:3") == ("ucb-rho", 3.0)
    assert parse_policy("ts-gauss") == ("ts-gauss", None)
    assert parse_policy("ts-gauss:0.5") == ("ts-gauss", 0.5)
    with pytest.raises(UnknownPolicyError):
        parse_policy("epsilon-greedy")
    with pytest.raises(UnknownPolicyError):
        parse_policy("ucb-rho")


def test_geometric_checkpoints():
    assert geometric_checkpoints(10) == [1, 2, 4, 8, 10]
    assert geometric_checkpoints(8) == [1, 2, 4, 8]
    assert geometric_checkpoints(0) == []


def test_mean_and_std_error():
    mean, se = mean_and_std_error([1.0, 2.0, 3.0, 4.0])
    assert mean == 2.5
    assert se == pytest.approx((5.0 / 3.0 / 4.0) ** 0.5)
    assert mean_and_std_error([2.0]) == (2.0, 0.0)


def test_bootstrap_ci():
    values = [float(v) for v in range(100)]
    lo, hi = bootstrap_ci(values, 500, np.random.default_rng(0))
    assert lo < 49.5 < hi
    assert hi - lo < 20
    again = bootstrap_ci(values, 500, np.random.default_rng(0))
    assert again == (lo, hi)
    empty = bootstrap_ci([], 500, np.random.default_rng(0))
    assert all(np.isnan(empty))


def test_stable_hash_ignores_key_order():
    assert stable_hash({"a": 1, "b": [1, 2]}) == stable_hash({"b": [1, 2], "a": 1})


def test_indent():
    assert indent("a\n\nb", "  ") == "  a\n\n  b"


def test_set_level_applies_to_registered_loggers():
    logger = setup_logger("[test-helpers]")
    set_level("WARNING")
    assert logger.level == logging.WARNING
    set_level("INFO")
    assert logger.level == logging.INFO
