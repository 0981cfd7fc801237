import math

import numpy as np
import pytest

from cabsim.algorithms import ThetaSchedule
from cabsim.algorithms import theta
from cabsim.algorithms import validate_schedule
from cabsim.exceptions import DomainError


def _direct(m0, gamma, m):
    x = m + m0
    return math.sqrt(m * m / x * (4 * math.log(x) + gamma * math.log(math.log(x))))


def test_theta_known_values():
    schedule = ThetaSchedule.alg_default()
    assert theta(schedule, 1) == pytest.approx(_direct(11, 2.1, 1), abs=1e-12)
    assert theta(schedule, 1) == pytest.approx(0.993777, abs=1e-6)
    assert theta(schedule, 1) < 1.0
    assert theta(schedule, 10) == pytest.approx(8.314, abs=1e-3)


def test_values_match_scalar_evaluation():
    schedule = ThetaSchedule.beta_default()
    values = schedule.values(50)
    assert values.shape == (50,)
    assert np.allclose(values, [schedule.theta(m) for m in range(1, 51)])


def test_domain_errors():
    with pytest.raises(DomainError):
        ThetaSchedule(11, 2.0)
    with pytest.raises(DomainError):
        ThetaSchedule(1, 2.1)
    with pytest.raises(DomainError):
        ThetaSchedule(-3, 2.1)
    with pytest.raises(DomainError):
        ThetaSchedule.alg_default().theta(0)


def test_presets_are_accepted():
    for schedule in (ThetaSchedule.alg_default(), ThetaSchedule.beta_default()):
        report = validate_schedule(schedule, 10**5)
        assert report.accepted, report.failures


def test_small_offset_is_rejected():
    report = validate_schedule(ThetaSchedule(2, 2.1), 1000)
    assert not report.accepted
    assert "theta_1 < 1" in report.failures
    assert report.theta1 > 1.0


def test_round_trip():
    schedule = ThetaSchedule(4000, 2.5)
    assert ThetaSchedule.from_dict(schedule.to_dict()) == schedule


def test_theta_grows_like_two_root_m_log_m():
    schedule = ThetaSchedule.alg_default()
    for m in np.logspace(6, 12, 13).astype(np.int64):
        ratio = schedule.theta(int(m)) / (2 * math.sqrt(m * math.log(m)))
        assert 0.9 <= ratio <= 1.1, m


def test_theta_outgrows_root_m():
    schedule = ThetaSchedule.alg_default()
    m = np.arange(1, 10**6 + 1)
    scaled = schedule.values(10**6) / np.sqrt(m)
    assert np.all(np.diff(scaled[10**3 - 1 :]) > 0)
