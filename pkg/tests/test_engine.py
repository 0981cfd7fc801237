import json

import pytest

from cabsim.engine import ExperimentConfig
from cabsim.engine import ExperimentFactory
from cabsim.engine import ReplicationSink
from cabsim.engine import export
from cabsim.engine import load_result
from cabsim.engine import run_batch
from cabsim.engine import to_csv
from cabsim.engine.kinds import EtcRegretExperiment
from cabsim.environment import CABInstance
from cabsim.environment import RewardModel
from cabsim.exceptions import ExportError
from cabsim.exceptions import InvalidConfigurationError
from cabsim.exceptions import ReplicationError

INSTANCE = CABInstance.bernoulli(0.9, 0.5, 0.5).to_dict()
HALF = RewardModel.bernoulli(0.5).to_dict()
HIGH = RewardModel.bernoulli(0.9).to_dict()
LOW = RewardModel.bernoulli(0.5).to_dict()

CONFIGS = {
    "etc-regret": dict(instance=INSTANCE, delta=0.3, n=2000),
    "alg-regret": dict(instance=INSTANCE, n=2000, policy="ucb1"),
    "zerogap": dict(reward1=HALF, reward2=HALF, n=500),
    "beta": dict(
        reward1=RewardModel.bernoulli(0.7).to_dict(),
        reward2=RewardModel.bernoulli(0.3).to_dict(),
        truncation=2000,
    ),
    "lemma1": dict(reward1=HIGH, reward2=LOW, n=2000),
    "epoch-stats": dict(reward1=HALF, reward2=HALF, n=1000),
}


def _config(kind, **overrides):
    payload = {"kind": kind, "reps": 6, "master_seed": 3, **CONFIGS[kind]}
    payload.update(overrides)
    return ExperimentConfig.from_dict(payload)


def test_every_kind_is_registered():
    assert set(CONFIGS) <= set(ExperimentFactory.class_registry)


def test_config_json_round_trip():
    config = _config("alg-regret", schedule={"m0": 11, "gamma": 2.1})
    assert ExperimentConfig.from_json(config.to_json()) == config


def test_config_hash_ignores_destination():
    a = _config("etc-regret")
    b = _config("etc-regret", out="/tmp/x.csv", format="csv")
    c = _config("etc-regret", master_seed=4)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()


@pytest.mark.parametrize(
    "payload",
    [
        {"kind": "nope"},
        {"kind": "etc-regret", "instance": INSTANCE},
        {"kind": "zerogap", "reward1": HALF},
        {"kind": "zerogap", "reward1": HALF, "reward2": HALF, "policy": "softmax"},
        {"kind": "etc-regret", "instance": INSTANCE, "delta": 0.3, "colour": 1},
        {
            "kind": "alg-regret",
            "instance": INSTANCE,
            "schedule": {"m0": 1, "gamma": 3},
        },
        {"kind": "etc-regret", "instance": INSTANCE, "delta": 0.3, "reps": -1},
        {"kind": "etc-regret", "instance": INSTANCE, "delta": 0.3, "bootstrap": -1},
        {"kind": "etc-regret", "instance": INSTANCE, "delta": 1.5},
        {"reward1": HALF},
    ],
)
def test_invalid_configs(payload):
    with pytest.raises(InvalidConfigurationError):
        ExperimentConfig.from_dict(payload)


def test_replication_sink_orders_by_rep():
    a, b = ReplicationSink(), ReplicationSink()
    a.add(2, "c")
    a.add(0, "a")
    b.add(1, "b")
    merged = a.merge(b)
    assert merged.results() == ["a", "b", "c"]
    assert len(merged) == 3
    assert b.merge(a).ordered() == merged.ordered()


@pytest.mark.parametrize("kind", sorted(CONFIGS))
def test_exports_do_not_depend_on_worker_count(kind, tmp_path):
    config = _config(kind)
    sequential = run_batch(config, workers=1, progress=False)
    parallel = run_batch(config, workers=2, progress=False)
    assert sequential == parallel
    assert sequential.metadata["workers"] == 1
    for fmt in ("csv", "json"):
        one = export(sequential, fmt, tmp_path / f"one.{fmt}")
        two = export(parallel, fmt, tmp_path / f"two.{fmt}")
        assert one.read_bytes() == two.read_bytes()


@pytest.mark.parametrize("kind", sorted(CONFIGS))
def test_zero_reps_give_an_empty_aggregate(kind):
    result = run_batch(_config(kind, reps=0), progress=False)
    assert result.reps == 0
    assert result.header
    if kind != "beta":
        assert result.rows == []


def test_regret_aggregate_layout():
    result = run_batch(_config("etc-regret"), progress=False)
    n_checkpoints = len(result.checkpoints)
    assert result.checkpoints[-1] == 2000
    assert result.header[:8] == [
        "algo",
        "seed",
        "rep",
        "n",
        "alpha",
        "mu1",
        "mu2",
        "delta_or_m0_gamma",
    ]
    assert result.header[-2:] == ["epochs_count", "plays_on_type2"]
    assert len(result.header) == 10 + n_checkpoints
    assert [row[2] for row in result.rows] == list(range(6))
    assert len(result.mean_regret) == n_checkpoints
    assert set(result.overlays) == {"lower_bound", "etc_bound"}
    assert "out" not in result.config


def test_alg_overlay_needs_beta_and_c2():
    result = run_batch(_config("alg-regret", reps=2), progress=False)
    assert "alg_bound" not in result.overlays
    result = run_batch(
        _config("alg-regret", reps=2, beta_hat=0.4, c2=10.0), progress=False
    )
    assert len(result.overlays["alg_bound"]) == len(result.checkpoints)
    assert result.rows[0][7] == "11:2.1"


def test_lemma1_batch_agrees_everywhere():
    result = run_batch(_config("lemma1"), progress=False)
    assert result.summary["all_equal"]
    assert result.header == [
        "seed",
        "rep",
        "tau_adaptive",
        "tau_paired",
        "censored",
        "equal",
    ]


def test_csv_cells():
    result = run_batch(_config("lemma1", reps=2), progress=False)
    text = to_csv(result)
    lines = text.split("\n")
    assert lines[0] == "seed,rep,tau_adaptive,tau_paired,censored,equal"
    assert lines[1].split(",")[-1] == "true"
    assert lines[1].split(",")[-2] in ("true", "false")
    assert text.endswith("\n")


def test_json_export_round_trip(tmp_path):
    result = run_batch(_config("zerogap"), progress=False)
    path = export(result, "json", tmp_path / "out" / "zerogap.json")
    payload = json.loads(path.read_text())
    assert "metadata" not in payload
    assert load_result(path) == result
    assert not (tmp_path / "out" / "zerogap.json.part").exists()


def test_export_errors(tmp_path):
    result = run_batch(_config("zerogap", reps=1), progress=False)
    with pytest.raises(ExportError):
        export(result, "xml", tmp_path / "x.xml")
    with pytest.raises(ExportError):
        load_result(tmp_path / "missing.json")


def test_failed_replication_salvages_completed_ones(tmp_path, monkeypatch):
    original = EtcRegretExperiment.run_replication

    def flaky(self, rep):
        if rep == 3:
            raise FloatingPointError("boom")
        return original(self, rep)

    monkeypatch.setattr(EtcRegretExperiment, "run_replication", flaky)
    out = tmp_path / "etc.csv"
    config = _config("etc-regret", out=str(out), master_seed=99)
    with pytest.raises(ReplicationError) as info:
        run_batch(config, progress=False)
    assert info.value.completed == 3
    partial = tmp_path / "etc.csv.partial.jsonl"
    lines = partial.read_text().splitlines()
    assert [json.loads(line)["rep"] for line in lines] == [0, 1, 2]


def test_bootstrap_intervals_are_opt_in():
    plain = run_batch(_config("etc-regret"), progress=False)
    assert "final_regret_ci" not in plain.summary
    result = run_batch(_config("etc-regret", bootstrap=200), progress=False)
    lo, hi = result.summary["final_regret_ci"]
    mean = result.summary["mean_final_regret"]
    assert lo - 1e-9 <= mean <= hi + 1e-9
    again = run_batch(_config("etc-regret", bootstrap=200), workers=2, progress=False)
    assert again.summary == result.summary
    zerogap = run_batch(_config("zerogap", bootstrap=200), progress=False)
    assert len(zerogap.summary["mean_ci"]) == 2
