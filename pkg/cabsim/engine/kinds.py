from typing import Any
from typing import Dict
from typing import List

import numpy as np

from cabsim.algorithms import alg_regret_bound
from cabsim.algorithms import check_lemma1_equality
from cabsim.algorithms import etc_regret_bound
from cabsim.algorithms import lower_bound_curve
from cabsim.algorithms import run_alg
from cabsim.algorithms import run_etc
from cabsim.algorithms import ucb_two_armed_bound
from cabsim.constants import BETA_CSV_HEADER
from cabsim.constants import EPOCH_STATS_CSV_HEADER
from cabsim.constants import LEMMA1_CSV_HEADER
from cabsim.constants import REGRET_CSV_PREFIX
from cabsim.constants import REGRET_CSV_SUFFIX
from cabsim.constants import ZEROGAP_CSV_HEADER
from cabsim.engine.factory import BaseExperiment
from cabsim.engine.factory import ExperimentFactory
from cabsim.experiments.beta_estimator import checked_gap
from cabsim.experiments.beta_estimator import epoch_length
from cabsim.experiments.beta_estimator import first_violation
from cabsim.experiments.beta_estimator import summarize_epoch_lengths
from cabsim.experiments.beta_estimator import summarize_violations
from cabsim.experiments.beta_estimator import walk_streams
from cabsim.experiments.zerogap import check_zerogap_pair
from cabsim.experiments.zerogap import play_zerogap
from cabsim.experiments.zerogap import summarize_zerogap
from cabsim.helpers import mean_and_std_error
from cabsim.helpers import setup_logger
from cabsim.models import AggregateResult
from cabsim.policies import make_policy

logger = setup_logger("[Experiments]")


class _RegretExperiment(BaseExperiment):
    def __init__(self, config):
        super().__init__(config)
        self.instance = config.cab_instance()
        self.checkpoints = config.checkpoint_list()

    def _record(self, rep: int):
        raise NotImplementedError

    def algo_label(self) -> str:
        raise NotImplementedError

    def param_label(self) -> str:
        raise NotImplementedError

    def overlays(self) -> Dict[str, List[float]]:
        gap = self.instance.gap
        return {"lower_bound": [lower_bound_curve(c, gap) for c in self.checkpoints]}

    def run_replication(self, rep: int) -> Dict[str, Any]:
        record = self._record(rep)
        return {
            "rep": rep,
            "regret": [r for _, r in record.regret_checkpoints],
            "epochs": len(record.epochs),
            "plays_on_type2": record.plays_on_type2,
        }

    def aggregate(self, results: List[Dict[str, Any]]) -> AggregateResult:
        cfg, inst = self.config, self.instance
        header = (
            REGRET_CSV_PREFIX.split(",")
            + [f"regret_at_{c}" for c in self.checkpoints]
            + REGRET_CSV_SUFFIX.split(",")
        )
        rows = [
            [
                self.algo_label(),
                cfg.master_seed,
                r["rep"],
                cfg.n,
                inst.alpha,
                inst.mu1,
                inst.mu2,
                self.param_label(),
                *r["regret"],
                r["epochs"],
                r["plays_on_type2"],
            ]
            for r in results
        ]
        means, errors = [], []
        if results:
            for k in range(len(self.checkpoints)):
                mean, se = mean_and_std_error([r["regret"][k] for r in results])
                means.append(mean)
                errors.append(se)
        summary: Dict[str, Any] = {"algo": self.algo_label(), "gap": inst.gap}
        if results:
            summary["mean_final_regret"] = means[-1]
            summary["std_error_final_regret"] = errors[-1]
            summary["mean_epochs"] = float(np.mean([r["epochs"] for r in results]))
            interval = self.bootstrap_interval([r["regret"][-1] for r in results])
            if interval:
                summary["final_regret_ci"] = interval
            quarter = cfg.n // 4
            if quarter in self.checkpoints and means[self.checkpoints.index(quarter)]:
                summary["log_growth_ratio"] = (
                    means[-1] / means[self.checkpoints.index(quarter)]
                )
        return self.new_result(
            reps=len(results),
            header=header,
            rows=rows,
            checkpoints=list(self.checkpoints),
            mean_regret=means,
            std_error=errors,
            overlays=self.overlays(),
            summary=summary,
        )


@ExperimentFactory.register_class(type_names=["etc-regret"])
class EtcRegretExperiment(_RegretExperiment):
    def _record(self, rep: int):
        cfg = self.config
        return run_etc(
            self.instance, cfg.n, cfg.delta, cfg.master_seed, rep, self.checkpoints
        )

    def algo_label(self) -> str:
        return "etc"

    def param_label(self) -> str:
        return f"{self.config.delta:g}"

    def overlays(self) -> Dict[str, List[float]]:
        out = super().overlays()
        gap, alpha, delta = self.instance.gap, self.instance.alpha, self.config.delta
        if alpha <= 0.0:
            return out
        if delta >= gap:
            logger.warning(f"delta={delta} >= gap={gap}: the ETC overlay is linear")
            out["etc_bound"] = [gap * c for c in self.checkpoints]
        else:
            out["etc_bound"] = [
                etc_regret_bound(c, delta, gap, alpha).value for c in self.checkpoints
            ]
        return out


@ExperimentFactory.register_class(type_names=["alg-regret"])
class AlgRegretExperiment(_RegretExperiment):
    def __init__(self, config):
        super().__init__(config)
        self.schedule = config.theta_schedule()

    def _record(self, rep: int):
        cfg = self.config
        return run_alg(
            self.instance,
            cfg.n,
            cfg.policy,
            self.schedule,
            cfg.master_seed,
            rep,
            self.checkpoints,
        )

    def algo_label(self) -> str:
        return f"alg:{self.config.policy}"

    def param_label(self) -> str:
        return f"{self.schedule.m0}:{self.schedule.gamma:g}"

    def overlays(self) -> Dict[str, List[float]]:
        out = super().overlays()
        cfg, gap, alpha = self.config, self.instance.gap, self.instance.alpha
        out["ucb_two_armed_bound"] = [
            ucb_two_armed_bound(c, gap) for c in self.checkpoints
        ]
        if cfg.beta_hat is not None and cfg.c2 is not None and alpha > 0.0:
            out["alg_bound"] = [
                alg_regret_bound(c, gap, alpha, cfg.beta_hat, cfg.c2)
                for c in self.checkpoints
            ]
        return out


@ExperimentFactory.register_class(type_names=["zerogap"])
class ZeroGapExperiment(BaseExperiment):
    def __init__(self, config):
        super().__init__(config)
        self.policy = make_policy(config.policy)
        self.reward1 = config.family1()[0]
        self.reward2 = config.family2()[0]
        check_zerogap_pair(self.policy, self.reward1, self.reward2)

    def run_replication(self, rep: int) -> int:
        cfg = self.config
        return play_zerogap(
            self.policy, self.reward1, self.reward2, cfg.n, cfg.master_seed, rep
        )

    def aggregate(self, results: List[int]) -> AggregateResult:
        cfg = self.config
        samples = [count / cfg.n for count in results]
        result = summarize_zerogap(
            self.policy,
            self.reward1,
            self.reward2,
            cfg.n,
            samples,
            cfg.bins,
            cfg.epsilons,
        )
        summary = result.to_dict()
        summary.pop("samples")
        interval = self.bootstrap_interval(samples)
        if interval:
            summary["mean_ci"] = interval
        rows = [
            [self.policy.policy_id, cfg.master_seed, rep, cfg.n, x]
            for rep, x in enumerate(samples)
        ]
        return self.new_result(
            reps=len(results),
            header=ZEROGAP_CSV_HEADER.split(","),
            rows=rows,
            summary=summary,
        )


@ExperimentFactory.register_class(type_names=["beta"])
class BetaExperiment(BaseExperiment):
    def __init__(self, config):
        super().__init__(config)
        self.schedule = config.theta_schedule()
        self.pairs = [(f1, f2) for f1 in config.family1() for f2 in config.family2()]
        for f1, f2 in self.pairs:
            checked_gap(f1, f2, diagnostic=False)
        self._thetas = None

    @property
    def thetas(self) -> np.ndarray:
        if self._thetas is None:
            self._thetas = self.schedule.values(self.config.truncation)
        return self._thetas

    def run_replication(self, rep: int) -> List[Any]:
        seed = self.config.master_seed
        return [
            first_violation(f1, f2, self.thetas, *walk_streams(seed, rep, k))
            for k, (f1, f2) in enumerate(self.pairs)
        ]

    def aggregate(self, results: List[List[Any]]) -> AggregateResult:
        M = self.config.truncation
        estimates = [
            summarize_violations(
                [r[k] for r in results],
                M,
                abs(f1.mean - f2.mean),
                self.schedule,
                models=(str(f1), str(f2)),
            )
            for k, (f1, f2) in enumerate(self.pairs)
        ]
        best = min(estimates, key=lambda e: e.estimate) if results else estimates[0]
        rows = [
            [
                best.delta,
                best.m0,
                best.gamma,
                best.M,
                best.reps,
                best.estimate,
                best.std_error,
                c,
                p,
            ]
            for c, p in best.survival_curve
        ]
        summary = best.to_dict()
        summary["per_pair"] = [
            {"models": list(e.models), "estimate": e.estimate, "std_error": e.std_error}
            for e in estimates
        ]
        return self.new_result(
            reps=len(results),
            header=BETA_CSV_HEADER.split(","),
            rows=rows,
            summary=summary,
        )


@ExperimentFactory.register_class(type_names=["lemma1"])
class Lemma1Experiment(BaseExperiment):
    def run_replication(self, rep: int) -> Dict[str, Any]:
        cfg = self.config
        check = check_lemma1_equality(
            cfg.family1()[0],
            cfg.family2()[0],
            cfg.n,
            cfg.theta_schedule(),
            cfg.master_seed,
            rep,
            cfg.policy,
        )
        return {
            "rep": rep,
            "tau_adaptive": check.tau_adaptive,
            "tau_paired": check.tau_paired,
            "censored": check.censored,
            "equal": check.equal,
        }

    def aggregate(self, results: List[Dict[str, Any]]) -> AggregateResult:
        seed = self.config.master_seed
        rows = [
            [
                seed,
                r["rep"],
                r["tau_adaptive"],
                r["tau_paired"],
                r["censored"],
                r["equal"],
            ]
            for r in results
        ]
        equal = sum(r["equal"] for r in results)
        return self.new_result(
            reps=len(results),
            header=LEMMA1_CSV_HEADER.split(","),
            rows=rows,
            summary={
                "equal": equal,
                "censored": sum(r["censored"] for r in results),
                "all_equal": equal == len(results),
            },
        )


@ExperimentFactory.register_class(type_names=["epoch-stats"])
class EpochStatsExperiment(BaseExperiment):
    def run_replication(self, rep: int) -> List[Any]:
        cfg = self.config
        tau, censored = epoch_length(
            cfg.family1()[0],
            cfg.family2()[0],
            cfg.theta_schedule(),
            cfg.policy,
            cfg.n,
            cfg.master_seed,
            rep,
        )
        return [tau, censored]

    def aggregate(self, results: List[List[Any]]) -> AggregateResult:
        stats = summarize_epoch_lengths([tuple(r) for r in results], self.config.n)
        seed = self.config.master_seed
        rows = [
            [seed, rep, tau, censored] for rep, (tau, censored) in enumerate(results)
        ]
        return self.new_result(
            reps=len(results),
            header=EPOCH_STATS_CSV_HEADER.split(","),
            rows=rows,
            summary={
                "mean_tau": stats.mean_tau,
                "quantiles": stats.quantiles,
                "censored_fraction": stats.censored_fraction,
            },
        )
