import argparse
import math
import sys
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

from cabsim.algorithms import ThetaSchedule
from cabsim.algorithms import alg_regret_bound
from cabsim.algorithms import etc_regret_bound
from cabsim.algorithms import exploration_length
from cabsim.algorithms import lower_bound_curve
from cabsim.algorithms import ucb_two_armed_bound
from cabsim.algorithms import validate_schedule
from cabsim.constants import ALG_PRESET
from cabsim.constants import BETA_PRESET
from cabsim.constants import DEFAULT_EPSILONS
from cabsim.constants import DESK_GAP_GRID
from cabsim.constants import DESK_SCALE
from cabsim.constants import FULL_GAP_GRID
from cabsim.constants import FULL_SCALE
from cabsim.constants import MC_SLACK_SE
from cabsim.engine import ExperimentConfig
from cabsim.engine import export
from cabsim.engine import run_batch
from cabsim.environment import RewardModel
from cabsim.exceptions import AcceptanceCheckError
from cabsim.exceptions import DomainError
from cabsim.exceptions import ExportError
from cabsim.exceptions import InvalidConfigurationError
from cabsim.exceptions import ReplicationError
from cabsim.exceptions import UnknownPolicyError
from cabsim.experiments import centered_bernoulli_pair
from cabsim.experiments import ucb1_tail_bound
from cabsim.helpers import geometric_checkpoints
from cabsim.helpers import indent
from cabsim.helpers import set_level
from cabsim.helpers import setup_logger
from cabsim.models import AggregateResult
from cabsim.models import BetaEstimate

logger = setup_logger("[cabsim]")

_KIND_OF = {
    "run-etc": "etc-regret",
    "run-alg": "alg-regret",
    "zerogap": "zerogap",
    "estimate-beta": "beta",
    "check-lemma1": "lemma1",
    "epoch-stats": "epoch-stats",
}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON experiment config")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--reps", type=int, help="number of replications")
    parser.add_argument("--n", type=int, help="horizon")
    parser.add_argument("--workers", type=int, default=1, help="worker processes")
    parser.add_argument("--out", help="output path")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    parser.add_argument(
        "--bootstrap", type=int, help="bootstrap resamples for summary intervals"
    )
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    parser.add_argument(
        "--assert",
        dest="check",
        action="store_true",
        help="evaluate the acceptance check of the subcommand (exit 3 on failure)",
    )


def _instance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mu1", type=float, help="mean of type-1 arms")
    parser.add_argument("--mu2", type=float, help="mean of type-2 arms")
    parser.add_argument("--alpha", type=float, help="probability of a type-1 arm")


def _schedule_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m0", type=int, help="theta-schedule offset")
    parser.add_argument("--gamma", type=float, help="theta-schedule exponent")


def _reward_args(parser: argparse.ArgumentParser, family: bool = False) -> None:
    action = "append" if family else "store"
    parser.add_argument(
        "--reward1", action=action, help="reward model, e.g. bernoulli:0.5"
    )
    parser.add_argument("--reward2", action=action, help="reward model")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cabsim",
        description="Simulation lab for countable-armed bandits with two arm types",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-etc", help="regret of the explore-then-test algorithm")
    _common(p)
    _instance_args(p)
    p.add_argument("--delta", type=float, help="test threshold")

    p = sub.add_parser("run-alg", help="regret of the paired-test algorithm")
    _common(p)
    _instance_args(p)
    _schedule_args(p)
    p.add_argument("--policy", help="ucb1, ucb-rho:<rho>, ts-beta, ...")
    p.add_argument("--beta-hat", type=float, help="survival estimate for overlay")
    p.add_argument("--c2", type=float, help="schedule constant for overlay")

    p = sub.add_parser("zerogap", help="N1(n)/n distribution on equal-mean arms")
    _common(p)
    _reward_args(p)
    p.add_argument("--policy")
    p.add_argument("--bins", type=int)
    p.add_argument("--epsilons", type=float, nargs="+")
    p.add_argument("--full-scale", action="store_true")

    p = sub.add_parser("estimate-beta", help="survival of the paired walk")
    _common(p)
    _reward_args(p, family=True)
    _schedule_args(p)
    p.add_argument("--truncation", type=int, help="walk length M")
    p.add_argument(
        "--gap-grid",
        type=float,
        nargs="*",
        help="estimate over centered Bernoulli pairs at these gaps",
    )
    p.add_argument("--full-scale", action="store_true")

    for name, text in (
        ("check-lemma1", "adaptive vs paired stopping index"),
        ("epoch-stats", "termination time of single epochs"),
    ):
        p = sub.add_parser(name, help=text)
        _common(p)
        _reward_args(p)
        _schedule_args(p)
        p.add_argument("--policy")

    p = sub.add_parser("bounds", help="print the regret bound curves")
    p.add_argument("--n", type=int, nargs="+", default=[10**4])
    p.add_argument("--gap", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--delta", type=float)
    p.add_argument("--beta-hat", type=float)
    p.add_argument("--c2", type=float)
    _schedule_args(p)
    p.add_argument("-q", "--quiet", action="store_true")
    return parser


def _overrides(args: argparse.Namespace, kind: str) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for key, field_name in (
        ("seed", "master_seed"),
        ("reps", "reps"),
        ("n", "n"),
        ("out", "out"),
        ("format", "format"),
        ("delta", "delta"),
        ("policy", "policy"),
        ("bins", "bins"),
        ("epsilons", "epsilons"),
        ("truncation", "truncation"),
        ("beta_hat", "beta_hat"),
        ("c2", "c2"),
        ("bootstrap", "bootstrap"),
    ):
        value = getattr(args, key, None)
        if value is not None:
            out[field_name] = value
    if getattr(args, "mu1", None) is not None:
        mu1, mu2 = args.mu1, args.mu2
        if mu2 is None or args.alpha is None:
            raise InvalidConfigurationError("--mu1 needs --mu2 and --alpha")
        out["instance"] = {
            "mu1": mu1,
            "mu2": mu2,
            "alpha": args.alpha,
            "family1": [RewardModel.bernoulli(mu1).to_dict()],
            "family2": [RewardModel.bernoulli(mu2).to_dict()],
        }
    for name in ("reward1", "reward2"):
        value = getattr(args, name, None)
        if value is None:
            continue
        if isinstance(value, list):
            out[name] = [RewardModel.parse(v).to_dict() for v in value]
        else:
            out[name] = RewardModel.parse(value).to_dict()
    if getattr(args, "full_scale", False):
        out.update(FULL_SCALE[kind])
    return out


def _schedule(args: argparse.Namespace, kind: str, current: Optional[dict]) -> dict:
    preset = BETA_PRESET if kind == "beta" else ALG_PRESET
    m0, gamma = (current["m0"], current["gamma"]) if current else preset
    return {
        "m0": args.m0 if args.m0 is not None else m0,
        "gamma": args.gamma if args.gamma is not None else gamma,
    }


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    kind = _KIND_OF[args.command]
    payload: Dict[str, Any] = {}
    if args.config:
        payload = ExperimentConfig.load(args.config).to_dict()
        if payload["kind"] != kind:
            raise InvalidConfigurationError(
                f"Config kind '{payload['kind']}' does not match {args.command}"
            )
    payload["kind"] = kind
    if kind in DESK_SCALE and not args.config:
        payload.update(DESK_SCALE[kind])
    payload.update(_overrides(args, kind))
    if any(getattr(args, k, None) is not None for k in ("m0", "gamma")):
        payload["schedule"] = _schedule(args, kind, payload.get("schedule"))
    if kind == "zerogap":
        half = RewardModel.bernoulli(0.5).to_dict()
        payload["reward1"] = payload.get("reward1") or half
        payload["reward2"] = payload.get("reward2") or half
    if kind == "beta" and getattr(args, "gap_grid", None) is not None:
        gaps = args.gap_grid or DESK_GAP_GRID
        model1, model2 = centered_bernoulli_pair(gaps[0])
        payload["reward1"] = model1.to_dict()
        payload["reward2"] = model2.to_dict()
    if kind == "alg-regret" and args.check:
        n = payload.get("n", ExperimentConfig.n)
        base = payload.get("checkpoints") or geometric_checkpoints(n)
        payload["checkpoints"] = sorted(set(base) | {n // 4, n})
    return ExperimentConfig.from_dict(payload)


# acceptance checks, one per experiment kind


def _check_etc(result: AggregateResult) -> None:
    bound = result.overlays.get("etc_bound")
    if not bound or not result.reps:
        raise AcceptanceCheckError("No ETC bound overlay to compare against")
    upper = result.mean_regret[-1] + MC_SLACK_SE * result.std_error[-1]
    if upper > bound[-1]:
        raise AcceptanceCheckError(
            f"Mean regret {result.mean_regret[-1]:.3f} + {MC_SLACK_SE} s.e. "
            f"exceeds the bound {bound[-1]:.3f}"
        )


def _check_alg(result: AggregateResult) -> None:
    ratio = result.summary.get("log_growth_ratio")
    if ratio is None or ratio >= 2.0:
        raise AcceptanceCheckError(f"Regret growth ratio n/4 -> n is {ratio}, not < 2")


def _check_zerogap(result: AggregateResult) -> None:
    checked = 0
    for row in result.summary.get("tails", []):
        if row["theoretical_bound"] is None or row["vacuous_flag"]:
            continue
        checked += 1
        upper = row["theoretical_bound"] + MC_SLACK_SE * row["std_error"]
        if row["empirical"] > upper:
            raise AcceptanceCheckError(
                f"Tail frequency {row['empirical']} at eps={row['epsilon']} "
                f"exceeds the bound {row['theoretical_bound']:.3g}"
            )
    if not checked:
        logger.warning("No non-vacuous tail bound applies to this policy")


def _check_beta(result: AggregateResult) -> None:
    survival = [row[-1] for row in result.rows]
    if any(b > a for a, b in zip(survival, survival[1:])):
        raise AcceptanceCheckError("Survival curve is not nonincreasing")


def _check_lemma1(result: AggregateResult) -> None:
    if not result.summary.get("all_equal"):
        raise AcceptanceCheckError(
            f"Only {result.summary.get('equal')} of {result.reps} paths agree"
        )


def _check_epochs(result: AggregateResult) -> None:
    fraction = result.summary.get("censored_fraction")
    if fraction is None or fraction >= 0.05:
        raise AcceptanceCheckError(f"Censored fraction {fraction} is not < 5%")


_CHECKS = {
    "etc-regret": _check_etc,
    "alg-regret": _check_alg,
    "zerogap": _check_zerogap,
    "beta": _check_beta,
    "lemma1": _check_lemma1,
    "epoch-stats": _check_epochs,
}


def _check_gap_grid(estimates: List[BetaEstimate]) -> None:
    for a, b in zip(estimates, estimates[1:]):
        slack = MC_SLACK_SE * math.hypot(a.std_error, b.std_error)
        if b.estimate < a.estimate - slack:
            raise AcceptanceCheckError(
                f"beta_hat drops from {a.estimate:.4f} at gap {a.delta} to "
                f"{b.estimate:.4f} at gap {b.delta}"
            )


def run_gap_grid(args: argparse.Namespace, config: ExperimentConfig) -> int:
    gaps = args.gap_grid or (FULL_GAP_GRID if args.full_scale else DESK_GAP_GRID)
    estimates = []
    for gap in gaps:
        model1, model2 = centered_bernoulli_pair(gap)
        payload = config.to_dict()
        payload.update(reward1=model1.to_dict(), reward2=model2.to_dict(), out=None)
        result = run_batch(
            ExperimentConfig.from_dict(payload),
            workers=args.workers,
            progress=not args.quiet,
        )
        s = result.summary
        estimates.append(
            BetaEstimate(
                delta=gap,
                m0=s["m0"],
                gamma=s["gamma"],
                M=s["M"],
                reps=s["reps"],
                estimate=s["estimate"],
                std_error=s["std_error"],
                checkpoints=[],
                survival=[],
            )
        )
    table = AggregateResult(
        kind="beta-grid",
        config={**config.to_dict(), "gaps": list(gaps)},
        config_hash=config.config_hash(),
        reps=config.reps,
        header=["delta", "beta_hat", "std_error", "M", "reps"],
        rows=[[e.delta, e.estimate, e.std_error, e.M, e.reps] for e in estimates],
    )
    table.config.pop("out")
    table.config.pop("format")
    table.config.pop("reward1")
    table.config.pop("reward2")
    print("delta    beta_hat  std_error")
    for e in estimates:
        print(indent(f"{e.delta:<8g} {e.estimate:<9.4f} {e.std_error:.4f}", "  "))
    if config.out:
        export(table, config.format, config.out)
    if args.check:
        _check_gap_grid(estimates)
    return 0


def print_bounds(args: argparse.Namespace) -> int:
    gap, alpha = args.gap, args.alpha
    schedule = ThetaSchedule(
        args.m0 if args.m0 is not None else ThetaSchedule.alg_default().m0,
        args.gamma if args.gamma is not None else ThetaSchedule.alg_default().gamma,
    )
    print(f"gap={gap} alpha={alpha} schedule=({schedule.m0}, {schedule.gamma})")
    for n in args.n:
        lines = [
            f"lower bound c log(n)/gap: {lower_bound_curve(n, gap):.4f}",
            f"two-armed UCB1 bound: {ucb_two_armed_bound(n, gap):.4f}",
        ]
        if args.delta is not None:
            bound = etc_regret_bound(n, args.delta, gap, alpha)
            tag = " (linear branch)" if bound.degenerate else ""
            length = exploration_length(n, args.delta)
            lines.append(f"ETC exploration length L: {length}")
            lines.append(f"ETC bound: {bound.value:.4f}{tag}")
        if args.beta_hat is not None and args.c2 is not None:
            value = alg_regret_bound(n, gap, alpha, args.beta_hat, args.c2)
            lines.append(f"paired-test bound: {value:.4f}")
        for eps in DEFAULT_EPSILONS:
            tail = ucb1_tail_bound(n, eps)
            tag = " (vacuous)" if tail.vacuous else ""
            lines.append(f"UCB1 zero-gap tail at eps={eps:g}: {tail.value:.4g}{tag}")
        report = validate_schedule(schedule, n)
        status = "accepted" if report.accepted else ", ".join(report.failures)
        lines.append(f"schedule up to n: {status}")
        print(f"n={n}")
        print(indent("\n".join(lines), "  "))
    return 0


def _print_summary(result: AggregateResult) -> None:
    shown = {
        k: v
        for k, v in result.summary.items()
        if not isinstance(v, (list, dict)) or k == "quantiles" or k.endswith("_ci")
    }
    text = "\n".join(f"{k}: {v}" for k, v in sorted(shown.items()))
    print(f"{result.kind} ({result.reps} reps, config {result.config_hash[:12]})")
    print(indent(text, "  "))


def run(args: argparse.Namespace) -> int:
    if args.command == "bounds":
        return print_bounds(args)
    config = build_config(args)
    if args.command == "estimate-beta" and args.gap_grid is not None:
        return run_gap_grid(args, config)
    result = run_batch(config, workers=args.workers, progress=not args.quiet)
    _print_summary(result)
    if config.out:
        export(result, config.format, config.out)
    if args.check:
        _CHECKS[config.kind](result)
        logger.info(f"Acceptance check for {args.command} passed")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.quiet:
        set_level("WARNING")
    try:
        return run(args)
    except (InvalidConfigurationError, DomainError, UnknownPolicyError) as e:
        logger.error(f"Configuration error: {e}")
        return 2
    except AcceptanceCheckError as e:
        logger.error(f"Acceptance check failed: {e}")
        return 3
    except (ReplicationError, ExportError) as e:
        logger.error(str(e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
