import enum
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict
from typing import Optional
from typing import Tuple
from typing import Union

import numpy as np
from scipy import stats

from cabsim.constants import MEAN_TOLERANCE
from cabsim.exceptions import InvalidInstanceError


class RewardKind(str, enum.Enum):
    BERNOULLI = "bernoulli"
    BETA = "beta"
    UNIFORM = "uniform"
    TRUNC_GAUSS = "trunc_gauss"
    DIRAC = "dirac"
    # unbounded, zero-gap Thompson Sampling runs only
    GAUSSIAN = "gaussian"


_PARAM_NAMES: Dict[RewardKind, Tuple[str, ...]] = {
    RewardKind.BERNOULLI: ("p",),
    RewardKind.BETA: ("a", "b"),
    RewardKind.UNIFORM: (),
    RewardKind.TRUNC_GAUSS: ("mu", "sigma"),
    RewardKind.DIRAC: ("value",),
    RewardKind.GAUSSIAN: ("mu", "sigma"),
}


def _analytic_mean(kind: RewardKind, params: Tuple[float, ...]) -> float:
    if kind is RewardKind.BERNOULLI:
        return params[0]
    if kind is RewardKind.BETA:
        a, b = params
        return a / (a + b)
    if kind is RewardKind.UNIFORM:
        return 0.5
    if kind is RewardKind.TRUNC_GAUSS:
        mu, sigma = params
        lo, hi = (0.0 - mu) / sigma, (1.0 - mu) / sigma
        return float(stats.truncnorm.mean(lo, hi, loc=mu, scale=sigma))
    if kind is RewardKind.DIRAC:
        return params[0]
    return params[0]


def _check_params(kind: RewardKind, params: Tuple[float, ...]) -> None:
    if len(params) != len(_PARAM_NAMES[kind]):
        raise InvalidInstanceError(
            f"{kind.value} expects parameters {_PARAM_NAMES[kind]}, got {params}"
        )
    if any(not math.isfinite(v) for v in params):
        raise InvalidInstanceError(f"Non-finite parameter in {kind.value}{params}")
    if kind is RewardKind.BERNOULLI and not 0.0 < params[0] < 1.0:
        raise InvalidInstanceError(f"Bernoulli(p) needs p in (0, 1), got {params[0]}")
    if kind is RewardKind.BETA and min(params) <= 0.0:
        raise InvalidInstanceError(f"Beta(a, b) needs a, b > 0, got {params}")
    if kind in (RewardKind.TRUNC_GAUSS, RewardKind.GAUSSIAN) and params[1] <= 0.0:
        raise InvalidInstanceError(f"{kind.value} needs sigma > 0, got {params[1]}")
    if kind is RewardKind.DIRAC and not 0.0 <= params[0] <= 1.0:
        raise InvalidInstanceError(f"Dirac(c) needs c in [0, 1], got {params[0]}")


@dataclass(frozen=True)
class RewardModel:
    """A reward distribution with a cached analytic mean.

    Every kind except ``GAUSSIAN`` is supported on [0, 1].
    """

    kind: RewardKind
    params: Tuple[float, ...] = ()
    mean: float = field(init=False, compare=False)

    def __post_init__(self):
        kind = RewardKind(self.kind)
        params = tuple(float(v) for v in self.params)
        _check_params(kind, params)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "mean", _analytic_mean(kind, params))

    @classmethod
    def bernoulli(cls, p: float) -> "RewardModel":
        return cls(RewardKind.BERNOULLI, (p,))

    @classmethod
    def beta(cls, a: float, b: float) -> "RewardModel":
        return cls(RewardKind.BETA, (a, b))

    @classmethod
    def uniform(cls) -> "RewardModel":
        return cls(RewardKind.UNIFORM)

    @classmethod
    def trunc_gauss(cls, mu: float, sigma: float) -> "RewardModel":
        return cls(RewardKind.TRUNC_GAUSS, (mu, sigma))

    @classmethod
    def dirac(cls, value: float) -> "RewardModel":
        return cls(RewardKind.DIRAC, (value,))

    @classmethod
    def gaussian(cls, mu: float, sigma: float) -> "RewardModel":
        return cls(RewardKind.GAUSSIAN, (mu, sigma))

    @property
    def bounded(self) -> bool:
        return self.kind is not RewardKind.GAUSSIAN

    @property
    def satisfies_assumption1(self) -> bool:
        """True when the support reaches both 0 and 1."""
        return self.kind in (
            RewardKind.BERNOULLI,
            RewardKind.BETA,
            RewardKind.UNIFORM,
            RewardKind.TRUNC_GAUSS,
        )

    @property
    def variance(self) -> float:
        if self.kind is RewardKind.BERNOULLI:
            return self.mean * (1.0 - self.mean)
        if self.kind is RewardKind.BETA:
            a, b = self.params
            return a * b / ((a + b) ** 2 * (a + b + 1.0))
        if self.kind is RewardKind.UNIFORM:
            return 1.0 / 12.0
        if self.kind is RewardKind.TRUNC_GAUSS:
            mu, sigma = self.params
            lo, hi = (0.0 - mu) / sigma, (1.0 - mu) / sigma
            return float(stats.truncnorm.var(lo, hi, loc=mu, scale=sigma))
        if self.kind is RewardKind.DIRAC:
            return 0.0
        return self.params[1] ** 2

    def sample(
        self, rng: np.random.Generator, size: Optional[int] = None
    ) -> Union[float, np.ndarray]:
        """Draw one reward (``size=None``) or an array of ``size`` rewards."""
        if size is None:
            return float(self.sample(rng, 1)[0])
        if self.kind is RewardKind.BERNOULLI:
            return (rng.random(size) < self.params[0]).astype(np.float64)
        if self.kind is RewardKind.BETA:
            return rng.beta(self.params[0], self.params[1], size)
        if self.kind is RewardKind.UNIFORM:
            return rng.random(size)
        if self.kind is RewardKind.TRUNC_GAUSS:
            return _rejection_trunc_gauss(rng, *self.params, size)
        if self.kind is RewardKind.DIRAC:
            return np.full(size, self.params[0])
        return rng.normal(self.params[0], self.params[1], size)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"kind": self.kind.value}
        payload.update(zip(_PARAM_NAMES[self.kind], self.params))
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "RewardModel":
        try:
            kind = RewardKind(payload["kind"])
            params = tuple(payload[name] for name in _PARAM_NAMES[kind])
        except (KeyError, ValueError) as e:
            raise InvalidInstanceError(f"Malformed reward model {payload!r}: {e}")
        return cls(kind, params)

    @classmethod
    def parse(cls, text: str) -> "RewardModel":
        """Parse the command-line form ``kind[:p1[,p2]]``, e.g. ``bernoulli:0.5``."""
        kind, _, args = text.strip().partition(":")
        try:
            params = tuple(float(v) for v in args.split(",")) if args else ()
            return cls(RewardKind(kind), params)
        except ValueError as e:
            raise InvalidInstanceError(f"Malformed reward model '{text}': {e}")

    def __str__(self) -> str:
        args = ", ".join(f"{v:g}" for v in self.params)
        return f"{self.kind.value}({args})"


def _rejection_trunc_gauss(
    rng: np.random.Generator, mu: float, sigma: float, size: int
) -> np.ndarray:
    out = np.empty(size)
    filled = 0
    while filled < size:
        draw = rng.normal(mu, sigma, size - filled)
        kept = draw[(draw >= 0.0) & (draw <= 1.0)]
        out[filled : filled + kept.size] = kept
        filled += kept.size
    return out


def sample_reward(arm, rng: np.random.Generator) -> float:
    """One i.i.d. draw from the arm's reward model."""
    return arm.model.sample(rng)


def check_family(family, mu: float, allow_unbounded: bool = False) -> None:
    if not family:
        raise InvalidInstanceError("A type family needs at least one reward model")
    for model in family:
        if abs(model.mean - mu) > MEAN_TOLERANCE:
            raise InvalidInstanceError(
                f"{model} has mean {model.mean!r}, expected {mu!r}"
            )
        if not (allow_unbounded or model.bounded):
            raise InvalidInstanceError(f"{model} is unbounded; CAB runs need [0, 1]")
