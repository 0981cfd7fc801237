import hashlib
import json
import math
from typing import Any
from typing import Iterator
from typing import List
from typing import Sequence
from typing import Tuple

import numpy as np


def indent(text: str, prefix: str) -> str:
    """Indent each line of a given text with a specified prefix.

    Parameters
    ----------
    text : str
        The input text to be indented.
    prefix : str
        The prefix to add at the beginning of each non-empty line.

    Returns
    -------
    str
        The indented text with the prefix applied to each non-empty line.
    """

    def prefixed_lines() -> Iterator[str]:
        for line in text.splitlines(True):
            yield (prefix + line if line.strip() else line)

    return "".join(prefixed_lines())


def geometric_checkpoints(n: int) -> List[int]:
    """Powers of 2 up to ``n``, plus ``n`` itself."""
    if n < 1:
        return []
    points = []
    c = 1
    while c < n:
        points.append(c)
        c *= 2
    points.append(n)
    return points


def mean_and_std_error(values: Sequence[float]) -> tuple:
    """Sample mean and standard error sqrt(s^2 / reps); (nan, nan) when empty."""
    k = len(values)
    if k == 0:
        return math.nan, math.nan
    mean = math.fsum(values) / k
    if k == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (k - 1)
    return mean, math.sqrt(var / k)


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def stable_hash(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def bootstrap_ci(
    values: Sequence[float],
    resamples: int,
    rng: np.random.Generator,
    level: float = 0.95,
) -> Tuple[float, float]:
    """Percentile bootstrap interval for the mean of ``values``."""
    data = np.asarray(values, dtype=float)
    if data.size == 0 or resamples < 1:
        return math.nan, math.nan
    idx = rng.integers(0, data.size, size=(resamples, data.size))
    means = data[idx].mean(axis=1)
    tail = (1.0 - level) / 2.0
    lo, hi = np.quantile(means, [tail, 1.0 - tail])
    return float(lo), float(hi)
