from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from cabsim.constants import FULL_TRAJECTORY_MAX


class RegretTracker:
    """Pseudo-regret of a run, stored as run-length segments of type-2 plays.

    Each play of a type-2 arm costs the gap; type-1 plays cost nothing, so the
    trajectory is fully determined by the segments.
    """

    def __init__(self, gap: float):
        self.gap = gap
        self.plays = 0
        self.plays_on_type2 = 0
        self._lengths: List[int] = []
        self._flags: List[bool] = []

    def add(self, count: int, inferior: bool) -> None:
        if count <= 0:
            return
        self.plays += count
        if inferior:
            self.plays_on_type2 += count
        if self._flags and self._flags[-1] == inferior:
            self._lengths[-1] += count
        else:
            self._lengths.append(count)
            self._flags.append(inferior)

    @property
    def regret(self) -> float:
        return self.gap * self.plays_on_type2

    def inferior_counts(self) -> np.ndarray:
        """Cumulative type-2 plays after each play."""
        flags = np.repeat(np.asarray(self._flags, dtype=np.int64), self._lengths)
        return np.cumsum(flags)

    def trajectory(self) -> Optional[np.ndarray]:
        if self.plays > FULL_TRAJECTORY_MAX:
            return None
        return self.gap * self.inferior_counts()

    def at_checkpoints(self, checkpoints: Sequence[int]) -> List[Tuple[int, float]]:
        ends = np.cumsum(self._lengths)
        starts = ends - np.asarray(self._lengths)
        inferior = np.asarray(self._flags, dtype=bool)
        before = np.concatenate(
            ([0], np.cumsum(np.where(inferior, self._lengths, 0)))
        )
        out = []
        for c in checkpoints:
            if c > self.plays:
                continue
            k = int(np.searchsorted(ends, c))
            count = int(before[k]) + (c - int(starts[k]) if inferior[k] else 0)
            out.append((int(c), self.gap * count))
        return out
