from typing import Callable
from typing import List
from typing import Optional

import numpy as np

from cabsim.constants import REWARD_BLOCK_SIZE
from cabsim.environment.instance import Arm
from cabsim.environment.instance import ArmType
from cabsim.environment.instance import CABInstance
from cabsim.environment.reward_models import RewardModel


def draw_new_arm(instance: CABInstance, rng: np.random.Generator, label: int) -> Arm:
    """Draw an arm's type from (alpha, 1 - alpha), then a model uniformly from
    that type's family. Exactly two draws from ``rng`` per arm."""
    is_type1 = rng.random() < instance.alpha
    family = instance.family1 if is_type1 else instance.family2
    model = family[int(rng.integers(len(family)))]
    return Arm(label, ArmType.TYPE1 if is_type1 else ArmType.TYPE2, model)


class RewardStream:
    """Rewards of one arm, read in play order.

    Draws are made in fixed-size blocks so that the j-th reward depends only
    on the generator and j, whichever mix of `next` and `take` reads it.
    """

    def __init__(
        self,
        model: RewardModel,
        rng: np.random.Generator,
        block_size: int = REWARD_BLOCK_SIZE,
    ):
        self.model = model
        self.rng = rng
        self.block_size = block_size
        self._buffer: List[float] = []
        self._pos = 0
        self.consumed = 0

    def _refill(self) -> None:
        self._buffer = self.model.sample(self.rng, self.block_size).tolist()
        self._pos = 0

    def next(self) -> float:
        if self._pos == len(self._buffer):
            self._refill()
        value = self._buffer[self._pos]
        self._pos += 1
        self.consumed += 1
        return value

    def take(self, k: int) -> np.ndarray:
        out = np.empty(k)
        filled = 0
        while filled < k:
            if self._pos == len(self._buffer):
                self._refill()
            chunk = self._buffer[self._pos : self._pos + (k - filled)]
            out[filled : filled + len(chunk)] = chunk
            filled += len(chunk)
            self._pos += len(chunk)
        self.consumed += k
        return out


class ArmReservoir:
    """Lazy infinite population of arms for one replication.

    Parameters
    ----------
    instance : CABInstance
        The instance whose reservoir is realized.
    rng : numpy.random.Generator
        Stream for type and model draws.
    stream_factory : callable, optional
        Maps an arm label to the generator of that arm's rewards. Defaults to
        generators spawned from ``rng``'s seed sequence, one per label.
    """

    def __init__(
        self,
        instance: CABInstance,
        rng: np.random.Generator,
        stream_factory: Optional[Callable[[int], np.random.Generator]] = None,
    ):
        self.instance = instance
        self.rng = rng
        self._next_label = 0
        if stream_factory is None:
            self._base_entropy = int(rng.integers(2**63))
            stream_factory = self._spawned_stream
        self.stream_factory = stream_factory

    def _spawned_stream(self, label: int) -> np.random.Generator:
        seq = np.random.SeedSequence([self._base_entropy, label])
        return np.random.Generator(np.random.Philox(seq))

    @property
    def drawn(self) -> int:
        return self._next_label

    def draw_new_arm(self) -> Arm:
        arm = draw_new_arm(self.instance, self.rng, self._next_label)
        self._next_label += 1
        return arm

    def stream(self, arm: Arm) -> RewardStream:
        return RewardStream(arm.model, self.stream_factory(arm.label))
