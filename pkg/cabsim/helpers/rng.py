import hashlib
from typing import Union

import numpy as np


def tag_key(stream_tag: Union[str, int]) -> int:
    """Map a stream tag to a 64-bit integer that does not depend on the interpreter.

    Python's built-in ``hash`` is salted per process, so tags are hashed with
    SHA-256 instead.
    """
    if isinstance(stream_tag, int):
        return stream_tag
    digest = hashlib.sha256(stream_tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def derive_stream(
    master_seed: int, rep_index: int, stream_tag: Union[str, int]
) -> np.random.Generator:
    """Derive the random stream owned by one (replication, purpose) pair.

    Parameters
    ----------
    master_seed : int
        Seed of the whole experiment.
    rep_index : int
        Index of the replication.
    stream_tag : str or int
        Purpose of the stream, e.g. ``"types"`` or ``"arm:3"``.

    Returns
    -------
    numpy.random.Generator
        A Philox (counter-based) generator. Distinct ``(rep_index, stream_tag)``
        pairs land on distinct spawn keys of the same seed sequence, which
        makes the streams independent and the derivation order-free.
    """
    seq = np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=(int(rep_index), tag_key(stream_tag))
    )
    return np.random.Generator(np.random.Philox(seq))
