import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import as_completed
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

import tqdm

from cabsim.engine.config import ExperimentConfig
from cabsim.engine.export import write_partial
from cabsim.engine.factory import BaseExperiment
from cabsim.engine.factory import ExperimentFactory
from cabsim.exceptions import InvalidConfigurationError
from cabsim.exceptions import ReplicationError
from cabsim.helpers import setup_logger
from cabsim.models import AggregateResult

logger = setup_logger("[BatchRunner]")

# one experiment object per worker process, keyed by config hash
_EXPERIMENTS: Dict[str, BaseExperiment] = {}


class ReplicationSink:
    """Collects (rep, result) pairs in any order; `ordered` sorts by rep.

    Sinks merge associatively, so partial batches from different workers
    combine into the same aggregate as one sequential pass.
    """

    def __init__(self):
        self._items: Dict[int, Any] = {}

    def add(self, rep: int, result: Any) -> None:
        self._items[rep] = result

    def merge(self, other: "ReplicationSink") -> "ReplicationSink":
        merged = ReplicationSink()
        merged._items = {**self._items, **other._items}
        return merged

    def ordered(self) -> List[Tuple[int, Any]]:
        return sorted(self._items.items())

    def results(self) -> List[Any]:
        return [result for _, result in self.ordered()]

    def __len__(self) -> int:
        return len(self._items)


def _experiment(config: ExperimentConfig) -> BaseExperiment:
    key = config.config_hash()
    if key not in _EXPERIMENTS:
        _EXPERIMENTS[key] = ExperimentFactory.call_class(config)
    return _EXPERIMENTS[key]


def _replicate(config: ExperimentConfig, rep: int) -> Tuple[int, Any]:
    return rep, _experiment(config).run_replication(rep)


def _salvage(config: ExperimentConfig, sink: ReplicationSink) -> Optional[str]:
    if config.out is None or not len(sink):
        return None
    path = f"{config.out}.partial.jsonl"
    write_partial(sink.ordered(), path)
    return path


def _fail(
    config: ExperimentConfig, sink: ReplicationSink, rep: int, error: BaseException
) -> ReplicationError:
    salvaged = _salvage(config, sink)
    message = f"Replication {rep} of {config.kind} failed: {error}"
    if salvaged:
        message += f" ({len(sink)} completed replications saved to {salvaged})"
    logger.error(message)
    return ReplicationError(message, completed=len(sink))


def run_batch(
    config: ExperimentConfig, workers: int = 1, progress: bool = True
) -> AggregateResult:
    """Run ``config.reps`` independent replications and aggregate them.

    Parameters
    ----------
    config : ExperimentConfig
        Batch description; replication ``r`` draws only from streams derived
        from ``(config.master_seed, r)``.
    workers : int
        Number of worker processes. ``1`` runs in-process. The aggregate does
        not depend on this value.
    progress : bool
        Show a tqdm progress bar.

    Returns
    -------
    AggregateResult
        Aggregate with ``metadata`` holding wall time and worker count.

    Raises
    ------
    ReplicationError
        If any replication raises. Completed replications are written to
        ``<out>.partial.jsonl`` when an output path is configured.
    """
    if workers < 1:
        raise InvalidConfigurationError(f"workers must be >= 1, got {workers}")
    experiment = _experiment(config)
    logger.info(
        f"Starting {config.kind}: n={config.n} reps={config.reps} "
        f"seed={config.master_seed} workers={workers}"
    )
    started = time.perf_counter()
    sink = ReplicationSink()
    bar = tqdm.tqdm(total=config.reps, unit="rep", disable=not progress)
    try:
        if workers == 1 or config.reps <= 1:
            for rep in range(config.reps):
                try:
                    sink.add(rep, experiment.run_replication(rep))
                except Exception as e:
                    raise _fail(config, sink, rep, e) from e
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = {
                    executor.submit(_replicate, config, rep): rep
                    for rep in range(config.reps)
                }
                for future in as_completed(futures):
                    try:
                        rep, result = future.result()
                    except Exception as e:
                        for pending in futures:
                            pending.cancel()
                        raise _fail(config, sink, futures[future], e) from e
                    sink.add(rep, result)
                    bar.update(1)
    finally:
        bar.close()

    result = experiment.aggregate(sink.results())
    wall_time = time.perf_counter() - started
    result.metadata = {"wall_time": wall_time, "workers": workers}
    logger.info(f"Finished {config.kind}: {result.reps} reps in {wall_time:.2f}s")
    return result
