"""Replicate runner"""
from multiprocessing import Pool
from typing import Any, Callable, List

from tqdm import tqdm

from stochastic_beam.common.logger import Logger
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.settings import Settings


ReplicateTask = Callable[[int, RandomStream], Any]


class _Job:
    """Picklable binding of a task to the run seed."""

    def __init__(self, task: ReplicateTask, seed: int) -> None:
        self.task = task
        self.seed = seed

    def __call__(self, replicate: int) -> Any:
        return self.task(replicate, RandomStream.substream(self.seed, replicate))


class ReplicateRunner:
    """Runs independent replicates, each on its own substream of the run seed.

    Results come back in replicate order, so the output never depends on scheduling.
    With more than one thread the task must be picklable.

    Attributes:
        seed: Run seed
        threads: Worker processes, 1 runs in process
        progress: Show a progress bar
    """

    def __init__(self, seed: int, threads: int = Settings.THREAD_NUM, progress: bool = True) -> None:
        self.seed = seed
        self.threads = max(1, threads)
        self.progress = progress

    def run(self, task: ReplicateTask, replicates: int, desc: str = 'replicates') -> List[Any]:
        job = _Job(task, self.seed)
        Logger(__name__).debug('running %d %s on %d threads', replicates, desc, self.threads)
        with tqdm(total=replicates, desc=desc, disable=not self.progress, leave=False) as pbar:
            if self.threads == 1 or replicates < 2:
                results = []
                for replicate in range(replicates):
                    results.append(job(replicate))
                    pbar.update()
                return results
            pool = Pool(min(self.threads, replicates))
            try:
                results = []
                for result in pool.imap(job, range(replicates), chunksize=max(1, replicates // (self.threads * 8))):
                    results.append(result)
                    pbar.update()
                return results
            finally:
                pool.close()
                pool.join()
