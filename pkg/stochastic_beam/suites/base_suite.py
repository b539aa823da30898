"""Base class of the acceptance suites"""
import abc
import math

from collections import Counter
from typing import Any, Callable, List

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.replicates import ReplicateRunner
from stochastic_beam.config import RunConfig
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.seqmodels.loader import ModelLoader
from stochastic_beam.settings import Settings


class ChunkTask:
    """Runs `draw(stream)` for one chunk of a large number of independent draws."""

    def __init__(self, draw: Callable[[RandomStream], Any], total: int, chunk: int) -> None:
        self.draw = draw
        self.total = total
        self.chunk = chunk

    def __call__(self, index: int, stream: RandomStream) -> List[Any]:
        size = min(self.chunk, self.total - index * self.chunk)
        return [self.draw(stream) for _ in range(size)]


class BaseSuite(metaclass=abc.ABCMeta):
    """Parent class of the acceptance suites.

    Sizes are given at full scale; the quick scale divides them by `QUICK_FACTOR` and widens
    noise thresholds by its square root. The chunking of draws does not depend on the number
    of threads, so results only depend on the seed.

    Attributes:
        config: Run configuration
        full: Full scale run
    """
    name: str = ''
    QUICK_FACTOR: int = 10
    CHUNK: int = 5000

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.full: bool = config.scale == 'full'

    def size(self, n: int) -> int:
        """Number of draws or replicates at the configured scale."""
        return n if self.full else max(1, n // self.QUICK_FACTOR)

    def noise_threshold(self, threshold: float) -> float:
        """Threshold of a statistic whose noise shrinks as 1/sqrt(N)."""
        return threshold if self.full else threshold * math.sqrt(self.QUICK_FACTOR)

    def tree(self) -> SequenceModel:
        """The tree given with --model, else the bundled example tree."""
        return ModelLoader(self.config.model or Settings.EXAMPLE_TREE).load()

    def runner(self) -> ReplicateRunner:
        return ReplicateRunner(self.config.seed, self.config.threads)

    def collect(self, draw: Callable[[RandomStream], Any], total: int) -> List[Any]:
        """`total` independent draws, in chunk order."""
        chunks = -(-total // self.CHUNK)
        results: List[Any] = []
        for chunk in self.runner().run(ChunkTask(draw, total, self.CHUNK), chunks, desc=self.name):
            results.extend(chunk)
        return results

    def count(self, draw: Callable[[RandomStream], Any], total: int) -> Counter:
        """Outcome counts of `total` independent draws."""
        return Counter(self.collect(draw, total))

    def criterion(self, name: str, measured: float, relation: str, threshold: float) -> Criterion:
        return Criterion(self.name, name, measured, relation, threshold)

    @abc.abstractmethod
    def run(self) -> List[Criterion]:
        """Measure every criterion of the suite."""
