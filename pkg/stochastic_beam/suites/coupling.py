"""Children keys of every expanded node have their maximum at the parent key"""
from typing import List, Tuple

from stochastic_beam.common.models.beam_entry import BeamEntry
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.suites.base_suite import BaseSuite


TOLERANCE: float = 1e-9


class CouplingDraw:
    """(violations, expansions) of one stochastic beam search run."""

    def __init__(self, model: SequenceModel, k: int) -> None:
        self.model = model
        self.k = k

    def __call__(self, stream: RandomStream) -> Tuple[int, int]:
        tally = [0, 0]

        def observe(parent: BeamEntry, child_phis: List[float], child_keys: List[float]) -> None:
            tally[1] += 1
            finite = [key for key in child_keys if key != NEG_INF]
            if abs(max(finite) - parent.key) > TOLERANCE or any(key > parent.key for key in finite):
                tally[0] += 1

        stochastic_beam_search(self.model, self.k, stream, on_expand=observe)
        return tally[0], tally[1]


class Suite(BaseSuite):
    name = 'coupling'

    def run(self) -> List[Criterion]:
        k = 2
        results = self.collect(CouplingDraw(self.tree(), k), self.size(200000))
        violations = sum(result[0] for result in results)
        expansions = sum(result[1] for result in results)
        return [
            self.criterion('expanded nodes checked', expansions, '>', 0),
            self.criterion('nodes whose children keys do not peak at the parent key', violations, '==', 0),
        ]
