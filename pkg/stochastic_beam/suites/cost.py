"""Model evaluations: linear in k for stochastic beam search, unbounded for rejection sampling"""
from typing import List

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import enumerate_leaves, expected_rejection_draws
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.baselines import rejection_swor
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.seqmodels.tree import Edge, ExplicitTreeModel
from stochastic_beam.suites.base_suite import BaseSuite


K_VALUES: List[int] = [1, 2, 3, 5]
MAX_DRAWS: int = 10 ** 6


class EvaluationsDraw:
    """Model evaluations of one stochastic beam search, relative to k * max_len."""

    def __init__(self, model: SequenceModel, k: int) -> None:
        self.model = model
        self.k = k

    def __call__(self, stream: RandomStream) -> float:
        sample = stochastic_beam_search(self.model, self.k, stream)
        return sample.evaluations / (self.k * self.model.max_len)


class RejectionDraw:

    def __init__(self, model: SequenceModel, k: int) -> None:
        self.model = model
        self.k = k

    def __call__(self, stream: RandomStream) -> int:
        return rejection_swor(self.model, self.k, stream, MAX_DRAWS).draws


def two_leaf_model(p: float) -> ExplicitTreeModel:
    return ExplicitTreeModel([Edge(0, 1, 0, p), Edge(0, 2, 1, 1.0 - p)])


class Suite(BaseSuite):
    name = 'cost'

    def run(self) -> List[Criterion]:
        model = self.tree()
        worst = 0.0
        for k in K_VALUES:
            worst = max([worst] + self.collect(EvaluationsDraw(model, k), self.size(10000)))

        skewed = two_leaf_model(0.99)
        expected = expected_rejection_draws(enumerate_leaves(skewed), 2)
        draws = self.collect(RejectionDraw(skewed, 2), self.size(10000))
        mean = sum(draws) / len(draws)
        return [
            self.criterion('max stochastic beam search evaluations / (k * max_len)', worst, '<=', 1.0),
            self.criterion(f'rejection draws for k=2 at p=(0.99, 0.01): |mean / {expected:.4f} - 1|',
                           abs(mean / expected - 1.0), '<', 0.1),
        ]
