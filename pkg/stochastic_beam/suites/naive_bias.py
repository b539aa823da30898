"""Sampling instead of taking the top k at every level is biased"""
from typing import List, Tuple

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import LeafTable, enumerate_leaves, swor_table, tv_distance
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.baselines import naive_stepwise_swor
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.suites.base_suite import BaseSuite


class NaiveDraw:

    def __init__(self, model: SequenceModel, table: LeafTable, k: int) -> None:
        self.model = model
        self.table = table
        self.k = k

    def __call__(self, stream: RandomStream) -> Tuple[int, ...]:
        sample = naive_stepwise_swor(self.model, self.k, stream)
        return tuple(self.table.index_of(seq) for seq in sample.sequences)


class Suite(BaseSuite):
    name = 'naive-bias'

    def run(self) -> List[Criterion]:
        model = self.tree()
        table = enumerate_leaves(model)
        k = 2
        counts = self.count(NaiveDraw(model, table, k), self.size(200000))
        return [
            self.criterion(f'TV(naive stepwise sampling k={k}, exact)', tv_distance(counts, swor_table(table, k)),
                           '>', 0.02)
        ]
