"""Stochastic beam search against the exact law of ordered samples and against flat Gumbel-Top-k"""
import math

from typing import List, Tuple

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import LeafTable, enumerate_leaves, swor_table, tv_distance
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.suites.base_suite import BaseSuite
from stochastic_beam.suites.swor_law import GumbelTopKDraw


class StochasticBeamDraw:
    """Leaf indices of one stochastic beam search sample."""

    def __init__(self, model: SequenceModel, table: LeafTable, k: int) -> None:
        self.model = model
        self.table = table
        self.k = k

    def __call__(self, stream: RandomStream) -> Tuple[int, ...]:
        sample = stochastic_beam_search(self.model, self.k, stream)
        return tuple(self.table.index_of(seq) for seq in sample.sequences)


class Suite(BaseSuite):
    name = 'sbs-law'

    def run(self) -> List[Criterion]:
        model = self.tree()
        table = enumerate_leaves(model)
        k = 2
        draws = self.size(200000)
        exact = swor_table(table, k)
        sbs = self.count(StochasticBeamDraw(model, table, k), draws)
        flat = self.count(GumbelTopKDraw(table.log_probs, k), draws)
        flat_law = {outcome: flat.get(outcome, 0) / draws for outcome in exact}
        return [
            self.criterion(f'TV(stochastic beam search k={k}, exact)', tv_distance(sbs, exact),
                           '<', self.noise_threshold(0.01)),
            # both sides sampled
            self.criterion(f'TV(stochastic beam search, gumbel_top_k) k={k}', tv_distance(sbs, flat_law),
                           '<', self.noise_threshold(0.01) * math.sqrt(2)),
        ]
