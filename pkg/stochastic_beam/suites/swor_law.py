"""Gumbel-Top-k over an explicit leaf distribution against the exact law of ordered samples"""
from typing import List, Sequence, Tuple

from stochastic_beam.common.gumbel import gumbel_top_k
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import enumerate_leaves, swor_table, tv_distance
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.suites.base_suite import BaseSuite


class GumbelTopKDraw:

    def __init__(self, log_probs: Sequence[float], k: int) -> None:
        self.log_probs = list(log_probs)
        self.k = k

    def __call__(self, stream: RandomStream) -> Tuple[int, ...]:
        return tuple(gumbel_top_k(self.log_probs, self.k, stream))


class Suite(BaseSuite):
    name = 'swor-law'

    def run(self) -> List[Criterion]:
        table = enumerate_leaves(self.tree())
        k = 2
        counts = self.count(GumbelTopKDraw(table.log_probs, k), self.size(200000))
        return [
            self.criterion(f'TV(gumbel_top_k k={k}, exact)', tv_distance(counts, swor_table(table, k)),
                           '<', self.noise_threshold(0.01))
        ]
