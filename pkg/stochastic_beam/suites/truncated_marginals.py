"""Conditional children keys against the truncated Gumbel distribution"""
import math

from collections import Counter
from functools import partial
from typing import Callable, List, Sequence

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import ks_distance, tv_distance
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import log_softmax
from stochastic_beam.common.truncated_gumbel import (
    TruncatedGumbelParams, sample_children_conditional, sample_children_three_step, trunc_cdf
)
from stochastic_beam.suites.base_suite import BaseSuite


CHILD_PROBS: List[float] = [0.5, 0.3, 0.2]
PARENT_KEY: float = 1.3


class ChildrenDraw:
    """Children keys from one of the two samplers."""

    def __init__(self, child_phis: Sequence[float], parent_key: float, three_step: bool) -> None:
        self.child_phis = list(child_phis)
        self.parent_key = parent_key
        self.three_step = three_step

    def __call__(self, stream: RandomStream) -> List[float]:
        if self.three_step:
            return sample_children_three_step(stream, self.child_phis, self.parent_key)
        return sample_children_conditional(stream, self.child_phis, self.parent_key)


class Suite(BaseSuite):
    name = 'truncated-marginals'

    def run(self) -> List[Criterion]:
        child_phis = [math.log(p) for p in CHILD_PROBS]
        criteria: List[Criterion] = []
        for label, three_step in (('shift', False), ('three-step', True)):
            draws = self.collect(ChildrenDraw(child_phis, PARENT_KEY, three_step), self.size(100000))
            misses = sum(1 for keys in draws if max(keys) != PARENT_KEY)
            criteria.append(self.criterion(f'{label}: draws whose maximum is not the parent key', misses, '==', 0))
            winners = Counter(keys.index(PARENT_KEY) for keys in draws)
            law = dict(enumerate(math.exp(phi) for phi in log_softmax(child_phis)))
            criteria.append(self.criterion(f'{label}: TV(argmax, softmax)', tv_distance(winners, law),
                                           '<', self.noise_threshold(0.01)))
            for child, phi in enumerate(child_phis):
                below = [keys[child] for keys in draws if keys[child] != PARENT_KEY]
                cdf: Callable[[float], float] = partial(trunc_cdf, TruncatedGumbelParams(phi, PARENT_KEY))
                criteria.append(self.criterion(f'{label}: KS(child {child}, truncated Gumbel)',
                                               ks_distance(below, cdf), '<', self.noise_threshold(0.01)))
        return criteria
