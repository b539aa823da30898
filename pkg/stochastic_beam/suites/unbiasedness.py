"""Priority sampling estimate of the entropy is unbiased"""
import math

from typing import List

import numpy as np

from stochastic_beam.common.estimators import EntropyFunctional, Functional, priority_estimate
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import enumerate_leaves, exact_expectation
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.suites.base_suite import BaseSuite


K_KEEP: List[int] = [1, 2, 4, 7]


class PriorityDraw:
    """Priority estimate from a stochastic beam of width k_keep + 1."""

    def __init__(self, model: SequenceModel, f: Functional, k_keep: int) -> None:
        self.model = model
        self.f = f
        self.k_keep = k_keep

    def __call__(self, stream: RandomStream) -> float:
        sample = stochastic_beam_search(self.model, self.k_keep + 1, stream, estimator=True)
        return priority_estimate(self.f, sample)


def z_score(values: List[float], exact: float) -> float:
    """|mean - exact| in standard errors of the mean."""
    data = np.asarray(values, dtype=float)
    error = abs(float(data.mean()) - exact)
    se = float(data.std(ddof=1)) / math.sqrt(len(data)) if len(data) > 1 else 0.0
    if se == 0.0:
        return 0.0 if error < 1e-9 else math.inf
    return error / se


class Suite(BaseSuite):
    name = 'unbiasedness'

    def run(self) -> List[Criterion]:
        model = self.tree()
        f = EntropyFunctional(model)
        exact = exact_expectation(f, enumerate_leaves(model))
        criteria: List[Criterion] = []
        for k_keep in K_KEEP:
            values = self.collect(PriorityDraw(model, f, k_keep), self.size(100000))
            criteria.append(self.criterion(
                f'|mean - {exact:.5f}| / SE of the entropy estimate, k={k_keep}', z_score(values, exact), '<', 4.0
            ))
        return criteria
