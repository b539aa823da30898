"""Estimators are exact when the sample covers every sequence, and the normalized one
reproduces constants"""
from typing import List

from stochastic_beam.common.estimators import (
    ConstantFunctional, EntropyFunctional, normalized_estimate, priority_estimate
)
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import enumerate_leaves, exact_expectation
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.suites.base_suite import BaseSuite


class Suite(BaseSuite):
    name = 'consistency'

    def run(self) -> List[Criterion]:
        model = self.tree()
        table = enumerate_leaves(model)
        f = EntropyFunctional(model)
        exact = exact_expectation(f, table)
        stream = RandomStream(self.config.seed)
        full_error = one_error = constant_error = 0.0
        for _ in range(self.size(1000)):
            sample = stochastic_beam_search(model, len(table) + 1, stream, estimator=True)
            full_error = max(full_error, abs(priority_estimate(f, sample) - exact),
                             abs(normalized_estimate(f, sample) - exact))
            partial = stochastic_beam_search(model, 3, stream, estimator=True)
            one_error = max(one_error, abs(normalized_estimate(ConstantFunctional(1.0), partial) - 1.0))
            constant_error = max(constant_error, abs(normalized_estimate(ConstantFunctional(2.5), partial) - 2.5))
        return [
            self.criterion('max |estimate - exact| when every sequence is sampled', full_error, '<', 1e-9),
            self.criterion('max |normalized estimate of f = 1 - 1|', one_error, '==', 0.0),
            self.criterion('max |normalized estimate of f = 2.5 - 2.5|', constant_error, '<', 1e-12),
        ]
