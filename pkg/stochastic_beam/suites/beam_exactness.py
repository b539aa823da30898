"""Beam search wide enough to keep every sequence returns the sorted oracle table"""
from typing import List

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import enumerate_leaves
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.beam_search import beam_search
from stochastic_beam.seqmodels.tree import random_tree
from stochastic_beam.suites.base_suite import BaseSuite


TREES: int = 50


class Suite(BaseSuite):
    name = 'beam-exactness'

    def run(self) -> List[Criterion]:
        stream = RandomStream(self.config.seed)
        mismatches = impure = 0
        for _ in range(TREES):
            model = random_tree(stream)
            table = enumerate_leaves(model)
            expected = sorted(table, key=lambda leaf: (-leaf[1], leaf[0]))
            beam = beam_search(model, len(table))
            found = [(entry.seq, entry.phi) for entry in beam]
            if [seq for seq, _ in found] != [seq for seq, _ in expected] or any(
                    abs(phi - exact) > 1e-12 for (_, phi), (_, exact) in zip(found, expected)):
                mismatches += 1
            if beam_search(model, len(table)) != beam:
                impure += 1
        return [
            self.criterion(f'random trees where beam search differs from the oracle, of {TREES}', mismatches, '==', 0),
            self.criterion('random trees where two beam searches differ', impure, '==', 0),
        ]
