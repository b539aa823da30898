"""n-gram diversity of k sequences lies in [1/k, 1] and is 1/k for identical sequences

Both bounds hold for sequences without a repeated n-gram of their own, so every generated
sequence is a run of distinct tokens. Sequences may still share n-grams with each other.
"""
from typing import List, Tuple

from stochastic_beam.common.gumbel import gumbel_top_k
from stochastic_beam.common.metrics import DIVERSITY_ORDERS, ngram_diversity
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.suites.base_suite import BaseSuite


VOCAB: int = 12


def distinct_tokens(stream: RandomStream, length: int) -> Tuple[int, ...]:
    """Uniformly random sequence of `length` distinct tokens out of VOCAB."""
    return tuple(gumbel_top_k([0.0] * VOCAB, length, stream))


class Suite(BaseSuite):
    name = 'diversity-bounds'

    def run(self) -> List[Criterion]:
        stream = RandomStream(self.config.seed)
        outside = not_exact = 0
        for _ in range(self.size(10000)):
            k = 1 + int(stream.uniform() * 5)
            seqs = [distinct_tokens(stream, DIVERSITY_ORDERS + int(stream.uniform() * 5)) for _ in range(k)]
            for n in range(1, DIVERSITY_ORDERS + 1):
                if not 1.0 / k <= ngram_diversity(seqs, n) <= 1.0:
                    outside += 1
                if ngram_diversity([seqs[0]] * k, n) != 1.0 / k:
                    not_exact += 1
        return [
            self.criterion('diversities outside [1/k, 1]', outside, '==', 0),
            self.criterion('identical sequence sets whose diversity is not 1/k', not_exact, '==', 0),
        ]
