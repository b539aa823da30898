"""Normalized stochastic beam search estimates vary less than Monte Carlo on a peaked model"""
from typing import List, Tuple

import numpy as np

from stochastic_beam.common.estimators import (
    BleuFunctional, EntropyFunctional, beam_width, mc_estimate, normalized_estimate
)
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.baselines import ancestral_samples
from stochastic_beam.search.beam_search import beam_search
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.seqmodels.markov import train_markov
from stochastic_beam.seqmodels.temperature import apply_temperature
from stochastic_beam.settings import Settings
from stochastic_beam.suites.base_suite import BaseSuite


ORDER: int = 2
ALPHA: float = 0.1
TEMPERATURE: float = 0.2
K_VALUES: List[int] = [5, 20]


class PairedDraw:
    """Monte Carlo and normalized estimates of entropy and BLEU from one stream."""

    def __init__(self, model: SequenceModel, bleu: BleuFunctional, k: int) -> None:
        self.model = model
        self.entropy = EntropyFunctional(model)
        self.bleu = bleu
        self.k = k

    def __call__(self, stream: RandomStream) -> Tuple[float, float, float, float]:
        samples = ancestral_samples(self.model, self.k, stream).sequences
        sample = stochastic_beam_search(self.model, beam_width(self.k, 'extend'), stream, estimator=True)
        return (
            mc_estimate(self.entropy, samples), normalized_estimate(self.entropy, sample),
            mc_estimate(self.bleu, samples), normalized_estimate(self.bleu, sample),
        )


class Suite(BaseSuite):
    name = 'variance-reduction'

    def run(self) -> List[Criterion]:
        with open(Settings.CORPUS, 'r', encoding='utf-8') as corpus:
            base = train_markov(corpus.read(), ORDER, ALPHA)
        model = apply_temperature(base, TEMPERATURE)
        bleu = BleuFunctional(beam_search(base, 5)[0].seq, eos=base.eos)
        criteria: List[Criterion] = []
        for k in K_VALUES:
            draws = np.asarray(self.collect(PairedDraw(model, bleu, k), self.size(1000)), dtype=float)
            variances = draws.var(axis=0, ddof=1)
            for label, mc, sbs in (('entropy', 0, 1), ('BLEU', 2, 3)):
                criteria.append(self.criterion(
                    f'{label} k={k}: var(normalized) - var(MC)', variances[sbs] - variances[mc], '<=', 0.0
                ))
        return criteria
