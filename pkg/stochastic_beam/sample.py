""" Sample module """
from typing import Any, List

from stochastic_beam.common.estimators import beam_width
from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.common.export import write_meta, write_table
from stochastic_beam.common.logger import Logger
from stochastic_beam.common.models.beam_entry import SworSample
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.config import RunConfig
from stochastic_beam.search.baselines import ancestral_samples, naive_stepwise_swor, rejection_swor
from stochastic_beam.search.beam_search import run_beam_search
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel
from stochastic_beam.seqmodels.loader import ModelLoader
from stochastic_beam.seqmodels.temperature import apply_temperature


class Sample:
    """Draws k sequences from a model with one sampling method and writes them as a table.

    Attributes:
        config: Run configuration
    """
    METHODS: List[str] = ['sbs', 'bs', 'sampling', 'rejection', 'naive']
    HEADER: List[str] = ['rank', 'sequence', 'phi', 'key', 'kappa', 'evaluations']

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.validate()

    def validate(self) -> None:
        """Method validating the sample parameters."""
        if not self.config.model:
            raise ConfigException('sample needs a model file, use --model')
        if self.config.method not in self.METHODS:
            raise ConfigException(f'unknown method {self.config.method}, choose from {", ".join(self.METHODS)}')
        if len(self.config.k_values) != 1 or len(self.config.temperatures) != 1:
            raise ConfigException('sample takes a single k and a single temperature')
        if self.config.estimator and self.config.method != 'sbs':
            raise ConfigException('--estimator only applies to --method sbs')

    def run(self) -> None:
        model = apply_temperature(ModelLoader(self.config.model).load(), self.config.temperatures[0])
        sample = self.draw(model, self.config.k_values[0], RandomStream(self.config.seed))
        Logger(__name__).info('model evaluations: %d', sample.evaluations)
        if sample.exhausted:
            Logger(__name__).warning('model has only %d complete sequences', len(sample))
        write_table(self.config.output, self.HEADER, self.rows(model, sample))
        write_meta(self.config.output, self.config)

    def draw(self, model: SequenceModel, k: int, stream: RandomStream) -> SworSample:
        """Run the configured method."""
        method = self.config.method
        if method == 'sbs' and self.config.estimator:
            width = beam_width(k, self.config.kappa_convention)
            return stochastic_beam_search(model, width, stream, estimator=True)
        if method == 'sbs':
            return stochastic_beam_search(model, k, stream)
        if method == 'bs':
            return run_beam_search(model, k)
        if method == 'sampling':
            return ancestral_samples(model, k, stream)
        if method == 'rejection':
            return rejection_swor(model, k, stream, self.config.max_draws)
        return naive_stepwise_swor(model, k, stream)

    @staticmethod
    def rows(model: SequenceModel, sample: SworSample) -> List[List[Any]]:
        kappa = '' if sample.kappa is None else repr(sample.kappa)
        return [
            [rank, model.decode(entry.seq), repr(entry.phi), repr(entry.key), kappa, sample.evaluations]
            for rank, entry in enumerate(sample.entries, start=1)
        ]
