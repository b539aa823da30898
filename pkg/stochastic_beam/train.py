""" Train module """
from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.common.logger import Logger
from stochastic_beam.config import RunConfig
from stochastic_beam.seqmodels.markov import save_markov, train_markov


class Train:
    """Trains a character Markov model on a corpus and saves its counts table.

    Attributes:
        config: Run configuration
    """

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        if not config.corpus:
            raise ConfigException('train needs a corpus, use --corpus')
        if not config.output:
            raise ConfigException('train needs a model file to write, use --output')

    def run(self) -> None:
        with open(self.config.corpus, 'r', encoding='utf-8') as corpus:
            text = corpus.read()
        model = train_markov(text, self.config.order, self.config.alpha, self.config.max_len)
        save_markov(model, self.config.output)
        Logger(__name__).info(
            'Trained order %d model with %d characters and %d contexts, written to %s',
            model.order, model.vocab_size, len(model.counts), self.config.output
        )
