"""Temperature wrapper"""
from typing import List, Sequence

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq


class TemperatureModel(SequenceModel):
    """Model whose conditionals are softmax(logits / T) of a wrapped model.

    Attributes:
        model: Wrapped model
        temperature: Softmax temperature T > 0
    """

    def __init__(self, model: SequenceModel, temperature: float) -> None:
        if not temperature > 0.0:
            raise DomainException(f'temperature must be positive, got {temperature}')
        self.model: SequenceModel = model
        self.temperature: float = float(temperature)
        self.vocab_size = model.vocab_size
        self.max_len = model.max_len
        self.eos = model.eos

    def logits(self, prefix: TokenSeq) -> List[float]:
        return [score / self.temperature for score in self.model.logits(prefix)]

    def step(self, prefix: TokenSeq) -> List[float]:
        if self.temperature == 1.0:
            return self.model.step(prefix)
        return super().step(prefix)

    def is_complete(self, prefix: TokenSeq) -> bool:
        return self.model.is_complete(prefix)

    def encode(self, text: str) -> TokenSeq:
        return self.model.encode(text)

    def decode(self, tokens: Sequence[int]) -> str:
        return self.model.decode(tokens)


def apply_temperature(model: SequenceModel, temperature: float) -> SequenceModel:
    """Wrap `model` so that its step distribution is tempered.

    Raises:
        DomainException: temperature <= 0
    """
    return TemperatureModel(model, temperature)
