"""Abstract sequence model"""
import abc

from typing import List, Sequence, Tuple

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.stable_math import log_softmax


TokenSeq = Tuple[int, ...]


class SequenceModel(metaclass=abc.ABCMeta):
    """Factorized distribution over token sequences, one conditional step at a time.

    Subclasses provide unnormalized log-probabilities for the next token; `step` turns them
    into locally normalized conditionals. `step` must behave as a pure function of the
    prefix and is never called on a complete sequence.

    Attributes:
        vocab_size: Number of token ids, EOS included
        max_len: Length at which every sequence is complete
        eos: Token id reserved for end of sequence
    """
    vocab_size: int
    max_len: int
    eos: int

    @abc.abstractmethod
    def logits(self, prefix: TokenSeq) -> List[float]:
        """Unnormalized log-probabilities of the next token, one per vocabulary entry."""

    def step(self, prefix: TokenSeq) -> List[float]:
        """Conditional log-probabilities of the next token."""
        return log_softmax(self.logits(prefix))

    def is_complete(self, prefix: TokenSeq) -> bool:
        """A sequence is complete once it ends in EOS or reaches `max_len`."""
        return len(prefix) >= self.max_len or (len(prefix) > 0 and prefix[-1] == self.eos)

    def encode(self, text: str) -> TokenSeq:
        """Parse whitespace separated token ids.

        Raises:
            DomainException
        """
        try:
            tokens = tuple(int(token) for token in text.split())
        except ValueError as ex:
            raise DomainException(f'cannot read token ids from {text!r}: {ex}')
        for token in tokens:
            if not 0 <= token < self.vocab_size:
                raise DomainException(f'token {token} outside vocabulary of size {self.vocab_size}')
        return tokens

    def decode(self, tokens: Sequence[int]) -> str:
        """Human readable rendering of a token sequence."""
        return ' '.join(str(token) for token in tokens if token != self.eos)

    def content(self, tokens: Sequence[int]) -> TokenSeq:
        """Tokens without EOS."""
        return tuple(token for token in tokens if token != self.eos)


def seq_logprob(model: SequenceModel, seq: Sequence[int]) -> float:
    """Log-probability of a sequence by the chain rule.

    EOS tokens appended after completion are padding and contribute 0.

    Raises:
        DomainException: token outside the vocabulary or continuation of a complete sequence
    """
    phi = 0.0
    prefix: TokenSeq = ()
    for token in seq:
        if not 0 <= token < model.vocab_size:
            raise DomainException(f'token {token} outside vocabulary of size {model.vocab_size}')
        if model.is_complete(prefix):
            if token != model.eos:
                raise DomainException(f'sequence {tuple(seq)} continues after completion')
        else:
            phi += model.step(prefix)[token]
        prefix = prefix + (token,)
    return phi
