"""Character-level Markov text model"""
import math

from collections import Counter, defaultdict
from typing import Any, Dict, List, Sequence

import rapidjson

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.exceptions.model import ModelException
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq
from stochastic_beam.settings import Settings


EOS: str = Settings.MARKOV['EOS']


class MarkovTextModel(SequenceModel):
    """Order-m Markov chain over characters with additive smoothing.

    The newline symbol doubles as EOS and as left padding of the first context. Contexts
    never seen in training get the uniform distribution, which is also what the smoothed
    estimate gives them for any alpha > 0.

    Attributes:
        order: Context length m
        alpha: Additive smoothing
        vocab: Characters, the EOS symbol last
        counts: context -> Counter of next characters
    """

    def __init__(self, order: int, alpha: float, vocab: Sequence[str],
                 counts: Dict[str, Dict[str, int]], max_len: int = Settings.MARKOV['MAX_LEN']) -> None:
        if order < 1:
            raise DomainException(f'order must be at least 1, got {order}')
        if alpha < 0:
            raise DomainException(f'smoothing must be non-negative, got {alpha}')
        if max_len < 1:
            raise DomainException(f'max_len must be at least 1, got {max_len}')
        self.order: int = order
        self.alpha: float = float(alpha)
        self.vocab: List[str] = [char for char in vocab if char != EOS] + [EOS]
        self.index: Dict[str, int] = {char: token for token, char in enumerate(self.vocab)}
        self.counts: Dict[str, Counter] = {context: Counter(row) for context, row in counts.items()}
        self.eos = len(self.vocab) - 1
        self.vocab_size = len(self.vocab)
        self.max_len = max_len
        self._cache: Dict[str, List[float]] = {}

    def context(self, prefix: TokenSeq) -> str:
        """Last `order` characters of the padded prefix."""
        text = EOS * self.order + ''.join(self.vocab[token] for token in prefix)
        return text[-self.order:]

    def logits(self, prefix: TokenSeq) -> List[float]:
        context = self.context(prefix)
        if context not in self._cache:
            self._cache[context] = self._conditionals(self.counts.get(context, Counter()))
        return list(self._cache[context])

    def _conditionals(self, row: Counter) -> List[float]:
        total = sum(row.values())
        if total == 0:
            return [-math.log(self.vocab_size)] * self.vocab_size
        norm = math.log(total + self.alpha * self.vocab_size)
        scores = []
        for char in self.vocab:
            count = row.get(char, 0) + self.alpha
            scores.append(math.log(count) - norm if count > 0 else NEG_INF)
        return scores

    def encode(self, text: str) -> TokenSeq:
        """Token ids of a string, EOS not appended.

        Raises:
            DomainException: character outside the vocabulary
        """
        try:
            return tuple(self.index[char] for char in text)
        except KeyError as ex:
            raise DomainException(f'character {ex} is not in the model vocabulary')

    def decode(self, tokens: Sequence[int]) -> str:
        return ''.join(self.vocab[token] for token in tokens if token != self.eos)

    def json_serialize(self) -> Dict[str, Any]:
        """Counts table as written by `save_markov`."""
        return {
            'format': Settings.MARKOV['FORMAT'],
            'version': Settings.MARKOV['VERSION'],
            'order': self.order,
            'alpha': self.alpha,
            'max_len': self.max_len,
            'vocab': self.vocab[:-1],
            'counts': {
                context: {char: row[char] for char in sorted(row)}
                for context, row in sorted(self.counts.items())
            },
        }


def train_markov(corpus: str, order: int, alpha: float, max_len: int = Settings.MARKOV['MAX_LEN']) -> MarkovTextModel:
    """Count character transitions of a corpus.

    Every line restarts from a padded context; a line terminated by a newline also counts
    a transition to EOS. Blank lines are skipped.

    Raises:
        DomainException
    """
    if order < 1:
        raise DomainException(f'order must be at least 1, got {order}')
    if alpha < 0:
        raise DomainException(f'smoothing must be non-negative, got {alpha}')
    counts: Dict[str, Counter] = defaultdict(Counter)
    chars = set()
    for chunk in corpus.splitlines(keepends=True):
        terminated = chunk.endswith(('\n', '\r'))
        line = chunk.rstrip('\r\n')
        if not line:
            continue
        chars.update(line)
        text = EOS * order + line + (EOS if terminated else '')
        for position in range(order, len(text)):
            counts[text[position - order:position]][text[position]] += 1
    if not chars:
        raise DomainException('cannot train a Markov model on an empty corpus')
    return MarkovTextModel(order, alpha, sorted(chars), counts, max_len)


def save_markov(model: MarkovTextModel, path: str) -> None:
    """Write the counts table as JSON."""
    with open(path, 'w', encoding='utf-8') as output:
        output.write(rapidjson.dumps(model.json_serialize(), indent=2, sort_keys=True))
        output.write('\n')


def load_markov(path: str) -> MarkovTextModel:
    """Read a counts table written by `save_markov`.

    Raises:
        ModelException
    """
    try:
        with open(path, 'r', encoding='utf-8') as in_file:
            data = rapidjson.loads(in_file.read())
    except (IOError, ValueError) as ex:
        raise ModelException(ex)
    if not isinstance(data, dict) or data.get('format') != Settings.MARKOV['FORMAT']:
        raise ModelException(f'{path} is not a {Settings.MARKOV["FORMAT"]} file')
    try:
        return MarkovTextModel(
            int(data['order']), float(data['alpha']), list(data['vocab']),
            {context: {char: int(count) for char, count in row.items()} for context, row in data['counts'].items()},
            int(data['max_len'])
        )
    except (KeyError, TypeError, ValueError, AttributeError, DomainException) as ex:
        raise ModelException(f'malformed model file {path}: {ex}')
