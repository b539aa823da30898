""" Diversity module """
import math

from typing import Any, Dict, List, Sequence, Tuple

from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.common.export import write_meta, write_table
from stochastic_beam.common.logger import Logger
from stochastic_beam.common.metrics import bleu, mean_diversity
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.replicates import ReplicateRunner
from stochastic_beam.config import RunConfig
from stochastic_beam.estimate import resolve_reference
from stochastic_beam.search.baselines import ancestral_samples
from stochastic_beam.search.beam_search import beam_search
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq
from stochastic_beam.seqmodels.loader import ModelLoader
from stochastic_beam.seqmodels.temperature import apply_temperature


ScoredSet = Tuple[List[float], List[int]]


def score_set(seqs: Sequence[TokenSeq], reference: TokenSeq) -> ScoredSet:
    """min, mean and max BLEU of the sequences against the reference and their mean diversity,
    together with the n-gram orders the diversity had to skip."""
    scores = [bleu(seq, reference) for seq in seqs]
    diversity, skipped = mean_diversity(seqs)
    return [min(scores), math.fsum(scores) / len(scores), max(scores), diversity], skipped


class DiversityTask:
    """One replicate of a stochastic method."""

    def __init__(self, model: SequenceModel, method: str, k: int, reference: TokenSeq) -> None:
        self.model = model
        self.method = method
        self.k = k
        self.reference = reference

    def __call__(self, replicate: int, stream: RandomStream) -> ScoredSet:
        if self.method == 'sbs':
            sample = stochastic_beam_search(self.model, self.k, stream)
        else:
            sample = ancestral_samples(self.model, self.k, stream)
        return score_set([self.model.content(seq) for seq in sample.sequences], self.reference)


class Diversity:
    """Scores k sequences per method against a reference with BLEU and n-gram diversity,
    over a temperature and sample size sweep.

    Attributes:
        config: Run configuration
        methods: Methods to compare
    """
    METHODS: List[str] = ['bs', 'sbs', 'sampling']
    HEADER: List[str] = ['method', 'param', 'k', 'replicate', 'min_bleu', 'mean_bleu', 'max_bleu', 'diversity']

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.methods: List[str] = []
        self.validate()

    def validate(self) -> None:
        """Method validating the diversity parameters."""
        if not self.config.model:
            raise ConfigException('diversity needs a model file, use --model')
        if self.config.reference is None and self.config.reference_beam is None:
            raise ConfigException('a reference is required, use --reference or --reference-beam')
        methods = self.config.methods or self.METHODS
        unknown = set(methods) - set(self.METHODS)
        if unknown:
            raise ConfigException(f'unknown methods: {", ".join(sorted(unknown))}')
        self.methods = [method for method in self.METHODS if method in methods]

    def run(self) -> None:
        model = ModelLoader(self.config.model).load()
        reference = resolve_reference(model, self.config)
        if not reference:
            raise ConfigException('the reference sequence is empty')
        Logger(__name__).info('Reference: %s', model.decode(reference))
        rows: List[List[Any]] = []
        summaries: Dict[Tuple[str, float, int], List[List[float]]] = {}
        for method in self.methods:
            for temperature in self.config.temperatures:
                tempered = apply_temperature(model, temperature)
                for k in self.config.k_values:
                    scored = self.replicates(tempered, method, k, reference, desc=f'{method} T={temperature} k={k}')
                    self.warn_skipped(method, temperature, k, scored)
                    scores = [values for values, _ in scored]
                    summaries[(method, temperature, k)] = scores
                    for replicate, values in enumerate(scores):
                        rows.append([method, repr(temperature), k, replicate] + [repr(v) for v in values])
        for (method, temperature, k), scores in summaries.items():
            means = [math.fsum(column) / len(column) for column in zip(*scores)]
            rows.append([method, repr(temperature), k, 'mean'] + [repr(v) for v in means])
        write_table(self.config.output, self.HEADER, rows)
        write_meta(self.config.output, self.config)

    def replicates(self, model: SequenceModel, method: str, k: int, reference: TokenSeq,
                   desc: str) -> List[ScoredSet]:
        if method == 'bs':
            values, skipped = score_set([model.content(entry.seq) for entry in beam_search(model, k)], reference)
            return [(list(values), list(skipped)) for _ in range(self.config.replicates)]
        runner = ReplicateRunner(self.config.seed, self.config.threads)
        return runner.run(DiversityTask(model, method, k, reference), self.config.replicates, desc=desc)

    @staticmethod
    def warn_skipped(method: str, temperature: float, k: int, scored: List[ScoredSet]) -> None:
        """Diversity is averaged over fewer n-gram orders when sequences are too short for some."""
        skipped = sorted({n for _, orders in scored for n in orders})
        if skipped:
            affected = sum(1 for _, orders in scored if orders)
            Logger(__name__).warning(
                '%s T=%s k=%d: diversity skipped n-gram orders %s in %d of %d replicates',
                method, temperature, k, ' '.join(str(n) for n in skipped), affected, len(scored)
            )
