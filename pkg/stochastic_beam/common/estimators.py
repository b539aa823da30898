"""Estimators of expectations under a sequence model.

Monte Carlo over ancestral samples, the priority sampling estimator over a stochastic beam
with its self-normalized variant, and the deterministic beam search bound. Importance
weights are kept in the log domain; for phi - kappa below `Settings.SERIES_CUTOFF` the log
weight is evaluated by its series in z = exp(phi - kappa), which avoids the cancellation in
1 - exp(-z).
"""
import abc
import math
import sys

from typing import Dict, List, Optional, Sequence

import numpy as np

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.exceptions.estimator import EstimatorException
from stochastic_beam.common.metrics import bleu
from stochastic_beam.common.models.beam_entry import BeamEntry, SworSample
from stochastic_beam.common.models.estimate_report import EstimateReport
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF, log1mexp, logsumexp
from stochastic_beam.search.baselines import ancestral_sample
from stochastic_beam.search.beam_search import beam_search
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq, seq_logprob
from stochastic_beam.settings import Settings


_LOG_MAX: float = math.log(sys.float_info.max)

KAPPA_CONVENTIONS: List[str] = ['extend', 'sacrifice']


class Functional(metaclass=abc.ABCMeta):
    """Function f of a complete sequence whose expectation is estimated."""

    @abc.abstractmethod
    def __call__(self, seq: TokenSeq) -> float:
        """Value of f on a complete sequence."""


class ConstantFunctional(Functional):
    def __init__(self, value: float) -> None:
        self.value = float(value)

    def __call__(self, seq: TokenSeq) -> float:
        return self.value


class IndicatorFunctional(Functional):
    """1 on one sequence, 0 elsewhere."""

    def __init__(self, target: Sequence[int]) -> None:
        self.target: TokenSeq = tuple(target)

    def __call__(self, seq: TokenSeq) -> float:
        return 1.0 if tuple(seq) == self.target else 0.0


class EntropyFunctional(Functional):
    """f(y) = -log p(y); its expectation is the model entropy."""

    def __init__(self, model: SequenceModel) -> None:
        self.model = model

    def __call__(self, seq: TokenSeq) -> float:
        return -seq_logprob(self.model, seq)


class BleuFunctional(Functional):
    """Sentence BLEU of the sequence against a fixed reference, EOS tokens dropped."""

    def __init__(self, reference: Sequence[int], max_n: int = 4, eos: Optional[int] = None) -> None:
        self.eos = eos
        self.reference: TokenSeq = self.strip(reference)
        if not self.reference:
            raise DomainException('BLEU functional needs a non-empty reference')
        self.max_n = max_n

    def strip(self, seq: Sequence[int]) -> TokenSeq:
        return tuple(token for token in seq if token != self.eos)

    def __call__(self, seq: TokenSeq) -> float:
        return bleu(self.strip(seq), self.reference, self.max_n)


def entropy_functional(model: SequenceModel) -> Functional:
    return EntropyFunctional(model)


def mc_estimate(f: Functional, samples: Sequence[TokenSeq]) -> float:
    """Mean of f over samples drawn with replacement.

    Raises:
        DomainException: no samples
    """
    if not samples:
        raise DomainException('Monte Carlo estimate needs at least one sample')
    return math.fsum(f(seq) for seq in samples) / len(samples)


def log_q(phi: float, a: float) -> float:
    """log P(Gumbel(phi) > a) = log(1 - exp(-exp(phi - a)))."""
    if a == NEG_INF:
        return 0.0
    if phi == NEG_INF:
        return NEG_INF
    diff = phi - a
    if diff < Settings.SERIES_CUTOFF:
        z = math.exp(diff)
        return diff - z / 2 + z * z / 24 - z ** 4 / 2880
    if diff >= _LOG_MAX:
        return 0.0
    return log1mexp(-math.exp(diff))


def log_importance_weight(phi: float, kappa: float) -> float:
    """log(p / q) of a sequence with log-probability phi kept above threshold kappa.

    Raises:
        EstimatorException: phi is -inf
    """
    if phi == NEG_INF:
        raise EstimatorException('importance weight of a sequence with probability zero')
    if kappa == NEG_INF:
        return phi
    diff = phi - kappa
    if diff < Settings.SERIES_CUTOFF:
        z = math.exp(diff)
        return kappa + z / 2 - z * z / 24 + z ** 4 / 2880
    if diff >= _LOG_MAX:
        return phi
    # phi - log(1 - exp(-z)) = kappa - log((1 - exp(-z)) / z)
    z = math.exp(diff)
    return kappa - math.log(-math.expm1(-z) / z)


def log_weights(sample: SworSample) -> List[float]:
    """Log importance weights of the retained entries.

    Raises:
        EstimatorException: threshold undefined or empty sample
    """
    if sample.kappa is None:
        raise EstimatorException('sample has no threshold kappa, draw it in estimator mode')
    if not sample.entries:
        raise EstimatorException('sample has no retained sequences')
    return [log_importance_weight(entry.phi, sample.kappa) for entry in sample.entries]


def weight_sum(sample: SworSample) -> float:
    """W(S), the sum of importance weights."""
    return math.exp(logsumexp(log_weights(sample)))


def priority_estimate(f: Functional, sample: SworSample) -> float:
    """Unbiased estimate sum_i p_i / q_i f(y_i) over the retained entries."""
    weights = log_weights(sample)
    return math.fsum(math.exp(weight) * f(entry.seq) for weight, entry in zip(weights, sample.entries))


def normalized_estimate(f: Functional, sample: SworSample) -> float:
    """Priority estimate divided by W(S); biased but consistent.

    Raises:
        EstimatorException: W(S) = 0
    """
    weights = log_weights(sample)
    norm = logsumexp(weights)
    if norm == NEG_INF:
        raise EstimatorException('importance weights sum to zero')
    relative = [math.exp(weight - norm) for weight in weights]
    return math.fsum(w * f(entry.seq) for w, entry in zip(relative, sample.entries)) / math.fsum(relative)


def bs_bound(f: Functional, beam: Sequence[BeamEntry], normalized: bool = False) -> float:
    """sum_i p_i f(y_i) over a deterministic beam; a lower bound when f >= 0.

    The normalized variant divides by the probability mass of the beam.
    """
    if not beam:
        raise DomainException('beam search bound needs a non-empty beam')
    if not normalized:
        return math.fsum(math.exp(entry.phi) * f(entry.seq) for entry in beam)
    norm = logsumexp(entry.phi for entry in beam)
    relative = [math.exp(entry.phi - norm) for entry in beam]
    return math.fsum(w * f(entry.seq) for w, entry in zip(relative, beam)) / math.fsum(relative)


def beam_width(k: int, kappa_convention: str) -> int:
    """Width of the stochastic beam that retains samples for an estimate with `k`.

    `extend` retains k samples on a beam of k + 1, `sacrifice` retains k - 1 of k.
    """
    if kappa_convention not in KAPPA_CONVENTIONS:
        raise EstimatorException(f'unknown kappa convention {kappa_convention}')
    return k + 1 if kappa_convention == 'extend' else k


def estimate_all(model: SequenceModel, f: Functional, methods: Sequence[str], k: int, replicate: int,
                 stream: RandomStream, temperature: float = 1.0,
                 kappa_convention: str = 'extend') -> List[EstimateReport]:
    """Every requested estimate of E[f] for one replicate.

    `model` is already tempered; `temperature` only labels the reports. The report `k` is the
    number of sequences the estimate uses.

    Raises:
        EstimatorException: unknown method or convention
    """
    unknown = set(methods) - set(EstimateReport.METHODS)
    if unknown:
        raise EstimatorException(f'unknown estimators: {", ".join(sorted(unknown))}')
    reports: List[EstimateReport] = []
    if 'MC' in methods:
        samples = [ancestral_sample(model, stream).seq for _ in range(k)]
        reports.append(EstimateReport('MC', k, temperature, replicate, mc_estimate(f, samples)))

    if 'SBS_raw' in methods or 'SBS_normalized' in methods:
        sample = stochastic_beam_search(model, beam_width(k, kappa_convention), stream, estimator=True)
        retained = k if kappa_convention == 'extend' else k - 1
        weights = weight_sum(sample)
        if 'SBS_raw' in methods:
            reports.append(EstimateReport('SBS_raw', retained, temperature, replicate,
                                          priority_estimate(f, sample), weights))
        if 'SBS_normalized' in methods:
            reports.append(EstimateReport('SBS_normalized', retained, temperature, replicate,
                                          normalized_estimate(f, sample), weights))

    if 'BS_bound' in methods or 'BS_normalized' in methods:
        beam = beam_search(model, k)
        mass = math.exp(logsumexp(entry.phi for entry in beam))
        if 'BS_bound' in methods:
            reports.append(EstimateReport('BS_bound', k, temperature, replicate, bs_bound(f, beam), mass))
        if 'BS_normalized' in methods:
            reports.append(EstimateReport('BS_normalized', k, temperature, replicate,
                                          bs_bound(f, beam, normalized=True), mass))
    return reports


def summarize(values: Sequence[float]) -> Dict[str, Optional[float]]:
    """Mean and empirical percentile band of replicate estimates."""
    if not values:
        return {'mean': None, 'low': None, 'high': None}
    low, high = np.percentile(np.asarray(values, dtype=float), Settings.PERCENTILES)
    return {'mean': math.fsum(values) / len(values), 'low': float(low), 'high': float(high)}
