"""Sentence BLEU and n-gram diversity of token sequences"""
import math

from collections import Counter
from typing import List, Sequence, Tuple

from stochastic_beam.common.exceptions.domain import DomainException


DIVERSITY_ORDERS: int = 4


def ngrams(seq: Sequence[int], n: int) -> Counter:
    """Multiset of contiguous n-grams, max(len - n + 1, 0) of them in total."""
    if n < 1:
        raise DomainException(f'n-gram order must be at least 1, got {n}')
    tokens = tuple(seq)
    return Counter(tokens[i:i + n] for i in range(len(tokens) - n + 1))


def bleu(candidate: Sequence[int], reference: Sequence[int], max_n: int = 4) -> float:
    """Sentence-level BLEU against a single reference.

    Clipped n-gram precisions for n = 1..max_n are combined by geometric mean and multiplied
    by the brevity penalty exp(1 - r/c) when the candidate is shorter than the reference.
    A zero precision for n >= 2 is smoothed to 1/(total + 1); a zero unigram precision
    gives 0.

    Raises:
        DomainException: empty reference
    """
    if not reference:
        raise DomainException('BLEU needs a non-empty reference')
    if not candidate:
        return 0.0
    log_precision = 0.0
    for n in range(1, max_n + 1):
        candidate_ngrams = ngrams(candidate, n)
        reference_ngrams = ngrams(reference, n)
        total = sum(candidate_ngrams.values())
        matches = sum(min(count, reference_ngrams[gram]) for gram, count in candidate_ngrams.items())
        if matches == 0:
            if n == 1:
                return 0.0
            log_precision += -math.log(total + 1)
        else:
            log_precision += math.log(matches / total)
    c, r = len(candidate), len(reference)
    brevity = 0.0 if c >= r else 1.0 - r / c
    return math.exp(brevity + log_precision / max_n)


def ngram_diversity(seqs: Sequence[Sequence[int]], n: int) -> float:
    """Distinct n-grams over total n-grams, pooled across the sequences.

    Raises:
        DomainException: no sequence has an n-gram
    """
    pooled: Counter = Counter()
    for seq in seqs:
        pooled.update(ngrams(seq, n))
    total = sum(pooled.values())
    if total == 0:
        raise DomainException(f'no {n}-grams in {len(seqs)} sequences')
    return len(pooled) / total


def mean_diversity(seqs: Sequence[Sequence[int]], max_n: int = DIVERSITY_ORDERS) -> Tuple[float, List[int]]:
    """Average of d_1..d_max_n, skipping orders without any n-gram.

    Returns the average and the skipped orders.

    Raises:
        DomainException: every order was skipped
    """
    values: List[float] = []
    skipped: List[int] = []
    for n in range(1, max_n + 1):
        try:
            values.append(ngram_diversity(seqs, n))
        except DomainException:
            skipped.append(n)
    if not values:
        raise DomainException('sequences are empty, diversity is undefined')
    return math.fsum(values) / len(values), skipped
