"""Brute-force ground truth for small models.

Enumerates every complete sequence, gives exact probabilities of ordered samples drawn
without replacement, exact expectations, and the statistics the suites compare sampled
distributions with.
"""
import itertools
import math

from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from scipy import stats

from stochastic_beam.common.exceptions.budget import BudgetException
from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.gumbel import perturb
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF, logsumexp
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq
from stochastic_beam.settings import Settings


class LeafTable:
    """Every complete sequence of a model with its log-probability, sorted by tokens.

    Attributes:
        leaves: (sequence, log-probability) pairs
    """

    def __init__(self, leaves: Sequence[Tuple[TokenSeq, float]]) -> None:
        self.leaves: List[Tuple[TokenSeq, float]] = sorted(leaves)
        self._index: Dict[TokenSeq, int] = {seq: i for i, (seq, _) in enumerate(self.leaves)}
        if len(self._index) != len(self.leaves):
            raise DomainException('leaf table has duplicate sequences')

    @property
    def sequences(self) -> List[TokenSeq]:
        return [seq for seq, _ in self.leaves]

    @property
    def log_probs(self) -> List[float]:
        return [phi for _, phi in self.leaves]

    @property
    def probs(self) -> List[float]:
        return [math.exp(phi) for _, phi in self.leaves]

    def index_of(self, seq: Sequence[int]) -> int:
        try:
            return self._index[tuple(seq)]
        except KeyError:
            raise DomainException(f'sequence {tuple(seq)} is not a leaf of the table')

    def __len__(self) -> int:
        return len(self.leaves)

    def __iter__(self) -> Iterator[Tuple[TokenSeq, float]]:
        return iter(self.leaves)


def enumerate_leaves(model: SequenceModel, max_total: int = Settings.MAX_TOTAL) -> LeafTable:
    """Expand the model depth first down to every complete sequence of non-zero probability.

    Raises:
        BudgetException: more than `max_total` complete sequences, partial table attached
    """
    leaves: List[Tuple[TokenSeq, float]] = []
    stack: List[Tuple[TokenSeq, float]] = [((), 0.0)]
    while stack:
        prefix, phi = stack.pop()
        if model.is_complete(prefix):
            if len(leaves) >= max_total:
                raise BudgetException(
                    f'model has more than {max_total} complete sequences', partial=LeafTable(leaves)
                )
            leaves.append((prefix, phi))
            continue
        for token, log_prob in enumerate(model.step(prefix)):
            if log_prob != NEG_INF:
                stack.append((prefix + (token,), phi + log_prob))
    return LeafTable(leaves)


def exact_swor_prob(table: LeafTable, ordered: Sequence[int]) -> float:
    """Probability of drawing the leaves `ordered`, in this order, without replacement.

    Raises:
        DomainException: repeated or unknown leaf index
    """
    if len(set(ordered)) != len(ordered):
        raise DomainException(f'ordered sample {tuple(ordered)} repeats a leaf')
    probs = table.probs
    prob = 1.0
    taken: List[float] = []
    for index in ordered:
        if not 0 <= index < len(probs):
            raise DomainException(f'leaf index {index} outside table of {len(probs)}')
        remaining = 1.0 - math.fsum(taken)
        if remaining <= 0.0:
            return 0.0
        prob *= probs[index] / remaining
        taken.append(probs[index])
    return prob


def swor_table(table: LeafTable, k: int) -> Dict[Tuple[int, ...], float]:
    """exact_swor_prob of every ordered k-tuple of leaves."""
    if not 1 <= k <= len(table):
        raise DomainException(f'cannot draw {k} of {len(table)} leaves')
    return {ordered: exact_swor_prob(table, ordered) for ordered in itertools.permutations(range(len(table)), k)}


def exact_expectation(f: Callable[[TokenSeq], float], table: LeafTable) -> float:
    """sum_i p_i f(y_i) over every leaf."""
    return math.fsum(math.exp(phi) * f(seq) for seq, phi in table)


def tv_distance(empirical: Mapping[Hashable, int], exact: Mapping[Hashable, float]) -> float:
    """Half the L1 distance between empirical frequencies and exact probabilities.

    The outcome space is the key set of `exact`.

    Raises:
        DomainException: an observed outcome is outside the exact space, or no observations
    """
    unknown = set(empirical) - set(exact)
    if unknown:
        raise DomainException(f'{len(unknown)} observed outcomes are not in the exact outcome space')
    total = sum(empirical.values())
    if total <= 0:
        raise DomainException('no observations')
    return 0.5 * math.fsum(abs(empirical.get(outcome, 0) / total - prob) for outcome, prob in exact.items())


def chi_square_stat(empirical: Mapping[Hashable, int], exact: Mapping[Hashable, float]) -> Tuple[float, int]:
    """Pearson statistic sum (observed - expected)^2 / expected and its degrees of freedom.

    Raises:
        DomainException: zero expected cell, unknown outcome or no observations
    """
    if any(prob <= 0.0 for prob in exact.values()):
        raise DomainException('chi-square needs every exact probability to be positive')
    unknown = set(empirical) - set(exact)
    if unknown:
        raise DomainException(f'{len(unknown)} observed outcomes are not in the exact outcome space')
    total = sum(empirical.values())
    if total <= 0:
        raise DomainException('no observations')
    statistic = math.fsum(
        (empirical.get(outcome, 0) - total * prob) ** 2 / (total * prob) for outcome, prob in exact.items()
    )
    return statistic, len(exact) - 1


def chi_square_pvalue(statistic: float, dof: int) -> float:
    """Upper tail probability of the chi-square distribution."""
    if dof <= 0:
        return 1.0
    return float(stats.chi2.sf(statistic, dof))


def ks_distance(samples: Sequence[float], cdf: Callable[[float], float]) -> float:
    """Kolmogorov-Smirnov distance between samples and a continuous CDF."""
    if not samples:
        raise DomainException('KS distance needs samples')
    return float(stats.kstest(np.asarray(samples, dtype=float), np.vectorize(cdf)).statistic)


def node_log_probs(table: LeafTable) -> Dict[TokenSeq, float]:
    """log-probability of every node, the log of the total mass of the leaves below it."""
    below: Dict[TokenSeq, List[float]] = {}
    for seq, phi in table:
        for depth in range(len(seq) + 1):
            below.setdefault(seq[:depth], []).append(phi)
    return {node: logsumexp(phis) for node, phis in below.items()}


def bottom_up_keys(table: LeafTable, stream: RandomStream) -> Dict[TokenSeq, float]:
    """Perturbed log-probability of every node, sampled bottom up.

    Every leaf gets an independent Gumbel perturbation; a node's key is the maximum key of
    the leaves below it.
    """
    keys: Dict[TokenSeq, float] = {}
    for item in perturb(table.log_probs, stream):
        seq = table.leaves[item.index][0]
        for depth in range(len(seq) + 1):
            node = seq[:depth]
            keys[node] = max(keys.get(node, NEG_INF), item.key)
    return keys


def expected_rejection_draws(table: LeafTable, k: int) -> float:
    """Expected number of ancestral draws until k distinct leaves have been seen.

    With j distinct leaves of mass m already seen, the wait for a new one is geometric with
    mean 1 / (1 - m), so E = sum over ordered j-prefixes, j < k, of P(prefix) / (1 - m).

    Raises:
        DomainException: k larger than the number of leaves
    """
    if not 1 <= k <= len(table):
        raise DomainException(f'cannot draw {k} distinct of {len(table)} leaves')
    probs = table.probs
    expected = [1.0]
    for j in range(1, k):
        for ordered in itertools.permutations(range(len(table)), j):
            mass = math.fsum(probs[i] for i in ordered)
            if mass < 1.0:
                expected.append(exact_swor_prob(table, ordered) / (1.0 - mass))
    return math.fsum(expected)
