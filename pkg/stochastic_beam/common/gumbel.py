"""Gumbel perturbations over explicit categorical distributions"""
import math

from typing import List, NamedTuple, Sequence

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF


class PerturbedKey(NamedTuple):
    """Category with its log-probability and perturbed log-probability."""
    index: int
    phi: float
    key: float


def sample_gumbel(stream: RandomStream, phi: float) -> float:
    """Draw one Gumbel(phi) variate as phi - log(-log U).

    A uniform is consumed even when phi is -inf, in which case -inf is returned.
    """
    uniform = stream.uniform()
    if phi == NEG_INF:
        return NEG_INF
    return phi - math.log(-math.log(uniform))


def sample_gumbels(stream: RandomStream, phis: Sequence[float]) -> List[float]:
    """One perturbation pass: a Gumbel(phi_i) for every category, in index order."""
    return [sample_gumbel(stream, phi) for phi in phis]


def argtop_k(values: Sequence[float], k: int) -> List[int]:
    """Indices of the k largest values, by decreasing value, ties to the smaller index.

    Raises:
        DomainException
    """
    if k < 1 or k > len(values):
        raise DomainException(f'argtop_k needs 1 <= k <= {len(values)}, got {k}')
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    return order[:k]


def perturb(phis: Sequence[float], stream: RandomStream) -> List[PerturbedKey]:
    """Perturbed keys for every category."""
    return [
        PerturbedKey(index, phi, key)
        for index, (phi, key) in enumerate(zip(phis, sample_gumbels(stream, phis)))
    ]


def gumbel_top_k(phis: Sequence[float], k: int, stream: RandomStream) -> List[int]:
    """Ordered sample of k categories without replacement (Gumbel-Top-k trick).

    Raises:
        DomainException: fewer than k categories with finite phi
    """
    finite = sum(1 for phi in phis if phi != NEG_INF)
    if k < 1 or k > finite:
        raise DomainException(f'cannot draw {k} distinct categories out of {finite} with non-zero probability')
    return argtop_k(sample_gumbels(stream, phis), k)


def gumbel_max(phis: Sequence[float], stream: RandomStream) -> int:
    """Sample a category index from softmax(phis) with the Gumbel-Max trick.

    Raises:
        DomainException: every phi is -inf
    """
    if all(phi == NEG_INF for phi in phis):
        raise DomainException('gumbel_max needs at least one finite log-probability')
    return gumbel_top_k(phis, 1, stream)[0]
