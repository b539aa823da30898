"""Log-domain scalar primitives.

All probability arithmetic of the package happens on natural-log values. ``-inf`` stands for
log(0) and propagates; NaN is never returned by a public function.
"""
import math

from typing import Iterable, List

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.settings import Settings


NEG_INF: float = float('-inf')
POS_INF: float = float('inf')


def safe_log(value: float) -> float:
    """Natural logarithm taking zero to -inf."""
    if value < 0.0:
        raise DomainException(f'log of negative number {value}')
    if value == 0.0:
        return NEG_INF
    return math.log(value)


def log1mexp(a: float) -> float:
    """Compute log(1 - exp(a)) for a <= 0.

    Raises:
        DomainException
    """
    if math.isnan(a) or a > 0.0:
        raise DomainException(f'log1mexp is defined for a <= 0, got {a}')
    if a == 0.0:
        return NEG_INF
    if a > Settings.LOG1MEXP_BRANCH:
        return math.log(-math.expm1(a))
    return math.log1p(-math.exp(a))


def log1pexp(a: float) -> float:
    """Compute log(1 + exp(a)) without overflow."""
    if math.isnan(a):
        raise DomainException('log1pexp of NaN')
    if a < Settings.LOG1PEXP_BRANCH:
        return math.log1p(math.exp(a))
    return a + math.exp(-a)


def logsumexp(values: Iterable[float]) -> float:
    """Max-shifted log of a sum of exponentials.

    Raises:
        DomainException: empty input
    """
    items: List[float] = list(values)
    if not items:
        raise DomainException('logsumexp of an empty list')
    maximum = max(items)
    if math.isnan(maximum):
        raise DomainException('logsumexp of NaN')
    if math.isinf(maximum):
        return maximum
    return maximum + math.log(math.fsum(math.exp(x - maximum) for x in items))


def log_softmax(values: Iterable[float], temperature: float = 1.0) -> List[float]:
    """Normalize unnormalized log-values, optionally divided by a temperature first."""
    if temperature <= 0.0:
        raise DomainException(f'temperature must be positive, got {temperature}')
    scaled = [x / temperature for x in values]
    norm = logsumexp(scaled)
    if math.isinf(norm):
        raise DomainException('cannot normalize a vector of -inf')
    return [x - norm for x in scaled]
