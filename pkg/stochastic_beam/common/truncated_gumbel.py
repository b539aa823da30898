"""Truncated Gumbel distribution and conditional sampling of children keys.

Top-down sampling needs the keys of a node's children conditioned on their maximum being
equal to the parent key. The production route draws independent Gumbels and moves them with
the monotone transform of :func:`shift_to_max`; :func:`sample_children_three_step` is the
argmax-first construction, kept to cross-check the distribution.
"""
import math

from typing import List, NamedTuple, Sequence

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.gumbel import gumbel_max, sample_gumbels
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF, POS_INF, log1mexp, log1pexp, logsumexp


class TruncatedGumbelParams(NamedTuple):
    """Gumbel with location `phi` conditioned on being at most `t_max`."""
    phi: float
    t_max: float = POS_INF


def trunc_cdf(params: TruncatedGumbelParams, g: float) -> float:
    """CDF exp(exp(phi - T) - exp(phi - min(g, T)))."""
    if g >= params.t_max:
        return 1.0
    if g == NEG_INF:
        return 0.0
    return math.exp(math.exp(params.phi - params.t_max) - math.exp(params.phi - g))


def trunc_inv_cdf(params: TruncatedGumbelParams, u: float) -> float:
    """Inverse CDF phi - log(exp(phi - T) - log u).

    Raises:
        DomainException: u outside (0, 1]
    """
    if not 0.0 < u <= 1.0:
        raise DomainException(f'inverse CDF needs 0 < u <= 1, got {u}')
    if u == 1.0:
        return params.t_max
    return params.phi - logsumexp([params.phi - params.t_max, math.log(-math.log(u))])


def shift_to_max(keys: Sequence[float], t_max: float) -> List[float]:
    """Move a set of keys so that their maximum becomes exactly `t_max`.

    Computes -log(exp(-T) - exp(-Z) + exp(-G_i)) with Z = max(keys) through
    v_i = T - G_i + log1mexp(G_i - Z) and T - max(0, v_i) - log1pexp(-|v_i|).
    The transform is increasing in every key, keys equal to Z map to T exactly and
    -inf keys stay -inf.
    """
    if not keys:
        raise DomainException('shift_to_max needs at least one key')
    if math.isinf(t_max) or math.isnan(t_max):
        raise DomainException(f'shift_to_max needs a finite maximum, got {t_max}')
    z = max(keys)
    if z == NEG_INF:
        raise DomainException('shift_to_max needs at least one finite key')
    shifted: List[float] = []
    for key in keys:
        if key == z:
            shifted.append(t_max)
        elif key == NEG_INF:
            shifted.append(NEG_INF)
        else:
            v = t_max - key + log1mexp(key - z)
            shifted.append(t_max - max(0.0, v) - log1pexp(-abs(v)))
    return shifted


def sample_children_conditional(stream: RandomStream, child_phis: Sequence[float], parent_key: float) -> List[float]:
    """Children keys distributed as independent Gumbel(phi_i) conditioned on max = parent_key.

    One uniform is consumed per child, -inf children included.

    Raises:
        DomainException: every child has probability zero
    """
    if all(phi == NEG_INF for phi in child_phis):
        raise DomainException('cannot expand a node whose children all have probability zero')
    return shift_to_max(sample_gumbels(stream, child_phis), parent_key)


def sample_children_three_step(stream: RandomStream, child_phis: Sequence[float], parent_key: float) -> List[float]:
    """Same law as :func:`sample_children_conditional`, built argmax first.

    The argmax is drawn with the Gumbel-Max trick and set to the parent key, every other
    child is drawn from its Gumbel truncated at the parent key by inverse CDF.
    """
    winner = gumbel_max(child_phis, stream)
    keys: List[float] = []
    for index, phi in enumerate(child_phis):
        uniform = stream.uniform()
        if index == winner:
            keys.append(parent_key)
        elif phi == NEG_INF:
            keys.append(NEG_INF)
        else:
            keys.append(trunc_inv_cdf(TruncatedGumbelParams(phi, parent_key), uniform))
    return keys
