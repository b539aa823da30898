"""Stochastic beam search.

Beam search over perturbed log-probabilities. The children keys of every expanded node are
drawn conditionally on their maximum being the parent key, which makes
the final beam an ordered sample without replacement over complete sequences.

The ordering does not depend on the root key, so plain sampling fixes it to 0. The estimator
weights compare keys against an absolute threshold and need the root key drawn as Gumbel(0),
the unconditional maximum over all complete sequences.
"""
from typing import Callable, List, Optional

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.gumbel import sample_gumbel
from stochastic_beam.common.logger import Logger
from stochastic_beam.common.models.beam_entry import BeamEntry, SworSample
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.common.truncated_gumbel import sample_children_conditional
from stochastic_beam.seqmodels.abstract_model import SequenceModel


ExpandObserver = Callable[[BeamEntry, List[float], List[float]], None]


def stochastic_beam_search(model: SequenceModel, k: int, stream: RandomStream, estimator: bool = False,
                           on_expand: Optional[ExpandObserver] = None,
                           root_key: Optional[float] = None) -> SworSample:
    """Draw k distinct complete sequences, ordered by decreasing perturbed log-probability.

    Uniforms are consumed entry by entry in beam order and, within an entry, one per token
    in token-id order.

    Args:
        model: Sequence model
        k: Beam width
        stream: Uniform source owned by this search
        estimator: Keep the top k-1 entries and report the k-th key as threshold kappa
        on_expand: Called with (parent entry, children phis, children keys) on every expansion
        root_key: Key of the empty sequence. Defaults to 0 in plain mode and to a Gumbel(0) draw,
            taken from the stream before any other uniform, in estimator mode

    Raises:
        DomainException: k < 1, or k < 2 in estimator mode
    """
    if k < 1 or (estimator and k < 2):
        raise DomainException(f'beam width must be at least {2 if estimator else 1}, got {k}')
    if root_key is None:
        root_key = sample_gumbel(stream, 0.0) if estimator else 0.0
    beam = [BeamEntry((), 0.0, root_key)]
    evaluations = 0
    while not all(model.is_complete(entry.seq) for entry in beam):
        expansions: List[BeamEntry] = []
        for entry in beam:
            if model.is_complete(entry.seq):
                expansions.append(entry)
                continue
            log_probs = model.step(entry.seq)
            evaluations += 1
            child_phis = [entry.phi + log_prob for log_prob in log_probs]
            child_keys = sample_children_conditional(stream, child_phis, entry.key)
            if on_expand is not None:
                on_expand(entry, child_phis, child_keys)
            for token, (phi, key) in enumerate(zip(child_phis, child_keys)):
                if phi != NEG_INF:
                    expansions.append(BeamEntry(entry.seq + (token,), phi, key))
        beam = sorted(expansions, key=BeamEntry.sort_key)[:k]

    exhausted = len(beam) < k
    if exhausted:
        Logger(__name__).debug('model has only %d complete sequences, %d requested', len(beam), k)
    if not estimator:
        return SworSample(beam, None, evaluations, exhausted)
    if exhausted:
        return SworSample(beam, NEG_INF, evaluations, exhausted)
    return SworSample(beam[:k - 1], beam[k - 1].key, evaluations, exhausted)
