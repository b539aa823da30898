"""Baselines for sampling sequences: ancestral, rejection and naive stepwise sampling"""
from typing import List, Set, Tuple

from stochastic_beam.common.exceptions.budget import BudgetException
from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.gumbel import argtop_k, gumbel_max, perturb
from stochastic_beam.common.models.beam_entry import BeamEntry, SworSample
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.search.beam_search import expand, root_entry
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq


def _ancestral(model: SequenceModel, stream: RandomStream) -> Tuple[BeamEntry, int]:
    seq: TokenSeq = ()
    phi = 0.0
    evaluations = 0
    while not model.is_complete(seq):
        log_probs = model.step(seq)
        evaluations += 1
        token = gumbel_max(log_probs, stream)
        phi += log_probs[token]
        seq = seq + (token,)
    return BeamEntry(seq, phi, phi), evaluations


def ancestral_sample(model: SequenceModel, stream: RandomStream) -> BeamEntry:
    """Draw one sequence token by token from the step distributions (with replacement)."""
    return _ancestral(model, stream)[0]


def rejection_swor(model: SequenceModel, k: int, stream: RandomStream, max_draws: int) -> SworSample:
    """Repeat ancestral sampling until k distinct sequences are found.

    Entries are in first-appearance order; `evaluations` includes the step calls of rejected
    duplicates and `draws` counts every ancestral draw.

    Raises:
        DomainException: k < 1
        BudgetException: `max_draws` reached first, partial sample attached
    """
    if k < 1:
        raise DomainException(f'sample size must be at least 1, got {k}')
    seen: Set[TokenSeq] = set()
    entries: List[BeamEntry] = []
    evaluations = draws = 0
    while len(entries) < k:
        if draws >= max_draws:
            raise BudgetException(
                f'found {len(entries)} of {k} distinct sequences in {max_draws} draws',
                partial=SworSample(entries, None, evaluations, False, draws)
            )
        entry, cost = _ancestral(model, stream)
        draws += 1
        evaluations += cost
        if entry.seq not in seen:
            seen.add(entry.seq)
            entries.append(entry)
    return SworSample(entries, None, evaluations, False, draws)


def naive_stepwise_swor(model: SequenceModel, k: int, stream: RandomStream) -> SworSample:
    """Replace the top-k of beam search by sampling k expansions without replacement per level.

    This does not sample complete sequences without replacement: a partial sequence kept at
    one level commits to it, so the result is biased. Entries come in the order of the last
    draw, with the perturbed keys of that draw.

    Raises:
        DomainException: k < 1
    """
    if k < 1:
        raise DomainException(f'sample size must be at least 1, got {k}')
    beam = [root_entry()]
    evaluations = 0
    while not all(model.is_complete(entry.seq) for entry in beam):
        expansions, spent = expand(model, beam)
        evaluations += spent
        perturbed = perturb([entry.phi for entry in expansions], stream)
        chosen = argtop_k([item.key for item in perturbed], min(k, len(expansions)))
        beam = [BeamEntry(expansions[i].seq, expansions[i].phi, perturbed[i].key) for i in chosen]
    return SworSample(beam, None, evaluations, len(beam) < k)


def ancestral_samples(model: SequenceModel, k: int, stream: RandomStream) -> SworSample:
    """k independent ancestral samples, duplicates kept, in draw order."""
    if k < 1:
        raise DomainException(f'sample size must be at least 1, got {k}')
    entries: List[BeamEntry] = []
    evaluations = 0
    for _ in range(k):
        entry, cost = _ancestral(model, stream)
        entries.append(entry)
        evaluations += cost
    return SworSample(entries, None, evaluations, False, k)
