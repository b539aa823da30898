"""Deterministic beam search"""
from typing import List, Tuple

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.models.beam_entry import BeamEntry, SworSample
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.seqmodels.abstract_model import SequenceModel


def root_entry() -> BeamEntry:
    """Empty sequence with log-probability and key 0."""
    return BeamEntry((), 0.0, 0.0)


def expand(model: SequenceModel, beam: List[BeamEntry]) -> Tuple[List[BeamEntry], int]:
    """All one-token extensions of the beam scored by log-probability.

    Complete entries are carried over unchanged, zero-probability children are dropped.
    Returns the expansions in beam order, children in token order, and the number of
    model evaluations spent.
    """
    expansions: List[BeamEntry] = []
    evaluations = 0
    for entry in beam:
        if model.is_complete(entry.seq):
            expansions.append(entry)
            continue
        log_probs = model.step(entry.seq)
        evaluations += 1
        for token, log_prob in enumerate(log_probs):
            if log_prob == NEG_INF:
                continue
            phi = entry.phi + log_prob
            expansions.append(BeamEntry(entry.seq + (token,), phi, phi))
    return expansions, evaluations


def run_beam_search(model: SequenceModel, k: int) -> SworSample:
    """Beam search keeping the k most probable partial sequences at every level.

    Returns the complete sequences of the final beam by decreasing log-probability, ties
    broken by tokens, with the number of model evaluations spent.

    Raises:
        DomainException: k < 1
    """
    if k < 1:
        raise DomainException(f'beam width must be at least 1, got {k}')
    beam = [root_entry()]
    evaluations = 0
    while not all(model.is_complete(entry.seq) for entry in beam):
        expansions, spent = expand(model, beam)
        evaluations += spent
        beam = sorted(expansions, key=BeamEntry.sort_key)[:k]
    return SworSample(beam, None, evaluations)


def beam_search(model: SequenceModel, k: int) -> List[BeamEntry]:
    """Deterministic beam search; with k at least the number of complete sequences it returns
    every complete sequence of the model, most probable first."""
    return run_beam_search(model, k).entries
