""" Beam entry and sample models """
from typing import Any, Dict, List, Optional

from stochastic_beam.seqmodels.abstract_model import TokenSeq


class BeamEntry:
    """Partial or complete sequence on a beam.

    Attributes:
        seq: Tokens of the sequence
        phi: Total log-probability of the sequence
        key: Perturbed log-probability, equal to phi for deterministic beam search
    """
    __slots__ = ('seq', 'phi', 'key')

    def __init__(self, seq: TokenSeq, phi: float, key: float) -> None:
        self.seq: TokenSeq = seq
        self.phi: float = phi
        self.key: float = key

    @property
    def noise(self) -> float:
        """Gumbel(0) noise G_S of the perturbation, key - phi."""
        return self.key - self.phi

    def sort_key(self) -> tuple:
        """Ordering used for every top-k selection: key descending, then tokens ascending."""
        return -self.key, self.seq

    def json_serialize(self) -> Dict[str, Any]:
        return {'seq': list(self.seq), 'phi': self.phi, 'key': self.key}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BeamEntry):
            return NotImplemented
        return (self.seq, self.phi, self.key) == (other.seq, other.phi, other.key)

    def __repr__(self) -> str:
        return f'BeamEntry(seq={self.seq}, phi={self.phi:.6g}, key={self.key:.6g})'


class SworSample:
    """Ordered sample without replacement of complete sequences.

    Attributes:
        entries: Complete sequences by decreasing key
        kappa: Empirical threshold, None when the sampler does not define one
        evaluations: Number of model step calls spent
        exhausted: True when the model had fewer complete sequences than requested
        draws: Number of complete sequences drawn, duplicates included (rejection sampling)
    """

    def __init__(self, entries: List[BeamEntry], kappa: Optional[float] = None,
                 evaluations: int = 0, exhausted: bool = False, draws: int = 0) -> None:
        self.entries: List[BeamEntry] = entries
        self.kappa: Optional[float] = kappa
        self.evaluations: int = evaluations
        self.exhausted: bool = exhausted
        self.draws: int = draws

    @property
    def sequences(self) -> List[TokenSeq]:
        return [entry.seq for entry in self.entries]

    @property
    def keys(self) -> List[float]:
        return [entry.key for entry in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def json_serialize(self) -> Dict[str, Any]:
        return {
            'entries': [entry.json_serialize() for entry in self.entries],
            'kappa': self.kappa,
            'evaluations': self.evaluations,
            'exhausted': self.exhausted,
            'draws': self.draws,
        }
