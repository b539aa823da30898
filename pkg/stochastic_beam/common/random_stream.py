"""Seeded uniform stream"""
from typing import List

import numpy as np

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.settings import Settings


_MANTISSA: int = 2 ** 52


class RandomStream:
    """Deterministic source of uniforms strictly inside (0, 1).

    Uniforms are produced in blocks from a pinned numpy bit generator (PCG64) and handed
    out one at a time, so the sequence depends only on the seed (and substream index).
    A stream is owned by a single search; concurrent work derives substreams.

    Attributes:
        seed: 64-bit seed
        index: Substream index, None for the master stream
        position: Number of uniforms handed out so far
    """

    def __init__(self, seed: int, index: int = None) -> None:
        if seed < 0 or seed >= 2 ** 64:
            raise DomainException(f'seed must be a 64-bit non-negative integer, got {seed}')
        self.seed: int = int(seed)
        self.index = index
        if index is None:
            sequence = np.random.SeedSequence(self.seed)
        else:
            sequence = np.random.SeedSequence(self.seed, spawn_key=(int(index),))
        self._generator = np.random.Generator(np.random.PCG64(sequence))
        self._buffer: List[float] = []
        self._cursor: int = 0
        self.position: int = 0

    @classmethod
    def substream(cls, seed: int, index: int) -> 'RandomStream':
        """Independent stream for task `index` of a run seeded with `seed`."""
        return cls(seed, index)

    @property
    def generator_name(self) -> str:
        return Settings.GENERATOR

    def _refill(self) -> None:
        block = self._generator.integers(0, _MANTISSA, size=Settings.BUFFER_SIZE, dtype=np.int64)
        self._buffer = ((block.astype(np.float64) + 0.5) / _MANTISSA).tolist()
        self._cursor = 0

    def uniform(self) -> float:
        """Next uniform in (0, 1)."""
        if self._cursor >= len(self._buffer):
            self._refill()
        value = self._buffer[self._cursor]
        self._cursor += 1
        self.position += 1
        return value

    def uniforms(self, count: int) -> List[float]:
        """Next `count` uniforms, in stream order."""
        return [self.uniform() for _ in range(count)]
