"""Stable key shifting against extended precision, and where the direct formula overflows"""
import math

from typing import List, Sequence, Tuple

import mpmath

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.truncated_gumbel import shift_to_max
from stochastic_beam.suites.base_suite import BaseSuite


def naive_shift(keys: Sequence[float], t_max: float) -> List[float]:
    """-log(exp(-T) - exp(-Z) + exp(-G)) evaluated as written."""
    z = max(keys)
    return [-math.log(math.exp(-t_max) - math.exp(-z) + math.exp(-key)) for key in keys]


def reference_shift(keys: Sequence[float], t_max: float, digits: int = 50) -> List[float]:
    """The same formula in extended precision."""
    with mpmath.workdps(digits):
        z = mpmath.mpf(max(keys))
        t = mpmath.mpf(t_max)
        return [float(-mpmath.log(mpmath.exp(-t) - mpmath.exp(-z) + mpmath.exp(-mpmath.mpf(key)))) for key in keys]


def random_case(stream: RandomStream, low: float, high: float) -> Tuple[List[float], float]:
    count = 2 + int(stream.uniform() * 4)
    keys = [low + (high - low) * u for u in stream.uniforms(count)]
    return keys, low + (high - low) * stream.uniform()


class Suite(BaseSuite):
    name = 'stability-shift'

    def run(self) -> List[Criterion]:
        stream = RandomStream(self.config.seed)
        error = 0.0
        for _ in range(self.size(10000)):
            keys, t_max = random_case(stream, -30.0, 30.0)
            for stable, exact in zip(shift_to_max(keys, t_max), reference_shift(keys, t_max)):
                error = max(error, abs(stable - exact))

        cases = self.size(1000)
        non_finite = naive_failures = 0
        for _ in range(cases):
            keys, t_max = random_case(stream, -760.0, -700.0)
            if not all(math.isfinite(value) for value in shift_to_max(keys, t_max)):
                non_finite += 1
            try:
                if not all(math.isfinite(value) for value in naive_shift(keys, t_max)):
                    naive_failures += 1
            except (OverflowError, ValueError):
                naive_failures += 1
        return [
            self.criterion('max |shift_to_max - extended precision|, magnitudes <= 30', error, '<', 1e-9),
            self.criterion('non-finite shift_to_max outputs, magnitudes ~700', non_finite, '==', 0),
            self.criterion('fraction of magnitude ~700 cases where the direct formula fails',
                           naive_failures / cases, '>', 0.0),
        ]
