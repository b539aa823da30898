import math

from collections import Counter
from functools import partial

import mpmath
import pytest

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.oracle import ks_distance, tv_distance
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.common.truncated_gumbel import (
    TruncatedGumbelParams, sample_children_conditional, sample_children_three_step, shift_to_max, trunc_cdf,
    trunc_inv_cdf
)

mpmath.mp.dps = 50


def reference_shift(key: float, z: float, t_max: float) -> float:
    """-log(exp(-T) - exp(-Z) + exp(-G)) in extended precision."""
    key, z, t_max = mpmath.mpf(key), mpmath.mpf(z), mpmath.mpf(t_max)
    return float(-mpmath.log(mpmath.exp(-t_max) - mpmath.exp(-z) + mpmath.exp(-key)))


class TestTruncCdf:
    params = TruncatedGumbelParams(0.3, 1.2)

    def test_limits(self):
        assert trunc_cdf(self.params, 1.2) == 1.0
        assert trunc_cdf(self.params, 5.0) == 1.0
        assert trunc_cdf(self.params, NEG_INF) == 0.0

    def test_increasing(self):
        points = [-3.0, -1.0, 0.0, 0.5, 1.0, 1.19]
        values = [trunc_cdf(self.params, g) for g in points]
        assert values == sorted(values)

    def test_untruncated_is_gumbel(self):
        params = TruncatedGumbelParams(0.3)
        assert trunc_cdf(params, 1.0) == pytest.approx(math.exp(-math.exp(0.3 - 1.0)), rel=1e-15)


class TestTruncInvCdf:
    params = TruncatedGumbelParams(-0.4, 0.9)

    def test_one_maps_to_truncation_point(self):
        assert trunc_inv_cdf(self.params, 1.0) == 0.9

    @pytest.mark.parametrize('g', [-6.0, -1.0, 0.0, 0.5, 0.89])
    def test_inverts_cdf(self, g):
        assert trunc_inv_cdf(self.params, trunc_cdf(self.params, g)) == pytest.approx(g, abs=1e-9)

    def test_untruncated_is_gumbel_quantile(self):
        params = TruncatedGumbelParams(2.0)
        assert trunc_inv_cdf(params, 0.3) == pytest.approx(2.0 - math.log(-math.log(0.3)), rel=1e-15)

    @pytest.mark.parametrize('u', [0.0, 1.5, -0.1])
    def test_outside_unit_interval_raises(self, u):
        with pytest.raises(DomainException):
            trunc_inv_cdf(self.params, u)

    def test_never_exceeds_truncation_point(self, stream):
        assert all(trunc_inv_cdf(self.params, u) <= 0.9 for u in stream.uniforms(1000))


class TestShiftToMax:
    def test_maximum_is_exactly_target(self):
        shifted = shift_to_max([0.3, -1.2, 2.7, 0.0], -0.25)
        assert max(shifted) == -0.25
        assert shifted[2] == -0.25

    def test_keys_stay_below_target_and_keep_order(self):
        keys = [0.3, -1.2, 2.7, 0.0, -40.0]
        shifted = shift_to_max(keys, 1.0)
        assert all(value <= 1.0 for value in shifted)
        assert sorted(range(5), key=lambda i: keys[i]) == sorted(range(5), key=lambda i: shifted[i])

    @pytest.mark.parametrize('keys,t_max', [
        ([0.3, -1.2, 2.7, 0.0], -0.25),
        ([-30.0, -29.0, 10.0], -12.0),
        ([5.0, 4.999, NEG_INF], 3.0),
    ])
    def test_idempotent(self, keys, t_max):
        once = shift_to_max(keys, t_max)
        twice = shift_to_max(once, t_max)
        assert twice[once.index(t_max)] == t_max
        assert twice == pytest.approx(once, rel=1e-12, abs=1e-12)

    def test_negative_infinity_stays(self):
        assert shift_to_max([NEG_INF, 0.5], 0.0) == [NEG_INF, 0.0]

    @pytest.mark.parametrize('keys,t_max', [
        ([0.3, -1.2, 2.7], -0.25),
        ([1e-3, 2e-3], 5.0),
        ([-30.0, -29.0, 10.0], -12.0),
        ([150.0, 149.999], -150.0),
    ])
    def test_matches_extended_precision(self, keys, t_max):
        z = max(keys)
        for key, value in zip(keys, shift_to_max(keys, t_max)):
            assert value == pytest.approx(reference_shift(key, z, t_max), rel=1e-10, abs=1e-12)

    def test_large_magnitudes_stay_finite(self):
        shifted = shift_to_max([-500.0, 400.0, 399.0], -600.0)
        assert all(math.isfinite(value) for value in shifted)
        assert shifted[1] == -600.0

    def test_empty_raises(self):
        with pytest.raises(DomainException):
            shift_to_max([], 0.0)

    def test_all_negative_infinity_raises(self):
        with pytest.raises(DomainException):
            shift_to_max([NEG_INF, NEG_INF], 0.0)

    def test_infinite_target_raises(self):
        with pytest.raises(DomainException):
            shift_to_max([0.0], float('inf'))


class TestChildrenSampling:
    phis = [math.log(0.5), math.log(0.3), math.log(0.2)]
    parent_key = 1.3

    def test_maximum_equals_parent_key(self, stream):
        for _ in range(100):
            keys = sample_children_conditional(stream, self.phis, self.parent_key)
            assert max(keys) == self.parent_key

    def test_one_uniform_per_child(self, stream):
        sample_children_conditional(stream, self.phis + [NEG_INF], self.parent_key)
        assert stream.position == 4

    def test_zero_probability_child_stays_negative_infinity(self, stream):
        keys = sample_children_conditional(stream, [0.0, NEG_INF], -2.0)
        assert keys == [-2.0, NEG_INF]

    def test_all_zero_children_raise(self, stream):
        with pytest.raises(DomainException):
            sample_children_conditional(stream, [NEG_INF, NEG_INF], 0.0)

    def test_argmax_follows_softmax(self, stream):
        counts = Counter()
        for _ in range(20000):
            keys = sample_children_conditional(stream, self.phis, self.parent_key)
            counts[keys.index(self.parent_key)] += 1
        assert tv_distance(counts, {0: 0.5, 1: 0.3, 2: 0.2}) < 0.02

    def test_constructions_agree(self):
        """Shifting independent Gumbels and the argmax-first construction give the same marginals."""
        shifted, three_step = RandomStream(31), RandomStream(32)
        first, second = [], []
        for _ in range(20000):
            keys = sample_children_conditional(shifted, self.phis, self.parent_key)
            if keys[2] < self.parent_key:
                first.append(keys[2])
            keys = sample_children_three_step(three_step, self.phis, self.parent_key)
            if keys[2] < self.parent_key:
                second.append(keys[2])
        cdf = partial(trunc_cdf, TruncatedGumbelParams(self.phis[2], self.parent_key))
        assert ks_distance(first, cdf) < 0.03
        assert ks_distance(second, cdf) < 0.03
