import math

import pytest

from stochastic_beam.common.estimators import ConstantFunctional, IndicatorFunctional
from stochastic_beam.common.exceptions.budget import BudgetException
from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.gumbel import sample_gumbels
from stochastic_beam.common.oracle import (
    LeafTable, bottom_up_keys, chi_square_pvalue, chi_square_stat, enumerate_leaves, exact_expectation,
    exact_swor_prob, expected_rejection_draws, ks_distance, node_log_probs, swor_table, tv_distance
)


def gumbel_cdf(phi: float, g: float) -> float:
    return math.exp(-math.exp(phi - g))


class TestEnumerateLeaves:
    def test_sorted_and_normalized(self, example_table):
        assert example_table.sequences == sorted(example_table.sequences)
        assert math.fsum(example_table.probs) == pytest.approx(1.0, abs=1e-12)

    def test_budget(self, example):
        with pytest.raises(BudgetException) as info:
            enumerate_leaves(example, max_total=5)
        assert len(info.value.partial) == 5

    def test_duplicate_leaves_raise(self):
        with pytest.raises(DomainException):
            LeafTable([((0,), -1.0), ((0,), -1.0)])

    def test_unknown_sequence_raises(self, example_table):
        with pytest.raises(DomainException):
            example_table.index_of((2, 2, 2))


class TestExactSworProb:
    def test_single_draw_is_probability(self, example_table):
        assert exact_swor_prob(example_table, [example_table.index_of((0, 1, 1))]) == pytest.approx(0.25, rel=1e-12)

    def test_ordered_pair(self, example_table):
        ordered = [example_table.index_of((0, 1, 1)), example_table.index_of((1, 0, 0))]
        assert exact_swor_prob(example_table, ordered) == pytest.approx(1 / 15, rel=1e-12)

    def test_uniform_pair(self, two_leaf):
        assert exact_swor_prob(enumerate_leaves(two_leaf(0.5)), [0, 1]) == pytest.approx(0.5)

    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_ordered_samples_sum_to_one(self, example_table, k):
        assert math.fsum(swor_table(example_table, k).values()) == pytest.approx(1.0, abs=1e-12)

    def test_repeated_leaf_raises(self, example_table):
        with pytest.raises(DomainException):
            exact_swor_prob(example_table, [1, 1])

    def test_unknown_leaf_raises(self, example_table):
        with pytest.raises(DomainException):
            exact_swor_prob(example_table, [8])

    def test_too_many_draws_raise(self, example_table):
        with pytest.raises(DomainException):
            swor_table(example_table, 9)


class TestExactExpectation:
    def test_constant(self, example_table):
        assert exact_expectation(ConstantFunctional(1.0), example_table) == pytest.approx(1.0, abs=1e-12)

    def test_indicator(self, example_table):
        assert exact_expectation(IndicatorFunctional((0, 1, 1)), example_table) == pytest.approx(0.25, rel=1e-12)


class TestDistances:
    def test_tv_of_matching_frequencies(self):
        assert tv_distance({'a': 1, 'b': 1}, {'a': 0.5, 'b': 0.5}) == 0.0

    def test_tv(self):
        assert tv_distance({'a': 3, 'b': 1}, {'a': 0.5, 'b': 0.5}) == pytest.approx(0.25)

    def test_tv_of_disjoint_support(self):
        assert tv_distance({'a': 5}, {'a': 0.0, 'b': 1.0}) == pytest.approx(1.0)

    def test_tv_unknown_outcome_raises(self):
        with pytest.raises(DomainException):
            tv_distance({'c': 1}, {'a': 0.5, 'b': 0.5})

    def test_tv_without_observations_raises(self):
        with pytest.raises(DomainException):
            tv_distance({}, {'a': 1.0})

    def test_chi_square(self):
        assert chi_square_stat({'a': 60, 'b': 40}, {'a': 0.5, 'b': 0.5}) == (pytest.approx(4.0), 1)

    def test_chi_square_of_proportional_counts(self):
        statistic, dof = chi_square_stat({'a': 30, 'b': 20, 'c': 50}, {'a': 0.3, 'b': 0.2, 'c': 0.5})
        assert statistic == pytest.approx(0.0, abs=1e-12)
        assert dof == 2

    def test_chi_square_single_outcome(self):
        assert chi_square_stat({'a': 10}, {'a': 1.0}) == (0.0, 0)
        assert chi_square_pvalue(0.0, 0) == 1.0

    def test_chi_square_zero_cell_raises(self):
        with pytest.raises(DomainException):
            chi_square_stat({'a': 10}, {'a': 1.0, 'b': 0.0})

    def test_chi_square_pvalue(self):
        assert chi_square_pvalue(4.0, 1) == pytest.approx(0.0455003, rel=1e-5)

    def test_ks_distance(self, stream):
        samples = sample_gumbels(stream, [0.5] * 5000)
        assert ks_distance(samples, lambda g: gumbel_cdf(0.5, g)) < 0.03
        assert ks_distance(samples, lambda g: gumbel_cdf(1.5, g)) > 0.2

    def test_ks_without_samples_raises(self):
        with pytest.raises(DomainException):
            ks_distance([], lambda g: 0.5)


class TestBottomUpKeys:
    def test_node_log_probs(self, example_table):
        nodes = node_log_probs(example_table)
        assert nodes[()] == pytest.approx(0.0, abs=1e-12)
        assert nodes[(0,)] == pytest.approx(math.log(0.6), rel=1e-12)
        assert nodes[(1, 0)] == pytest.approx(math.log(0.3), rel=1e-12)

    def test_parent_key_is_max_of_children(self, example_table, stream):
        keys = bottom_up_keys(example_table, stream)
        for node, key in keys.items():
            children = [keys[node + (token,)] for token in (0, 1) if node + (token,) in keys]
            if children:
                assert key == max(children)

    def test_node_key_is_gumbel_of_node_probability(self, example_table, stream):
        """The maximum of independent Gumbels below a node is a Gumbel of the node's log-probability."""
        samples = [bottom_up_keys(example_table, stream)[(0,)] for _ in range(5000)]
        assert ks_distance(samples, lambda g: gumbel_cdf(math.log(0.6), g)) < 0.03


class TestExpectedRejectionDraws:
    def test_skewed_pair(self, two_leaf):
        table = enumerate_leaves(two_leaf(0.99))
        assert expected_rejection_draws(table, 2) == pytest.approx(1 + 0.99 / 0.01 + 0.01 / 0.99, rel=1e-9)
        assert expected_rejection_draws(table, 2) == pytest.approx(100.0101, abs=1e-4)

    def test_uniform_pair(self, two_leaf):
        assert expected_rejection_draws(enumerate_leaves(two_leaf(0.5)), 2) == pytest.approx(3.0)

    def test_single_draw(self, example_table):
        assert expected_rejection_draws(example_table, 1) == 1.0

    def test_too_many_raise(self, example_table):
        with pytest.raises(DomainException):
            expected_rejection_draws(example_table, 9)
