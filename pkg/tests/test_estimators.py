import math

import mpmath
import numpy as np
import pytest

from stochastic_beam.common.estimators import (
    BleuFunctional, ConstantFunctional, EntropyFunctional, IndicatorFunctional, beam_width, bs_bound,
    entropy_functional, estimate_all, log_importance_weight, log_q, log_weights, mc_estimate, normalized_estimate,
    priority_estimate, summarize, weight_sum
)
from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.exceptions.estimator import EstimatorException
from stochastic_beam.common.models.beam_entry import BeamEntry, SworSample
from stochastic_beam.common.models.estimate_report import EstimateReport
from stochastic_beam.common.oracle import enumerate_leaves, exact_expectation
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.search.baselines import ancestral_sample
from stochastic_beam.search.beam_search import beam_search
from stochastic_beam.search.stochastic_beam_search import stochastic_beam_search
from stochastic_beam.seqmodels.tree import Edge, ExplicitTreeModel

mpmath.mp.dps = 60

LOG_Q_AT_ZERO = math.log(1.0 - math.exp(-1.0))


def reference_weight(phi: float, kappa: float) -> float:
    z = mpmath.exp(mpmath.mpf(phi) - mpmath.mpf(kappa))
    return float(mpmath.mpf(phi) - mpmath.log(-mpmath.expm1(-z)))


def uniform_tree():
    return ExplicitTreeModel([
        Edge(0, 1, 0, 0.5), Edge(0, 2, 1, 0.5),
        Edge(1, 3, 0, 0.5), Edge(1, 4, 1, 0.5),
        Edge(2, 5, 0, 0.5), Edge(2, 6, 1, 0.5),
    ])


class TestFunctionals:
    def test_constant(self):
        assert ConstantFunctional(2.5)((0, 1)) == 2.5

    def test_indicator(self):
        f = IndicatorFunctional([0, 1, 1])
        assert f((0, 1, 1)) == 1.0
        assert f((0, 1, 0)) == 0.0

    def test_entropy_of_uniform_tree(self):
        model = uniform_tree()
        assert exact_expectation(entropy_functional(model), enumerate_leaves(model)) == pytest.approx(math.log(4))

    def test_entropy_of_deterministic_model(self, chain):
        assert exact_expectation(EntropyFunctional(chain), enumerate_leaves(chain)) == 0.0

    def test_entropy_of_example_tree(self, example, example_table):
        assert exact_expectation(EntropyFunctional(example), example_table) == pytest.approx(1.91721, abs=1e-5)

    def test_bleu_drops_eos(self):
        f = BleuFunctional((1, 2, 3, 4, 9), eos=9)
        assert f((1, 2, 3, 4, 9, 9)) == pytest.approx(1.0)

    def test_bleu_needs_reference(self):
        with pytest.raises(DomainException):
            BleuFunctional((9,), eos=9)


class TestMonteCarlo:
    def test_constant(self):
        assert mc_estimate(ConstantFunctional(3.0), [(0,), (1,)]) == 3.0

    def test_empty_raises(self):
        with pytest.raises(DomainException):
            mc_estimate(ConstantFunctional(1.0), [])

    def test_indicator_frequency(self, example, stream):
        samples = [ancestral_sample(example, stream).seq for _ in range(20000)]
        assert mc_estimate(IndicatorFunctional((0, 1, 1)), samples) == pytest.approx(0.25, abs=0.015)


class TestLogQ:
    def test_no_threshold(self):
        assert log_q(-3.0, NEG_INF) == 0.0

    def test_at_threshold(self):
        assert log_q(1.7, 1.7) == pytest.approx(LOG_Q_AT_ZERO, rel=1e-14)

    def test_zero_probability(self):
        assert log_q(NEG_INF, 0.0) == NEG_INF

    def test_far_above_threshold(self):
        assert log_q(800.0, 0.0) == 0.0

    @pytest.mark.parametrize('diff', [-40.0, -20.0, -10.5, -9.5, -3.0, 0.0, 2.0])
    def test_matches_extended_precision(self, diff):
        expected = float(mpmath.log(-mpmath.expm1(-mpmath.exp(mpmath.mpf(diff)))))
        assert log_q(diff, 0.0) == pytest.approx(expected, rel=1e-12)


class TestLogImportanceWeight:
    def test_no_threshold_gives_probability(self):
        assert log_importance_weight(-2.0, NEG_INF) == -2.0

    def test_at_threshold(self):
        assert log_importance_weight(0.5, 0.5) == pytest.approx(0.5 - LOG_Q_AT_ZERO, rel=1e-14)

    def test_far_below_threshold(self):
        """For phi << kappa the weight tends to the threshold itself."""
        phi, kappa = -30.0, 0.0
        z = math.exp(phi - kappa)
        assert log_importance_weight(phi, kappa) == pytest.approx(kappa + z / 2 - z * z / 24, rel=1e-15)

    def test_far_above_threshold(self):
        assert log_importance_weight(900.0, 0.0) == 900.0

    def test_zero_probability_raises(self):
        with pytest.raises(EstimatorException):
            log_importance_weight(NEG_INF, 0.0)

    @pytest.mark.parametrize('kappa', [-5.0, 0.0, 2.5])
    def test_matches_extended_precision(self, kappa):
        for diff in np.linspace(-40.0, 5.0, 91):
            phi = kappa + float(diff)
            expected = reference_weight(phi, kappa)
            assert log_importance_weight(phi, kappa) == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_continuous_at_series_cutoff(self):
        below = log_importance_weight(-10.0 - 1e-12, 0.0)
        above = log_importance_weight(-10.0 + 1e-12, 0.0)
        assert below == pytest.approx(above, rel=1e-10)


class TestPriorityEstimator:
    def test_requires_threshold(self):
        sample = SworSample([BeamEntry((0, 1, 1), math.log(0.25), 0.0)])
        with pytest.raises(EstimatorException):
            priority_estimate(ConstantFunctional(1.0), sample)

    def test_requires_entries(self):
        with pytest.raises(EstimatorException):
            log_weights(SworSample([], 0.0))

    def test_zero_function(self, example, stream):
        sample = stochastic_beam_search(example, 4, stream, estimator=True)
        assert priority_estimate(ConstantFunctional(0.0), sample) == 0.0

    def test_exact_when_model_is_exhausted(self, example, example_entropy, stream):
        sample = stochastic_beam_search(example, 9, stream, estimator=True)
        assert priority_estimate(EntropyFunctional(example), sample) == pytest.approx(example_entropy, abs=1e-9)
        assert weight_sum(sample) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize('kept', [1, 4])
    def test_unbiased(self, example, example_entropy, stream, kept):
        f = EntropyFunctional(example)
        estimates = np.array([
            priority_estimate(f, stochastic_beam_search(example, kept + 1, stream, estimator=True))
            for _ in range(10000)
        ])
        error = estimates.std(ddof=1) / math.sqrt(len(estimates))
        assert abs(estimates.mean() - example_entropy) < 4 * error

    def test_unbiased_weight_sum(self, example, stream):
        """W(S) estimates the total probability mass, 1."""
        sums = np.array([weight_sum(stochastic_beam_search(example, 3, stream, estimator=True)) for _ in range(10000)])
        error = sums.std(ddof=1) / math.sqrt(len(sums))
        assert abs(sums.mean() - 1.0) < 4 * error


class TestNormalizedEstimator:
    def test_constant_is_exact(self, example, stream):
        for _ in range(50):
            sample = stochastic_beam_search(example, 3, stream, estimator=True)
            assert normalized_estimate(ConstantFunctional(1.0), sample) == pytest.approx(1.0, abs=1e-15)

    def test_exact_when_model_is_exhausted(self, example, example_entropy, stream):
        sample = stochastic_beam_search(example, 12, stream, estimator=True)
        assert normalized_estimate(EntropyFunctional(example), sample) == pytest.approx(example_entropy, abs=1e-9)

    def test_lower_variance_than_priority(self, example, stream):
        f = EntropyFunctional(example)
        raw, normalized = [], []
        for _ in range(2000):
            sample = stochastic_beam_search(example, 5, stream, estimator=True)
            raw.append(priority_estimate(f, sample))
            normalized.append(normalized_estimate(f, sample))
        assert np.var(normalized) < np.var(raw)


class TestBeamSearchBound:
    def test_mass(self, example):
        beam = beam_search(example, 2)
        assert bs_bound(ConstantFunctional(1.0), beam) == pytest.approx(0.45, rel=1e-12)
        assert bs_bound(ConstantFunctional(1.0), beam, normalized=True) == pytest.approx(1.0, rel=1e-15)

    def test_full_beam_is_exact(self, example, example_entropy):
        beam = beam_search(example, 8)
        assert bs_bound(EntropyFunctional(example), beam) == pytest.approx(example_entropy, abs=1e-12)
        assert bs_bound(EntropyFunctional(example), beam, normalized=True) == pytest.approx(example_entropy, abs=1e-12)

    def test_increases_with_width(self, example):
        f = EntropyFunctional(example)
        bounds = [bs_bound(f, beam_search(example, k)) for k in range(1, 9)]
        assert bounds == sorted(bounds)

    def test_empty_beam_raises(self):
        with pytest.raises(DomainException):
            bs_bound(ConstantFunctional(1.0), [])


class TestEstimateAll:
    def test_reports_every_method(self, example, stream):
        reports = estimate_all(example, ConstantFunctional(1.0), EstimateReport.METHODS, 3, 7, stream, temperature=0.5)
        assert [report.method for report in reports] == EstimateReport.METHODS
        assert all(report.k == 3 and report.replicate == 7 and report.temperature == 0.5 for report in reports)
        by_method = {report.method: report for report in reports}
        assert by_method['MC'].value == 1.0
        assert by_method['SBS_normalized'].value == pytest.approx(1.0)
        assert by_method['BS_bound'].value == pytest.approx(0.6, rel=1e-12)
        assert by_method['BS_bound'].weight_sum == pytest.approx(0.6, rel=1e-12)
        assert by_method['MC'].weight_sum is None

    def test_sacrifice_convention_retains_one_less(self, example, stream):
        reports = estimate_all(example, ConstantFunctional(1.0), ['SBS_raw'], 3, 0, stream,
                               kappa_convention='sacrifice')
        assert reports[0].k == 2

    def test_unknown_method_raises(self, example, stream):
        with pytest.raises(EstimatorException):
            estimate_all(example, ConstantFunctional(1.0), ['MC', 'importance'], 2, 0, stream)

    def test_beam_width(self):
        assert beam_width(4, 'extend') == 5
        assert beam_width(4, 'sacrifice') == 4
        with pytest.raises(EstimatorException):
            beam_width(4, 'other')


class TestEstimateReport:
    def test_row(self):
        assert EstimateReport('MC', 2, 0.5, 1, 0.25).row() == ['MC', '0.5', 2, 1, '0.25', '']

    def test_non_finite_value_raises(self):
        with pytest.raises(EstimatorException):
            EstimateReport('MC', 2, 1.0, 0, float('nan'))

    def test_unknown_method_raises(self):
        with pytest.raises(EstimatorException):
            EstimateReport('other', 2, 1.0, 0, 0.0)


class TestSummarize:
    def test_mean_and_percentiles(self):
        summary = summarize([1.0, 2.0, 3.0, 4.0])
        assert summary['mean'] == 2.5
        assert summary['low'] == pytest.approx(1.075)
        assert summary['high'] == pytest.approx(3.925)

    def test_empty(self):
        assert summarize([]) == {'mean': None, 'low': None, 'high': None}
