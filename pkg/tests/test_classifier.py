"""
Tests for NP classifier training, thresholding and population errors
"""

import logging

import numpy as np
import pytest
from scipy import stats

from np_naive_bayes.config import NPConfig, ThresholdRule, Variant
from np_naive_bayes.core import (
    analytic_type1_error,
    classical_quantile_threshold,
    empirical_errors,
    mc_type1_error,
    order_statistic,
    threshold_rank,
    train,
)
from np_naive_bayes.data import LabeledDataset, make_split
from np_naive_bayes.density import KDEScoreModel, ParametricScoreModel
from np_naive_bayes.errors import DataValidationError, DomainError
from np_naive_bayes.numerics import ThresholdParams, k_min
from np_naive_bayes.sim import Example, gen_example1
from np_naive_bayes.sim.generators import sampler


@pytest.fixture
def pn2_classifier(example1_data, pn2_config):
    return train(example1_data, pn2_config)


class TestThresholdRank:
    def test_kmin(self):
        assert threshold_rank(ThresholdRule.KMIN, 0.05, 0.05, 1000) == (974, True)

    def test_infeasible_falls_back_to_largest(self):
        assert threshold_rank(ThresholdRule.KMIN, 0.05, 0.05, 3) == (3, False)
        assert threshold_rank(ThresholdRule.EXACT_BETA, 0.05, 0.05, 3) == (3, False)

    @pytest.mark.parametrize("rule", [ThresholdRule.KCHERN, ThresholdRule.EXACT_BETA])
    def test_other_rules_feasible_at_large_m3(self, rule):
        k, feasible = threshold_rank(rule, 0.05, 0.05, 2000)
        assert feasible
        assert 1 <= k <= 2000

    def test_guaranteed_size_is_feasible(self):
        params = ThresholdParams(alpha=0.05, delta3=0.05, m3=1600)
        assert params.guaranteed_feasible
        assert threshold_rank(ThresholdRule.KMIN, 0.05, 0.05, 1600)[1]


class TestOrderStatistics:
    def test_order_statistic(self):
        assert order_statistic(np.array([1.0, 2.0, 3.0]), 2) == 2.0
        with pytest.raises(DomainError):
            order_statistic(np.array([1.0]), 2)

    @pytest.mark.parametrize("m3, value", [(100, 95.0), (1000, 950.0)])
    def test_classical(self, m3, value):
        assert classical_quantile_threshold(np.arange(m3, 0, -1, dtype=float), 0.05) == value

    def test_population_type1_error_follows_beta_law(self):
        k, feasible = threshold_rank(ThresholdRule.EXACT_BETA, 0.1, 0.02, 100)
        assert (k, feasible) == (97, True)

        rng = np.random.default_rng(4)
        scores = np.sort(rng.standard_normal((10_000, 100)), axis=1)
        thresholds = np.array([order_statistic(row, k) for row in scores])
        r0 = stats.norm.sf(thresholds)
        assert stats.kstest(r0, stats.beta(4, 97).cdf).pvalue > 0.01


class TestTrain:
    def test_threshold_is_kth_left_out_score(self, example1_data, pn2_config, pn2_classifier):
        clf = pn2_classifier
        assert clf.m3 == 200
        assert clf.k_used == k_min(ThresholdParams(0.05, 0.05, 200)) == 199
        assert clf.feasible
        assert clf.c_hat == clf.s03_scores[clf.k_used - 1]
        assert np.all(np.diff(clf.s03_scores) >= 0)
        assert isinstance(clf.model, ParametricScoreModel)
        assert clf.variant is Variant.PN2

        plan = make_split(example1_data, pn2_config)
        left_out = example1_data.rows(plan.s0_3)
        assert int(clf.predict_many(left_out).sum()) == clf.m3 - clf.k_used + 1

    def test_tie_classifies_as_one(self, example1_data, pn2_config, pn2_classifier):
        plan = make_split(example1_data, pn2_config)
        left_out = example1_data.rows(plan.s0_3)
        scores = pn2_classifier.scores(left_out)
        row = left_out[int(np.flatnonzero(scores == pn2_classifier.c_hat)[0])]
        assert pn2_classifier.predict(row) == 1

    def test_single_and_batch_predictions_agree(self, pn2_classifier, rng):
        X = gen_example1(10, 300, 1, rng)
        batch = pn2_classifier.predict_many(X)
        assert [pn2_classifier.predict(x) for x in X] == batch.tolist()

    def test_deterministic(self, example1_data, pn2_config):
        a = train(example1_data, pn2_config)
        b = train(example1_data, pn2_config)
        assert a.c_hat == b.c_hat
        assert np.array_equal(a.s03_scores, b.s03_scores)

    def test_small_m3_falls_back(self, make_example1, caplog):
        data = make_example1(m=6, n=4)
        with caplog.at_level(logging.WARNING):
            clf = train(data, NPConfig(seed=1))
        assert clf.m3 == 3
        assert clf.k_used == 3
        assert not clf.feasible
        assert clf.c_hat == clf.s03_scores[-1]
        assert "1600" in caplog.text

    def test_screened_kde_variant(self, make_example1):
        data = make_example1(m=300, n=300, d=30)
        clf = train(data, NPConfig(seed=2).with_variant(Variant.NSN2))
        assert isinstance(clf.model, KDEScoreModel)
        assert clf.screening is not None
        assert np.array_equal(clf.selected, clf.screening.selected)
        assert clf.d == 30

    def test_rejects_nan(self, example1_data, pn2_config):
        features = example1_data.features.copy()
        features[0, 0] = np.nan
        with pytest.raises(DataValidationError):
            train(LabeledDataset(features, example1_data.labels), pn2_config)

    def test_fingerprint_recorded(self, example1_data, pn2_classifier):
        assert pn2_classifier.fingerprint == example1_data.fingerprint()

    def test_monotone_transform_of_scores_keeps_predictions(self, pn2_classifier, rng):
        X = gen_example1(10, 500, 0, rng)
        scores = pn2_classifier.scores(X)
        k = pn2_classifier.k_used
        for transform in (lambda s: 2.0 * s + 3.0, lambda s: np.exp(s / 10.0)):
            threshold = order_statistic(np.sort(transform(pn2_classifier.s03_scores)), k)
            assert np.array_equal(transform(scores) >= threshold, scores >= pn2_classifier.c_hat)


class TestRethreshold:
    def test_larger_alpha_lowers_threshold(self, pn2_classifier):
        looser = pn2_classifier.rethreshold(0.2)
        assert looser.k_used < pn2_classifier.k_used
        assert looser.c_hat <= pn2_classifier.c_hat
        assert looser.model is pn2_classifier.model

    def test_rule_switch(self, pn2_classifier):
        exact = pn2_classifier.rethreshold(0.05, rule=ThresholdRule.EXACT_BETA)
        assert exact.threshold_rule is ThresholdRule.EXACT_BETA
        assert exact.k_used <= pn2_classifier.k_used

    def test_classical_threshold_is_lower(self, pn2_classifier):
        assert pn2_classifier.classical_threshold() == pn2_classifier.s03_scores[189]
        assert pn2_classifier.classical_threshold() <= pn2_classifier.c_hat


class TestEmpiricalErrors:
    def test_extreme_thresholds(self, pn2_classifier, example1_data):
        assert empirical_errors(pn2_classifier.with_threshold(-np.inf), example1_data) == (1.0, 0.0)
        assert empirical_errors(pn2_classifier.with_threshold(np.inf), example1_data) == (0.0, 1.0)

    def test_missing_class(self, pn2_classifier, rng):
        only0 = LabeledDataset(gen_example1(10, 20, 0, rng), np.zeros(20, dtype=int))
        r0, r1 = empirical_errors(pn2_classifier, only0)
        assert r0 is not None and r1 is None

    def test_dimension_mismatch(self, pn2_classifier, rng):
        with pytest.raises(DomainError):
            empirical_errors(pn2_classifier, LabeledDataset(rng.normal(size=(4, 11)), np.array([0, 0, 1, 1])))

    def test_swap_controls_original_class1(self, example1_data, rng):
        clf = train(example1_data, NPConfig(seed=5, swap_classes=True))
        assert clf.swapped
        test = LabeledDataset.from_classes(gen_example1(10, 2000, 0, rng), gen_example1(10, 2000, 1, rng))
        r0, r1 = empirical_errors(clf, test)
        assert r1 <= 0.1
        assert r0 > r1


class TestPopulationTypeOneError:
    def test_analytic_matches_monte_carlo(self, pn2_classifier):
        draws = 200_000
        analytic = analytic_type1_error(pn2_classifier, 0.0, 1.0)
        mc = mc_type1_error(pn2_classifier, sampler(Example.EX1_MEAN_SHIFT, 10, 0), draws, np.random.default_rng(8))
        tolerance = 4.0 * np.sqrt(analytic * (1.0 - analytic) / draws) + 1e-4
        assert abs(mc - analytic) <= tolerance

    def test_analytic_threshold_override(self, pn2_classifier):
        assert analytic_type1_error(pn2_classifier, 0.0, 1.0, threshold=-1e9) == pytest.approx(1.0)
        assert analytic_type1_error(pn2_classifier, 0.0, 1.0, threshold=1e9) == pytest.approx(0.0)

    def test_analytic_needs_affine_score(self, make_example1):
        clf = train(make_example1(m=100, n=100), NPConfig(seed=1).with_variant(Variant.NN2))
        with pytest.raises(DomainError):
            analytic_type1_error(clf, 0.0, 1.0)

    def test_mc_rejects_zero_draws(self, pn2_classifier):
        with pytest.raises(DomainError):
            mc_type1_error(pn2_classifier, sampler(Example.EX1_MEAN_SHIFT, 10, 0), 0, np.random.default_rng(0))
