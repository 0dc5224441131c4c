"""
Tests for simulation designs, oracle risks, the replication executor and the Monte Carlo harness
"""

import json
import math

import numpy as np
import pandas as pd
import pytest
from scipy import stats

import np_naive_bayes.sim.harness as harness
from np_naive_bayes.config import NPConfig, ScreeningMethod, Variant
from np_naive_bayes.errors import ConfigError, DomainError, ScreeningError
from np_naive_bayes.sim import (
    Example,
    ReplicationExecutor,
    SimSpec,
    closed_form_ex1,
    gen_example1,
    gen_example2,
    gen_example2_with_components,
    monte_carlo_oracle,
    oracle_log_ratio,
    replication_rng,
    run_mc,
    run_replication,
    screening_table,
    write_report,
)
from np_naive_bayes.sim.report import RECORD_COLUMNS, SummaryStat


class TestGenerators:
    def test_example1_moments(self):
        X = gen_example1(11, 1_000_000, 1, 3)
        means = X.mean(axis=0)
        assert np.all(np.abs(means[:10] - 0.5) < 0.005)
        assert abs(means[10]) < 0.005
        assert np.all(np.abs(X.var(axis=0) - 1.0) < 0.01)

    def test_example1_class0_is_standard_normal(self):
        X = gen_example1(10, 200_000, 0, 4)
        assert np.all(np.abs(X.mean(axis=0)) < 0.01)

    def test_example2_moments(self):
        X = gen_example2(12, 1_000_000, 1, 5)
        assert np.all(np.abs(X.mean(axis=0)) < 0.005)
        # 0.1 + (3/sqrt(10))^2 = 1.0
        assert np.all(np.abs(X[:, :10].var(axis=0) - 1.0) < 0.01)
        assert np.all(np.abs(X[:, 10:].var(axis=0) - 1.0) < 0.01)

    def test_example2_components(self):
        X, signs = gen_example2_with_components(10, 100_000, 1, 6)
        counts = [int(np.sum(signs == 1)), int(np.sum(signs == -1))]
        assert stats.chisquare(counts).pvalue > 0.001
        plus = X[signs == 1, :10]
        assert np.all(np.abs(plus.mean(axis=0) - 3 / math.sqrt(10)) < 0.01)
        assert np.all(np.abs(plus.var(axis=0) - 0.1) < 0.005)

    def test_seeded(self):
        assert np.array_equal(gen_example1(10, 5, 1, 9), gen_example1(10, 5, 1, 9))

    def test_needs_signal_dims(self):
        with pytest.raises(DomainError):
            gen_example1(9, 5, 0, 0)

    @pytest.mark.parametrize("value, example", [("1", Example.EX1_MEAN_SHIFT), (2, Example.EX2_MIXTURE), ("ex2_mixture", Example.EX2_MIXTURE)])
    def test_from_id(self, value, example):
        assert Example.from_id(value) is example

    def test_from_id_unknown(self):
        with pytest.raises(ValueError):
            Example.from_id("3")


class TestOracle:
    def test_closed_form_example1(self):
        risks = closed_form_ex1(0.05)
        assert risks.r0_star == 0.05
        assert risks.r1_star == pytest.approx(0.53, abs=0.005)

    def test_example1_log_ratio_distribution(self):
        X = gen_example1(10, 200_000, 0, 1)
        ratios = oracle_log_ratio(Example.EX1_MEAN_SHIFT, X)
        assert ratios.mean() == pytest.approx(-1.25, abs=0.02)
        assert ratios.var() == pytest.approx(2.5, abs=0.05)

    def test_example2_log_ratio_against_scipy(self, rng):
        X = gen_example2(10, 50, 1, rng)
        cov = 0.1 * np.eye(10)
        center = np.full(10, 3 / math.sqrt(10))
        p = 0.5 * stats.multivariate_normal(center, cov).pdf(X) + 0.5 * stats.multivariate_normal(-center, cov).pdf(X)
        q = stats.multivariate_normal(np.zeros(10), np.eye(10)).pdf(X)
        np.testing.assert_allclose(oracle_log_ratio(Example.EX2_MIXTURE, X), np.log(p / q), rtol=1e-9, atol=1e-9)

    def test_monte_carlo_matches_closed_form(self):
        closed = closed_form_ex1(0.5)
        mc = monte_carlo_oracle(Example.EX1_MEAN_SHIFT, 0.5, draws=1_000_000, seed=2)
        assert mc.r1_star == pytest.approx(closed.r1_star, abs=0.004)
        assert mc.r0_star == pytest.approx(0.5, abs=1e-3)

    def test_example2_oracle(self):
        risks = monte_carlo_oracle(Example.EX2_MIXTURE, 0.05, draws=1_000_000, seed=3)
        assert risks.r1_star == pytest.approx(0.027, abs=0.003)

    @pytest.mark.slow
    def test_monte_carlo_matches_closed_form_full(self):
        closed = closed_form_ex1(0.5)
        mc = monte_carlo_oracle(Example.EX1_MEAN_SHIFT, 0.5, seed=2)
        assert mc.r1_star == pytest.approx(closed.r1_star, abs=0.002)

    def test_alpha_domain(self):
        with pytest.raises(DomainError):
            closed_form_ex1(1.0)


class TestExecutor:
    def test_results_in_order_and_failures_captured(self):
        def boom():
            raise ScreeningError("nothing selected")

        executor = ReplicationExecutor(max_concurrency=3)
        results = executor.run([lambda: 1, boom, lambda: 3])
        assert [r.rep for r in results] == [0, 1, 2]
        assert [r.success for r in results] == [True, False, True]
        assert results[1].error_type == "ScreeningError"
        stats_ = executor.get_execution_stats()
        assert stats_["total_executions"] == 3
        assert stats_["failed_executions"] == 1
        assert stats_["failure_types"] == {"ScreeningError": 1}

    def test_history_keeps_replication_numbers(self):
        executor = ReplicationExecutor()
        results = executor.run([lambda: 1, lambda: 2], first_rep=5)
        assert [r.rep for r in results] == [5, 6]
        assert [record["rep"] for record in executor.execution_history] == [5, 6]
        assert executor.get_execution_stats()["success_rate"] == 100.0

    def test_rejects_zero_concurrency(self):
        with pytest.raises(ValueError):
            ReplicationExecutor(max_concurrency=0)


def _spec(**overrides):
    base = dict(example=Example.EX1_MEAN_SHIFT, d=10, m=400, n=400, reps=5, test_per_class=200, cfg=NPConfig().with_variant(Variant.PN2), base_seed=1)
    base.update(overrides)
    return SimSpec(**base)


class TestSimSpec:
    def test_rejects_small_d(self):
        with pytest.raises(ConfigError):
            _spec(d=5)

    def test_rejects_swap(self):
        with pytest.raises(ConfigError):
            _spec(cfg=NPConfig(swap_classes=True))

    def test_replication_rng_matches_spawn(self):
        spawned = np.random.SeedSequence(7).spawn(4)[3]
        assert replication_rng(7, 3).random() == np.random.default_rng(spawned).random()


class TestHarness:
    def test_replication_is_reproducible(self):
        spec = _spec()
        assert run_replication(spec, 2) == run_replication(spec, 2)

    def test_replication_record(self):
        record = run_replication(_spec(), 0)
        assert record.variant == "pn2"
        assert record.k_used == 199
        assert record.feasible
        assert record.n_selected == 10
        assert record.n_missed is None
        assert 0.0 <= record.r0_analytic <= 1.0
        assert record.r0_classical >= record.r0_analytic

    def test_order_independent(self):
        spec = _spec()
        forward = run_mc(spec)
        backward = run_mc(spec, reps=[4, 3, 2, 1, 0])
        assert [r.rep for r in backward.records] == [0, 1, 2, 3, 4]
        assert forward.r0_population == backward.r0_population
        assert forward.violation_rate == backward.violation_rate

    def test_threads_do_not_change_results(self):
        spec = _spec()
        assert run_mc(spec, threads=1).records == run_mc(spec, threads=3).records

    def test_failures_counted(self, monkeypatch):
        original = harness.run_replication

        def flaky(spec, rep):
            if rep == 2:
                raise ScreeningError("nothing selected")
            return original(spec, rep)

        monkeypatch.setattr(harness, "run_replication", flaky)
        report = run_mc(_spec())
        assert report.n_ok == 4
        assert report.n_failed == 1
        assert report.failure_types == {"ScreeningError": 1}

    def test_oracle_attached_for_example1(self):
        report = run_mc(_spec(reps=2))
        assert report.oracle is not None
        assert report.oracle.r1_star == pytest.approx(closed_form_ex1(0.05).r1_star)

    def test_violation_rate_controlled(self):
        report = run_mc(_spec(reps=100, base_seed=11))
        assert report.n_ok == 100
        assert report.violation_rate <= 0.05 + 3 * math.sqrt(0.05 * 0.95 / 100)
        assert report.violation_rate_classical > report.violation_rate
        assert report.r0_population.mean < 0.05

    def test_screened_kde_replication(self):
        spec = _spec(d=30, m=300, n=300, reps=2, cfg=NPConfig().with_variant(Variant.NSN2), kde_type1_draws=20_000)
        report = run_mc(spec)
        assert report.n_ok + report.n_failed == 2
        if report.n_ok:
            assert report.screening is not None

    @pytest.mark.slow
    def test_violation_rate_full(self):
        report = run_mc(_spec(reps=1000, test_per_class=1000, base_seed=0), threads=4)
        assert report.within_guarantee
        assert report.violation_rate_classical > 0.2


class TestReport:
    def test_summary_stat(self):
        stat = SummaryStat.of([1.0, 2.0, 3.0])
        assert stat.mean == 2.0
        assert stat.sd == 1.0
        assert stat.se == pytest.approx(1 / math.sqrt(3))
        assert SummaryStat.of([]).count == 0

    def test_write_report(self, tmp_path):
        report = run_mc(_spec(reps=3))
        paths = write_report(report, tmp_path / "out")
        frame = pd.read_csv(paths["replications"])
        assert list(frame.columns) == RECORD_COLUMNS
        assert len(frame) == 3
        document = json.loads(paths["report"].read_text())
        assert document["n_ok"] == 3
        assert "records" not in document


class TestScreeningTable:
    def test_small_run(self):
        rows = screening_table(Example.EX1_MEAN_SHIFT, [20, 60], ScreeningMethod.DSTAT, reps=10, base_seed=3)
        assert [r.d for r in rows] == [20, 60]
        for row in rows:
            assert row.selected.count == 10
            assert 0.0 <= row.missed.mean <= 10.0
            assert row.selected.mean == pytest.approx(10.0 - row.missed.mean + row.false_positives.mean)

    def test_rejects_none(self):
        with pytest.raises(ConfigError):
            screening_table(Example.EX1_MEAN_SHIFT, [20], ScreeningMethod.NONE, reps=1)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "example, method",
        [
            (Example.EX1_MEAN_SHIFT, ScreeningMethod.TSTAT),
            (Example.EX1_MEAN_SHIFT, ScreeningMethod.DSTAT),
            (Example.EX2_MIXTURE, ScreeningMethod.TSTAT),
            (Example.EX2_MIXTURE, ScreeningMethod.DSTAT),
        ],
    )
    def test_published_cells_small_d(self, example, method):
        rows = screening_table(example, [10, 100], method, reps=PUBLISHED_REPS, base_seed=21, threads=4)
        for row in rows:
            _assert_cells(row, PUBLISHED_SCREENING[(example, method, row.d)])

    @pytest.mark.slow
    def test_published_cells_example1_dstat_d1000(self):
        row = screening_table(Example.EX1_MEAN_SHIFT, [1000], ScreeningMethod.DSTAT, reps=PUBLISHED_REPS, threads=4)[0]
        _assert_cells(row, PUBLISHED_SCREENING[(Example.EX1_MEAN_SHIFT, ScreeningMethod.DSTAT, 1000)])

    @pytest.mark.slow
    def test_tstat_blind_to_mixture_signal(self):
        rows = screening_table(Example.EX2_MIXTURE, [10, 100], ScreeningMethod.TSTAT, reps=PUBLISHED_REPS, base_seed=5, threads=4)
        assert rows[0].missed.mean > 7.5
        assert rows[1].missed.mean > 9.0
        dstat = screening_table(Example.EX2_MIXTURE, [10], ScreeningMethod.DSTAT, reps=200, base_seed=5, threads=4)[0]
        assert dstat.missed.mean < 3.0


# (example, method, d) -> (mean, sd) of selected, missed and false-positive counts over 1000 replications
PUBLISHED_SCREENING = {
    (Example.EX1_MEAN_SHIFT, ScreeningMethod.TSTAT, 10): ((9.11, 1.14), (0.89, 1.14), (0.0, 0.0)),
    (Example.EX1_MEAN_SHIFT, ScreeningMethod.DSTAT, 10): ((8.11, 1.63), (1.89, 1.63), (0.0, 0.0)),
    (Example.EX1_MEAN_SHIFT, ScreeningMethod.TSTAT, 100): ((14.64, 3.46), (0.78, 0.90), (5.43, 3.17)),
    (Example.EX1_MEAN_SHIFT, ScreeningMethod.DSTAT, 100): ((12.43, 3.38), (2.00, 1.39), (4.43, 2.77)),
    (Example.EX1_MEAN_SHIFT, ScreeningMethod.DSTAT, 1000): ((58.82, 9.87), (1.14, 1.05), (49.96, 9.78)),
    (Example.EX2_MIXTURE, ScreeningMethod.TSTAT, 10): ((1.76, 1.53), (8.24, 1.53), (0.0, 0.0)),
    (Example.EX2_MIXTURE, ScreeningMethod.DSTAT, 10): ((8.13, 1.83), (1.87, 1.83), (0.0, 0.0)),
    (Example.EX2_MIXTURE, ScreeningMethod.TSTAT, 100): ((5.93, 3.44), (9.38, 0.80), (5.31, 3.17)),
    (Example.EX2_MIXTURE, ScreeningMethod.DSTAT, 100): ((11.96, 3.57), (2.34, 1.59), (4.29, 2.68)),
}
PUBLISHED_REPS = 1000


def _assert_cells(row, cells):
    """Each mean within 3 standard errors of the difference between two independent 1000-rep averages"""
    for stat, (mean, sd) in zip((row.selected, row.missed, row.false_positives), cells):
        se = math.sqrt(stat.se**2 + sd**2 / PUBLISHED_REPS)
        assert stat.mean == pytest.approx(mean, abs=3 * se), (row.d, mean, stat.mean, se)


TREND_SIZES = [200, 400, 1600, 6400]


def _trend(example, variant, reps, **overrides):
    reports = []
    for size in TREND_SIZES:
        spec = _spec(
            example=example,
            m=size,
            n=size,
            reps=reps,
            test_per_class=1000,
            cfg=NPConfig().with_variant(variant),
            kde_type1_draws=2000,
            base_seed=size,
            **overrides,
        )
        reports.append(run_mc(spec, threads=4))
    return reports


class TestSampleSizeTrends:
    @pytest.mark.slow
    @pytest.mark.parametrize("variant", list(Variant))
    def test_type1_below_alpha_at_every_size(self, variant):
        for report in _trend(Example.EX1_MEAN_SHIFT, variant, reps=200):
            assert report.n_ok > 0
            assert report.r0_test.mean < 0.05

    @pytest.mark.slow
    def test_parametric_type2_decreases_toward_oracle(self):
        reports = _trend(Example.EX1_MEAN_SHIFT, Variant.PN2, reps=200)
        r1 = [report.r1_test for report in reports]
        for smaller, larger in zip(r1, r1[1:]):
            assert larger.mean <= smaller.mean + 2 * math.hypot(smaller.se, larger.se)
        assert r1[-1].mean >= closed_form_ex1(0.05).r1_star - 3 * r1[-1].se
        assert r1[0].mean > r1[-1].mean

    @pytest.mark.slow
    @pytest.mark.parametrize("variant", [Variant.NN2, Variant.NSN2])
    def test_nonparametric_type2_on_mixture_falls(self, variant):
        reports = _trend(Example.EX2_MIXTURE, variant, reps=100)
        assert reports[-1].r1_test.mean < 0.15
        assert reports[-1].r1_test.mean < reports[0].r1_test.mean

    @pytest.mark.slow
    @pytest.mark.parametrize("variant", [Variant.PN2, Variant.PSN2])
    def test_parametric_type2_on_mixture_stays_near_coin(self, variant):
        for report in _trend(Example.EX2_MIXTURE, variant, reps=100):
            if report.n_ok:
                assert report.r1_test.mean > 0.85
