"""
Tests for the theory verification checks
"""

import pytest

from np_naive_bayes.numerics import CountConvention
from np_naive_bayes.numerics.verification import (
    PUBLISHED_CHERN_COUNTS,
    chern_convention_report,
    check_chern_table,
    check_duality,
    check_kmin_grid,
    duality_sizes,
    quadrature_beta_cdf,
    run_all,
)


class TestChecks:
    def test_chern_table_reproduced(self):
        result = check_chern_table()
        assert result.passed
        assert result.metrics["counts"] == list(PUBLISHED_CHERN_COUNTS)
        assert result.metrics["counts"][0] == 83

    def test_convention_report_names_both(self):
        report = chern_convention_report()
        assert set(report) == {c.value for c in CountConvention}
        assert report["all_combos"] == list(PUBLISHED_CHERN_COUNTS)

    def test_kmin_grid_small(self):
        result = check_kmin_grid(small=True)
        assert result.passed
        assert result.metrics["checked"] == 3 * 3 * 10

    def test_quadrature_grid_ends_at_one(self):
        values = quadrature_beta_cdf(2.0, 3.0)
        assert values[0] == 0.0
        assert values[-1] == pytest.approx(1.0, abs=1e-12)

    def test_duality_small(self):
        result = check_duality(small=True)
        assert result.passed, result.detail
        assert result.metrics["max_error"] < 1e-9

    def test_sizes(self):
        assert duality_sizes(small=True) == list(range(1, 41))
        full = duality_sizes()
        assert full[:30] == list(range(1, 31))
        assert full[-1] == 200

    def test_run_all_small(self):
        results = run_all(small=True)
        assert [r.name for r in results] == ["chern_table", "kmin_grid", "duality"]
        assert all(r.passed for r in results)


@pytest.mark.slow
class TestFullChecks:
    def test_kmin_grid_full(self):
        assert check_kmin_grid().passed

    def test_duality_full(self):
        assert check_duality().passed
