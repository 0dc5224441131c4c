"""
Tests for the np-nb command-line interface
"""

import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from np_naive_bayes import __version__
from np_naive_bayes.cli import cli
from np_naive_bayes.core import load_model


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return CliRunner()


@pytest.fixture
def train_csv(example1_data, write_csv):
    return write_csv(example1_data)


@pytest.fixture
def trained_model(runner, train_csv, tmp_path):
    path = tmp_path / "model.json"
    result = runner.invoke(
        cli,
        ["train", "--data", str(train_csv), "--label-col", "label", "--class0-value", "neg", "--seed", "11", "--out", str(path)],
    )
    assert result.exit_code == 0, result.output
    return path


def _features_csv(tmp_path, X, columns, name="input.csv"):
    path = tmp_path / name
    pd.DataFrame(X, columns=columns).to_csv(path, index=False)
    return path


class TestTrain:
    def test_writes_model(self, trained_model):
        document = json.loads(trained_model.read_text())
        assert document["k_used"] == 199
        assert document["m3"] == 200
        assert document["feasible"] is True
        assert document["variant"] == "pn2"

    def test_invalid_alpha_is_usage_error(self, runner, train_csv):
        result = runner.invoke(cli, ["train", "--data", str(train_csv), "--label-col", "label", "--class0-value", "neg", "--alpha", "1.5"])
        assert result.exit_code == 1

    def test_unknown_label_column(self, runner, train_csv):
        result = runner.invoke(cli, ["train", "--data", str(train_csv), "--label-col", "target", "--class0-value", "neg"])
        assert result.exit_code == 2

    def test_infeasible_guarantee(self, runner, make_example1, write_csv, tmp_path):
        path = write_csv(make_example1(m=40, n=40), name="small.csv")
        args = ["train", "--data", str(path), "--label-col", "label", "--class0-value", "neg", "--out", str(tmp_path / "small.json")]
        result = runner.invoke(cli, args)
        assert result.exit_code == 3
        assert not (tmp_path / "small.json").exists()

        result = runner.invoke(cli, args + ["--allow-infeasible"])
        assert result.exit_code == 0
        assert json.loads((tmp_path / "small.json").read_text())["feasible"] is False

    def test_variant_and_rule_flags(self, runner, train_csv, tmp_path):
        path = tmp_path / "nn2.json"
        result = runner.invoke(
            cli,
            ["train", "--data", str(train_csv), "--label-col", "label", "--class0-value", "neg",
             "--variant", "nn2", "--threshold-rule", "exact_beta", "--kernel", "epanechnikov", "--out", str(path)],
        )
        assert result.exit_code == 0, result.output
        document = json.loads(path.read_text())
        assert document["variant"] == "nn2"
        assert document["threshold_rule"] == "exact_beta"
        assert document["model"]["kernel"] == "epanechnikov"

    def test_config_file_defaults(self, runner, train_csv, tmp_path):
        (tmp_path / "config.yaml").write_text("np:\n  alpha: 0.1\n")
        path = tmp_path / "m.json"
        result = runner.invoke(cli, ["train", "--data", str(train_csv), "--label-col", "label", "--class0-value", "neg", "--out", str(path)])
        assert result.exit_code == 0, result.output
        assert json.loads(path.read_text())["alpha"] == 0.1


class TestPredict:
    def test_matches_library(self, runner, trained_model, example1_data, tmp_path):
        input_path = _features_csv(tmp_path, example1_data.features, list(example1_data.names()))
        out = tmp_path / "pred.csv"
        result = runner.invoke(cli, ["predict", "--model", str(trained_model), "--data", str(input_path), "--out", str(out)])
        assert result.exit_code == 0, result.output

        frame = pd.read_csv(out)
        clf = load_model(trained_model)
        expected = clf.predict_many(pd.read_csv(input_path).to_numpy())
        assert frame["prediction"].tolist() == expected.tolist()
        assert frame["row_index"].tolist() == list(range(example1_data.n_rows))

    def test_column_order_does_not_matter(self, runner, trained_model, example1_data, tmp_path):
        names = list(example1_data.names())
        straight = _features_csv(tmp_path, example1_data.features, names, "a.csv")
        flipped = _features_csv(tmp_path, example1_data.features[:, ::-1], names[::-1], "b.csv")
        for path, out in ((straight, "pa.csv"), (flipped, "pb.csv")):
            result = runner.invoke(cli, ["predict", "--model", str(trained_model), "--data", str(path), "--out", str(tmp_path / out)])
            assert result.exit_code == 0, result.output
        assert pd.read_csv(tmp_path / "pa.csv").equals(pd.read_csv(tmp_path / "pb.csv"))

    def test_header_only_input(self, runner, trained_model, example1_data, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(example1_data.names()) + "\n")
        out = tmp_path / "pred.csv"
        result = runner.invoke(cli, ["predict", "--model", str(trained_model), "--data", str(path), "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(out)) == 0

    def test_missing_column(self, runner, trained_model, example1_data, tmp_path):
        names = list(example1_data.names())
        path = _features_csv(tmp_path, example1_data.features[:, 1:], names[1:])
        result = runner.invoke(cli, ["predict", "--model", str(trained_model), "--data", str(path)])
        assert result.exit_code == 2

    def test_non_finite_input(self, runner, trained_model, example1_data, tmp_path):
        X = example1_data.features.copy()
        X[3, 2] = np.nan
        path = _features_csv(tmp_path, X, list(example1_data.names()))
        result = runner.invoke(cli, ["predict", "--model", str(trained_model), "--data", str(path)])
        assert result.exit_code == 2


class TestEvaluate:
    def test_runs(self, runner, trained_model, train_csv):
        result = runner.invoke(cli, ["evaluate", "--model", str(trained_model), "--data", str(train_csv), "--label-col", "label", "--class0-value", "neg"])
        assert result.exit_code == 0, result.output


class TestSimulate:
    def test_small_run(self, runner, tmp_path):
        out = tmp_path / "sim"
        result = runner.invoke(
            cli,
            ["simulate", "--example", "1", "--d", "10", "--m", "100", "--n", "100", "--reps", "2",
             "--test-per-class", "50", "--threads", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        assert (out / "replications.csv").exists()
        assert json.loads((out / "report.json").read_text())["reps"] == 2

    def test_unknown_example(self, runner):
        result = runner.invoke(cli, ["simulate", "--example", "3", "--d", "10", "--m", "100", "--n", "100"])
        assert result.exit_code == 1

    def test_swap_rejected(self, runner, tmp_path):
        (tmp_path / "config.yaml").write_text("np:\n  swap_classes: true\n")
        result = runner.invoke(cli, ["simulate", "--example", "1", "--d", "10", "--m", "100", "--n", "100", "--reps", "1"])
        assert result.exit_code == 1


class TestScreeningTable:
    def test_small_run(self, runner):
        result = runner.invoke(cli, ["screening-table", "--example", "1", "--ds", "10,20", "--reps", "3"])
        assert result.exit_code == 0, result.output

    def test_bad_dimensions(self, runner):
        result = runner.invoke(cli, ["screening-table", "--example", "1", "--ds", "5"])
        assert result.exit_code == 1


class TestVerifyTheory:
    def test_small_grid(self, runner):
        result = runner.invoke(cli, ["verify-theory", "--grid-small"])
        assert result.exit_code == 0, result.output
        assert "83" in result.output


class TestConfigCommands:
    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_config_info(self, runner):
        assert runner.invoke(cli, ["config-info"]).exit_code == 0

    def test_init_config(self, runner, tmp_path):
        result = runner.invoke(cli, ["init-config", "--output", "np.yaml"])
        assert result.exit_code == 0
        assert "alpha: 0.05" in (tmp_path / "np.yaml").read_text()

    def test_init_config_keeps_existing(self, runner, tmp_path):
        (tmp_path / "np.yaml").write_text("keep: me\n")
        result = runner.invoke(cli, ["init-config", "--output", "np.yaml"], input="n\n")
        assert result.exit_code == 0
        assert (tmp_path / "np.yaml").read_text() == "keep: me\n"

    def test_unknown_command(self, runner):
        assert runner.invoke(cli, ["bogus"]).exit_code == 1
