import csv
import os

import numpy as np
import pytest

from mixnewpy.cli.main import BASIN_GRAD_TOL, build_parser, cmd_train, default_threads, main
from mixnewpy.cli.manifest import RunManifest, read_manifest


@pytest.fixture
def libsvm_file(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.standard_normal((30, 2))
    y = X @ np.array([1.0, -1.0]) + 0.1 * rng.standard_normal(30)
    lines = ["{} 1:{} 2:{}".format(t, a, b) for t, (a, b) in zip(y, X)]
    path = tmp_path / "data.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


class TestUsage:
    def test_no_command_is_usage_error(self):
        assert main([]) == 2

    def test_help_exits_cleanly(self):
        assert main(["--help"]) == 0

    def test_grid_must_be_perfect_square(self):
        assert main(["basins", "--example", "1", "--grid", "624"]) == 2

    def test_trials_must_be_positive(self):
        assert main(["verify", "--example", "1", "--trials", "0"]) == 2

    def test_unknown_example(self):
        assert main(["verify", "--example", "4"]) == 2

    def test_onm_rejects_complex_starts(self):
        assert main(["basins", "--example", "1", "--method", "onm", "--imag-offset", "1", "--grid", "4"]) == 2

    def test_square_must_be_increasing(self):
        assert main(["basins", "--example", "1", "--grid", "4", "--square", "2", "-1"]) == 2

    def test_square_must_be_finite(self):
        assert main(["basins", "--example", "1", "--grid", "4", "--square", "-1", "inf"]) == 2

    def test_unknown_layout(self):
        assert main(["basins", "--example", "1", "--grid", "4", "--layout", "random"]) == 2

    def test_invalid_lm_parameters_are_usage_errors(self, libsvm_file):
        assert main(["train", "--data", libsvm_file, "--alpha", "0.5"]) == 2
        assert main(["train", "--data", libsvm_file, "--alpha", "1"]) == 2
        assert main(["train", "--data", libsvm_file, "--lambda0", "-1"]) == 2
        assert main(["train", "--data", libsvm_file, "--lambda0", "nan"]) == 2
        assert main(["train", "--data", libsvm_file, "--mu", "inf"]) == 2

    def test_solver_parameters_rejected_by_the_config_are_usage_errors(self, libsvm_file):
        args = build_parser().parse_args(["train", "--data", libsvm_file])
        args.alpha = 0.5
        assert cmd_train(args) == 2

    def test_parser_defaults(self):
        args = build_parser().parse_args(["train", "--data", "x"])
        assert (args.method, args.init, args.iters, args.hidden, args.split) == ("lm-mnm", "complex", 200, 10, None)
        assert BASIN_GRAD_TOL["onm"] < BASIN_GRAD_TOL["rmnm"]


class TestBasins:
    def test_writes_table_and_manifest(self, tmp_path):
        out = str(tmp_path / "basins.csv")
        argv = ["basins", "--example", "1", "--grid", "4", "--square", "-1", "2", "--threads", "1"]
        argv += ["--max-iters", "20000", "--out", out]
        assert main(argv) == 0
        with open(out, newline="") as stream:
            rows = list(csv.DictReader(stream))
        assert len(rows) == 1
        assert rows[0]["starts"] == "4"
        keys = ("to_global", "to_local_1", "to_local_2", "to_saddle", "no_convergence")
        counts = [int(rows[0][key]) for key in keys]
        assert sum(counts) == 4
        manifest = read_manifest(out + ".manifest")
        assert manifest["command"] == "basins"
        assert manifest["config.grid"] == "4"
        assert manifest["config.method"] == "rmnm_repulsive"
        assert manifest["config.layout"] == "closed"
        assert manifest["artifact.csv"] == out

    def test_prints_csv_without_out(self, capsys):
        assert main(["basins", "--example", "2", "--grid", "1", "--threads", "1", "--max-iters", "20000"]) == 0
        assert "example,method,gamma" in capsys.readouterr().out


class TestVerify:
    def test_passing_example(self, capsys):
        assert main(["verify", "--example", "2", "--trials", "2"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert out.count("PASS") == 10

    def test_broken_derivative_fails(self):
        assert main(["verify", "--example", "1", "--trials", "2", "--break-derivative"]) == 1


class TestTrain:
    def test_writes_metrics_and_manifest(self, libsvm_file, tmp_path, capsys):
        out = str(tmp_path / "metrics.csv")
        argv = ["train", "--data", libsvm_file, "--iters", "3", "--hidden", "2", "--init", "real", "--out", out]
        assert main(argv) == 0
        with open(out, newline="") as stream:
            header = next(csv.reader(stream))
        assert header == ["iter", "mse", "r2", "nmse_db", "lambda_or_delta"]
        manifest = read_manifest(out + ".manifest")
        assert manifest["command"] == "train"
        assert manifest["config.hidden"] == "2"
        assert "trial 0: mse" in capsys.readouterr().out

    def test_several_trials(self, libsvm_file, tmp_path):
        out = str(tmp_path / "metrics.csv")
        argv = ["train", "--data", libsvm_file, "--iters", "2", "--hidden", "2", "--trials", "2", "--out", out]
        assert main(argv) == 0
        for name in ("metrics.trial0.csv", "metrics.trial1.csv", "metrics.aggregate.csv"):
            assert os.path.exists(str(tmp_path / name))
        assert "stats.final_mse_aver" in read_manifest(out + ".manifest")

    def test_split_prints_test_metrics(self, libsvm_file, capsys):
        assert main(["train", "--data", libsvm_file, "--iters", "2", "--hidden", "2", "--split", "0.8"]) == 0
        assert "test mse" in capsys.readouterr().out

    def test_missing_data_file(self, tmp_path):
        assert main(["train", "--data", str(tmp_path / "missing.txt"), "--iters", "1"]) == 1

    def test_malformed_data_file(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 1:2\nx 1:2\n", encoding="utf-8")
        assert main(["train", "--data", str(path), "--iters", "1"]) == 1


class TestEnvironment:
    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("MN_THREADS", "3")
        assert default_threads() == 3

    def test_invalid_environment_falls_back(self, monkeypatch):
        monkeypatch.setenv("MN_THREADS", "many")
        assert default_threads() >= 1


class TestManifest:
    def test_round_trip_formats_values(self, tmp_path):
        path = str(tmp_path / "run.manifest")
        RunManifest("basins", config={"square": (-1.0, 2.0), "grid": 625}, stats={"elapsed": 0.5}).write(path)
        manifest = read_manifest(path)
        assert manifest["config.square"] == "-1.0 2.0"
        assert manifest["config.grid"] == "625"
        assert manifest["stats.elapsed"] == "0.5"
        assert "numpy" in manifest
