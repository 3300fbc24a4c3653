"""Tests for the command-line interface."""

import json

import pytest

from tfep.cli import build_parser, main, parse_targets, parse_trim_grid
from tfep.errors import UsageError
from tfep.montecarlo import StudyConfig, StudyResult, run_study, save_config
from tfep.montecarlo.schema import TwoSampleRow
from tfep.outputs import load_parquet
from tfep.trimming import TrimSpec


class TestParseTrimGrid:
    def test_mixed_items(self):
        specs = parse_trim_grid("0,0.05,upper:0.1,k=3,l=97")
        assert specs == [
            TrimSpec.symmetric(0.0),
            TrimSpec.symmetric(0.05),
            TrimSpec.upper(0.1),
            TrimSpec.explicit(3, 97),
        ]

    def test_spaces(self):
        assert parse_trim_grid(" 0.1 , k = 3 , l = 97 ") == [
            TrimSpec.symmetric(0.1),
            TrimSpec.explicit(3, 97),
        ]

    def test_default_mode(self):
        specs = parse_trim_grid("0.1,symmetric:0.2", trim_mode="lower")
        assert [s.mode for s in specs] == ["lower", "symmetric"]

    def test_empty(self):
        with pytest.raises(UsageError, match="Empty trim grid"):
            parse_trim_grid(" , ")

    def test_invalid_item(self):
        with pytest.raises(UsageError):
            parse_trim_grid("0,half")


class TestParseTargets:
    def test_aliases(self):
        assert parse_targets("mean-diff,var-ratio,mean-difference") == [
            "mean-difference",
            "variance-ratio",
        ]

    def test_unknown(self):
        with pytest.raises(UsageError, match="Unknown target"):
            parse_targets("mean,median")


class TestParser:
    def test_defaults(self):
        args = build_parser().parse_args(["one-sample", "--dist", "normal:0,1"])
        assert args.format == "csv"
        assert args.trim == "0,0.05,0.1,0.2"
        assert args.alpha == 0.05
        assert args.precision == 3
        assert args.seed is None

    def test_bad_format(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["one-sample", "--format", "xml"])
        assert exc.value.code == 2

    def test_data_and_dist_exclusive(self, capsys):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["one-sample", "--data", "x.csv", "--dist", "normal:0,1"])
        assert exc.value.code == 2
        assert "not allowed with argument" in capsys.readouterr().err

    def test_two_sample_sides_exclusive(self):
        argv = ["two-sample", "--data1", "a.csv", "--dist1", "normal:0,1", "--dist2", "normal:0,1"]
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(argv)
        assert exc.value.code == 2

    def test_no_command(self, capsys):
        assert main([]) == 0
        assert "usage" in capsys.readouterr().out


class TestDiagnose:
    def test_csv(self, income_csv, capsys):
        assert main(["diagnose", "--data", f"{income_csv}:income"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,mean,median,sd,skewness,kurtosis,jb_p_value"
        assert lines[1].startswith("1122,")

    def test_missing_file(self, tmp_path, capsys):
        assert main(["diagnose", "--data", str(tmp_path / "absent.csv")]) == 3
        assert "Error: Data file not found" in capsys.readouterr().err

    def test_missing_column(self, income_csv, capsys):
        assert main(["diagnose", "--data", f"{income_csv}:wealth"]) == 3
        assert "household, income" in capsys.readouterr().err

    def test_constant_column(self, tmp_path, capsys):
        path = tmp_path / "flat.csv"
        path.write_text("x\n" + "1\n" * 10)
        assert main(["diagnose", "--data", str(path)]) == 4

    def test_non_numeric(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("x\n1\nabc\n")
        assert main(["diagnose", "--data", str(path)]) == 3
        assert "row 3" in capsys.readouterr().err


class TestOneSample:
    def test_data(self, income_csv, capsys):
        assert main(["one-sample", "--data", f"{income_csv}:income"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("tau,k_n,l_n,n_tau,mean")
        assert len(lines) == 5

    def test_subsample_records_seed(self, income_csv, capsys):
        argv = [
            "one-sample",
            "--data",
            f"{income_csv}:income",
            "--subsample",
            "200",
            "--seed",
            "7",
            "--trim",
            "0,0.1",
        ]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert first.startswith("# tfep master_seed=7\n")
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_explicit_window(self, income_csv, capsys):
        argv = ["one-sample", "--data", f"{income_csv}:income", "--trim", "k=10,l=1112"]
        assert main(argv + ["--format", "json"]) == 0
        (row,) = json.loads(capsys.readouterr().out)["rows"]
        assert (row["k_n"], row["l_n"], row["n_tau"]) == (10, 1112, 1102)
        assert row["tau"] == pytest.approx(10 / 1122)

    def test_simulated(self, capsys):
        argv = ["one-sample", "--dist", "pareto:1,1.5", "--n", "2000", "--format", "json"]
        assert main(argv) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["master_seed"] == 20240101
        assert data["config"]["dist1"]["family"] == "pareto"
        assert [r["tau"] for r in data["rows"]] == [0.0, 0.05, 0.1, 0.2]

    def test_seed_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("TFEP_SEED", "123")
        assert main(["one-sample", "--dist", "normal:0,1", "--n", "100"]) == 0
        assert capsys.readouterr().out.startswith("# tfep master_seed=123\n")

    def test_bad_seed_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("TFEP_SEED", "abc")
        assert main(["one-sample", "--dist", "normal:0,1"]) == 2
        assert "TFEP_SEED" in capsys.readouterr().err

    def test_explicit_window_needs_data(self, capsys):
        assert main(["one-sample", "--dist", "normal:0,1", "--trim", "k=1,l=9"]) == 2
        assert "explicit windows need --data" in capsys.readouterr().err

    def test_needs_source(self, capsys):
        assert main(["one-sample"]) == 2

    def test_unknown_distribution(self, capsys):
        assert main(["one-sample", "--dist", "gamma:1,2"]) == 2
        assert "Unknown distribution family" in capsys.readouterr().err

    def test_unknown_scaling(self, capsys):
        assert main(["one-sample", "--dist", "normal:0,1", "--scaling", "bootstrap"]) == 2

    def test_over_trimmed_level_is_reported(self, tmp_path, capsys):
        path = tmp_path / "small.csv"
        path.write_text("x\n1\n2\n3\n4\n9\n")
        assert main(["one-sample", "--data", str(path), "--trim", "0,0.45"]) == 0
        assert "Over-trimmed" in capsys.readouterr().out

    def test_parquet_out(self, income_csv, tmp_path, capsys):
        out = tmp_path / "table.parquet"
        assert main(["one-sample", "--data", f"{income_csv}:income", "--out", str(out)]) == 0
        assert "Saved 4 rows" in capsys.readouterr().out
        assert len(load_parquet(out)) == 4

    def test_markdown_out(self, income_csv, tmp_path):
        out = tmp_path / "table.md"
        argv = ["one-sample", "--data", f"{income_csv}:income", "-f", "markdown", "-o", str(out)]
        assert main(argv) == 0
        assert "| Level | Mean | CI | Width | Variance | CI | Width |" in out.read_text()


class TestTwoSample:
    def test_data(self, income_csv, second_income_csv, capsys):
        argv = [
            "two-sample",
            "--data1",
            f"{income_csv}:income",
            "--data2",
            f"{second_income_csv}:income",
            "--format",
            "markdown",
            "--ratio-interval",
            "log",
        ]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert "| Level | R | CI | Width | Δμ | CI | Width |" in out
        assert " vs " in out.splitlines()[0]

    def test_needs_both_files(self, income_csv, capsys):
        assert main(["two-sample", "--data1", f"{income_csv}:income"]) == 2
        assert "both --data1 and --data2" in capsys.readouterr().err

    def test_simulated(self, capsys):
        argv = [
            "two-sample",
            "--dist1",
            "normal:3,2",
            "--dist2",
            "normal:0,1",
            "--n1",
            "5000",
            "--format",
            "json",
        ]
        assert main(argv) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["config"]["n2"] == 5000
        for row in data["rows"]:
            assert row["ratio_ci"]["estimate"] == pytest.approx(4.0, abs=0.5)


class TestCoverage:
    def test_small_run(self, capsys):
        argv = [
            "coverage",
            "--dist",
            "normal:0,1",
            "--n",
            "200",
            "--reps",
            "20",
            "--trim",
            "0,0.1",
            "--scaling",
            "influence",
        ]
        assert main(argv) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "# tfep master_seed=20240101"
        assert len(lines) == 6

    def test_csv_identical_across_workers(self, capsys):
        argv = [
            "coverage",
            "--dist",
            "pareto:1,1.5",
            "--n",
            "300",
            "--reps",
            "24",
            "--trim",
            "0.1,0.2",
            "--scaling",
            "influence",
            "--precision",
            "12",
        ]
        assert main(argv + ["--workers", "1"]) == 0
        serial = capsys.readouterr().out
        assert main(argv + ["--workers", "4"]) == 0
        assert capsys.readouterr().out == serial

    def test_two_sample_targets_need_second_law(self, capsys):
        argv = ["coverage", "--dist", "normal:0,1", "--target", "var-ratio", "--reps", "5"]
        assert main(argv) == 2

    def test_undefined_truth(self, capsys):
        argv = ["coverage", "--dist", "student:1", "--target", "mean", "--trim", "0"]
        assert main(argv) == 2
        assert "No population mean" in capsys.readouterr().err


class TestStudy:
    def test_config_with_overrides(self, tmp_path, capsys):
        config = StudyConfig.create(
            kind="coverage",
            dist1="pareto:1,3",
            n1=300,
            tau_grid=[0.1],
            replications=10,
            master_seed=1,
        )
        path = tmp_path / "study.yaml"
        save_config(config, path)
        argv = ["study", "--config", str(path), "--seed", "9", "--workers", "1", "-f", "json"]
        assert main(argv) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["master_seed"] == 9
        assert data["kind"] == "coverage"
        assert len(data["rows"]) == 2

    def test_json_parses_back(self, tmp_path, capsys):
        config = StudyConfig.create(
            kind="two-sample",
            dist1="normal:3,2",
            dist2="normal:0,1",
            n1=400,
            tau_grid=[0.0, 0.1],
            master_seed=5,
        )
        path = tmp_path / "pair.yaml"
        save_config(config, path)
        assert main(["study", "--config", str(path), "-f", "json"]) == 0
        parsed = StudyResult.model_validate_json(capsys.readouterr().out)
        assert parsed == run_study(config)
        assert all(isinstance(row, TwoSampleRow) for row in parsed.rows)

    def test_missing_config(self, tmp_path, capsys):
        assert main(["study", "--config", str(tmp_path / "absent.yaml")]) == 2


class TestScenarioCommands:
    def test_reproduce(self, capsys):
        argv = ["reproduce", "--scenario", "normal-3-2", "--n", "500", "-f", "markdown"]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert "Covers printed" in out
        assert "master seed 20240101" in out

    def test_reproduce_unknown(self, capsys):
        assert main(["reproduce", "--scenario", "nope"]) == 2
        assert "No scenario found" in capsys.readouterr().err

    def test_list(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert "Registered collections: 2" in out
        assert "pareto-1-1.5" in out

    def test_list_collection(self, capsys):
        assert main(["list", "--collection", "two_sample"]) == 0
        assert "Collection: two_sample (6 scenarios)" in capsys.readouterr().out

    def test_list_unknown_collection(self, capsys):
        assert main(["list", "--collection", "nope"]) == 2

    def test_info(self, capsys):
        assert main(["info", "--scenario", "student-1"]) == 0
        out = capsys.readouterr().out
        assert "Sample 1: student:1+5" in out
        assert "Notes:" in out


class TestCurves:
    def test_qq(self, income_csv, capsys):
        assert main(["curves", "--data", f"{income_csv}:income", "--kind", "qq"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "theoretical,sample"
        assert len(lines) == 1123

    def test_trimmed_ecdf(self, income_csv, capsys):
        assert main(["curves", "--data", f"{income_csv}:income", "--trim", "0.1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "x,ecdf,lower,upper"
        assert len(lines) == 1 + 1122 - 2 * 112

    def test_parquet_rejected(self, income_csv, tmp_path, capsys):
        argv = ["curves", "--data", f"{income_csv}:income", "-o", str(tmp_path / "c.parquet")]
        assert main(argv) == 2
