import json
from pathlib import Path

import pytest

from streak_test.cli import EXIT_CAP, EXIT_DATA, EXIT_OK, EXIT_UNTESTABLE, EXIT_USAGE, main

FIXTURES = Path(__file__).parent / "fixtures"
IND = "11011110010111111001110111101110111101010101"
DET = "1110100110000011"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyzeCommand:
    """streak-test analyze."""

    def test_json_result(self, capsys):
        """analyze --format json prints one result record."""
        code, out, _ = run(capsys, "analyze", "--shots", IND, "--k", "2", "--resamples", "2000", "--seed", "1", "--format", "json")
        assert code == EXIT_OK
        (record,) = json.loads(out)["results"]
        assert record["t"] == "-7/19"
        assert record["total_draws"] == 2000
        assert record["seed"] == 1
        assert record["significant"] is False

    def test_human_output(self, capsys):
        """Human output shows the observed value, verdict and counts."""
        code, out, _ = run(capsys, "analyze", "--shots", IND, "--resamples", "500")
        assert code == EXIT_OK
        assert "-7/19 (-0.368421)" in out
        assert "verdict: do not reject" in out
        assert "after 2 hits: 19 realized, 12 followed by a hit" in out

    def test_untestable_exit_code(self, capsys):
        """An untestable string exits 3 with a reason."""
        code, out, err = run(capsys, "analyze", "--shots", "1111", "--k", "1")
        assert code == EXIT_UNTESTABLE
        assert "untestable" in err
        assert "miss" in out

    def test_untestable_json_still_parses(self, capsys):
        """Untestable JSON output is still a results document."""
        code, out, _ = run(capsys, "analyze", "--shots", "1111", "--k", "1", "--format", "json")
        assert code == EXIT_UNTESTABLE
        (record,) = json.loads(out)["results"]
        assert record["p"] is None
        assert record["untestable_reason"]

    def test_exact(self, capsys):
        """--exact reports the full enumeration."""
        code, out, _ = run(capsys, "analyze", "--shots", DET, "--k", "2", "--exact", "--format", "json")
        assert code == EXIT_OK
        (record,) = json.loads(out)["results"]
        assert record["null_kind"] == "exact"
        assert record["total_draws"] == 12870
        assert record["t"] == "-1/15"

    def test_cap_exceeded(self, capsys):
        """Enumeration over --cap exits 5."""
        code, _, err = run(capsys, "analyze", "--shots", DET, "--exact", "--cap", "100")
        assert code == EXIT_CAP
        assert "C(16, 8)" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ["analyze", "--shots", "10x1"],
            ["analyze", "--shots", DET, "--k", "0"],
            ["analyze", "--shots", DET, "--stat", "tk-miss"],
            ["analyze", "--shots", DET, "--alpha", "2"],
            ["analyze", "--shots", DET, "--null", "bern-season"],
            ["analyze", "--shots", DET, "--null", "bern-game", "--p", "0.5"],
            ["analyze", "--shots", DET, "--null", "bern-game", "--exact"],
            ["analyze"],
            [],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        """Invalid flags and flag combinations exit 2."""
        code, _, _ = run(capsys, *argv)
        assert code == EXIT_USAGE

    def test_season_rate_flag(self, capsys):
        """--p feeds the season null."""
        code, out, _ = run(
            capsys, "analyze", "--shots", IND, "--null", "bern-season", "--p", "0.45", "--resamples", "300", "--format", "json"
        )
        assert code == EXIT_OK
        assert json.loads(out)["results"][0]["null"] == "bern-season"

    def test_histogram_file(self, capsys, tmp_path):
        """--histogram writes the total, hit and miss histograms."""
        path = tmp_path / "hist.json"
        code, _, _ = run(capsys, "analyze", "--shots", IND, "--resamples", "1000", "--histogram", str(path))
        assert code == EXIT_OK
        doc = json.loads(path.read_text())
        assert doc["kind"] == "histogram"
        assert [h["statistic"] for h in doc["histograms"]] == ["tk", "tk-hit", "tk-miss"]
        assert all(len(h["counts"]) == 40 for h in doc["histograms"])


class TestBatchCommand:
    """streak-test batch."""

    def test_writes_all_outputs(self, capsys, tmp_path):
        """batch writes results, summary and significance files."""
        code, out, _ = run(
            capsys, "batch", "--input", str(FIXTURES / "thompson_games.csv"), "--output", str(tmp_path), "--k", "1", "2",
            "--resamples", "200",
        )
        assert code == EXIT_OK
        for name in ("results.json", "summary.json", "summary.csv", "significance.json", "significance.csv"):
            assert (tmp_path / name).exists(), name
        assert len(json.loads((tmp_path / "results.json").read_text())["results"]) == 4
        assert out.startswith("2 observations, 4 tests")
        assert "Season summary" not in out

    def test_details_print_summary_and_results(self, capsys, tmp_path):
        """--details adds the season summary and one section per test."""
        code, out, _ = run(
            capsys, "batch", "--input", str(FIXTURES / "thompson_games.csv"), "--output", str(tmp_path), "--k", "1", "2",
            "--resamples", "200", "--details",
        )
        assert code == EXIT_OK
        assert out.startswith("2 observations, 4 tests")
        assert "Season summary" in out
        assert "Thompson|2016-12-23|game" in out
        assert "4 test(s)" in out

    def test_config_file_and_variant_tables(self, capsys, tmp_path):
        """A grid file with two statistics writes one significance table per variant."""
        code, out, _ = run(
            capsys, "batch", "--input", str(FIXTURES / "thompson_games.csv"), "--output", str(tmp_path),
            "--config", str(FIXTURES / "grid.yaml"), "--format", "json",
        )
        assert code == EXIT_OK
        assert json.loads(out)["tests"] == 8
        assert (tmp_path / "significance-tk-perm.json").exists()
        assert (tmp_path / "significance-tk-hit-perm.csv").exists()

    def test_flags_override_config(self, capsys, tmp_path):
        """Command-line flags win over the grid file."""
        code, _, _ = run(
            capsys, "batch", "--input", str(FIXTURES / "thompson_games.csv"), "--output", str(tmp_path),
            "--config", str(FIXTURES / "grid.yaml"), "--stat", "tk", "--resamples", "100",
        )
        assert code == EXIT_OK
        results = json.loads((tmp_path / "results.json").read_text())["results"]
        assert len(results) == 4
        assert {r["total_draws"] for r in results} == {100}

    def test_same_seed_byte_identical(self, capsys, tmp_path):
        """results.json does not depend on the worker count."""
        outputs = []
        for workers in ("1", "3"):
            out_dir = tmp_path / f"w{workers}"
            code, _, _ = run(
                capsys, "batch", "--input", str(FIXTURES / "thompson_games.csv"), "--output", str(out_dir),
                "--k", "1", "2", "3", "--null", "perm", "bern-game", "--resamples", "300", "--workers", workers,
            )
            assert code == EXIT_OK
            outputs.append((out_dir / "results.json").read_bytes())
        assert outputs[0] == outputs[1]

    def test_missing_input(self, capsys, tmp_path):
        """A missing shot log exits 2."""
        code, _, err = run(capsys, "batch", "--input", str(tmp_path / "none.csv"), "--output", str(tmp_path))
        assert code == EXIT_USAGE
        assert err.startswith("Error:")

    def test_data_error(self, capsys, tmp_path):
        """A bad row exits 4 and names the row."""
        bad = tmp_path / "bad.csv"
        bad.write_text("subject,date,opponent,scope,shots\nA,2016-12-01,X,game,1z\n")
        code, _, err = run(capsys, "batch", "--input", str(bad), "--output", str(tmp_path / "out"))
        assert code == EXIT_DATA
        assert "row 2" in err

    def test_lenient(self, capsys, tmp_path):
        """--lenient skips bad rows and reports them."""
        log = tmp_path / "log.csv"
        log.write_text("subject,date,opponent,scope,shots\nA,2016-12-01,X,game,1z\nA,2016-12-02,X,game,0110\n")
        code, out, _ = run(
            capsys, "batch", "--input", str(log), "--output", str(tmp_path / "out"), "--lenient", "--resamples", "50",
        )
        assert code == EXIT_OK
        assert "1 rows skipped" in out


class TestBiasCommand:
    """streak-test bias."""

    def test_csv_table(self, capsys):
        """bias prints a CSV row per hit count."""
        code, out, _ = run(capsys, "bias", "--length-range", "3:3", "--k", "1")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == (
            "schema_version,L,h,k,statistic,mean_bias,mean_bias_fraction,defined_arrangements,total_arrangements"
        )
        assert lines[1] == "1.0,3,1,1,tk,-0.5,-1/2,2,3"
        assert lines[2] == "1.0,3,2,1,tk,-0.5,-1/2,2,3"

    def test_undefined_cell(self, capsys):
        """An undefined cell has a null mean."""
        code, out, _ = run(capsys, "bias", "--length-range", "2", "--k", "1", "--format", "json")
        assert code == EXIT_OK
        (row,) = json.loads(out)["rows"]
        assert row["mean_bias"] is None
        assert row["defined_arrangements"] == 0

    def test_negative_on_sixteen_shots(self, capsys):
        """The exact null mean of t_2 on 16 shots with 8 hits is negative."""
        code, out, _ = run(capsys, "bias", "--length-range", "16", "--hits-range", "8", "--k", "2", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["rows"][0]["mean_bias"] < 0

    def test_cap(self, capsys):
        """bias over the cap exits 5."""
        code, _, err = run(capsys, "bias", "--length-range", "16", "--hits-range", "8:8", "--cap", "10")
        assert code == EXIT_CAP
        assert "C(16, 8)" in err

    def test_bad_range(self, capsys):
        """A reversed range exits 2."""
        code, _, _ = run(capsys, "bias", "--length-range", "9:3")
        assert code == EXIT_USAGE


class TestReportCommand:
    """streak-test report."""

    @pytest.fixture
    def results_path(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "batch", "--input", str(FIXTURES / "thompson_games.csv"), "--output", str(tmp_path),
            "--k", "1", "2", "--resamples", "200",
        )
        assert code == EXIT_OK
        return tmp_path / "results.json"

    def test_json(self, capsys, results_path):
        """report --format json prints both documents."""
        code, out, _ = run(capsys, "report", "--input", str(results_path), "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["pvalues"]["subjects"][0]["count"] == 2
        assert doc["significance"]["depths"] == [1, 2]

    def test_writes_files(self, capsys, results_path, tmp_path):
        """report --output writes p-value and significance files."""
        out_dir = tmp_path / "report"
        code, _, _ = run(capsys, "report", "--input", str(results_path), "--output", str(out_dir), "--format", "csv")
        assert code == EXIT_OK
        assert (out_dir / "pvalues.csv").exists()
        assert (out_dir / "significance.csv").exists()

    def test_human(self, capsys, results_path):
        """report prints text reports by default."""
        code, out, _ = run(capsys, "report", "--input", str(results_path))
        assert code == EXIT_OK
        assert "p-value distributions" in out
        assert "Thompson" in out

    @pytest.mark.parametrize("alpha", ["2", "0", "1", "-0.1", "x"])
    def test_alpha_outside_unit_interval(self, capsys, results_path, alpha):
        """--alpha must lie strictly between 0 and 1."""
        code, _, err = run(capsys, "report", "--input", str(results_path), "--alpha", alpha)
        assert code == EXIT_USAGE
        assert "alpha" in err

    def test_missing_results(self, capsys, tmp_path):
        """A missing results file exits 2."""
        code, _, _ = run(capsys, "report", "--input", str(tmp_path / "results.json"))
        assert code == EXIT_USAGE

    def test_not_a_results_file(self, capsys, tmp_path):
        """A document of another kind exits 4."""
        path = tmp_path / "summary.json"
        path.write_text('{"schema_version": "1.0", "kind": "summary", "subjects": []}')
        code, _, _ = run(capsys, "report", "--input", str(path))
        assert code == EXIT_DATA
