"""
Command-line tests: argument and config-file parsing, exit codes and
report rendering.
"""

import json
from fractions import Fraction

import pytest

from src.api import cli
from src.exceptions import UsageError
from src.schemas.report import ReportFormat, RunConfig, SuiteReport
from src.services.claims_service import run_all


class TestParseConfig:
    def test_poly(self):
        config = cli.parse_config(["--poly", "1,-4,1,1", "--claims", "c01,C09"])
        assert (config.poly.a, config.poly.b, config.poly.c, config.poly.d) == (1, -4, 1, 1)
        assert config.search is None
        assert config.claims == ["C01", "C09"]

    def test_defaults_to_search(self, default_settings):
        config = cli.parse_config([])
        assert config.poly is None
        assert config.search == default_settings.search_bound
        assert config.claims == []

    def test_all_claims(self):
        assert cli.parse_config(["--search", "3", "--claims", "all"]).claims == []

    def test_rational_options(self):
        config = cli.parse_config(["--poly", "1/2,-4,1,1", "--omega4", "3/2", "--c", "6", "--format", "md"])
        assert config.poly.a == Fraction(1, 2)
        assert config.omega4 == Fraction(3, 2)
        assert config.charge_c == 6
        assert config.format == ReportFormat.MARKDOWN

    @pytest.mark.parametrize(
        "poly",
        ["0,1,1,1", "1,2,3", "1,0,-4,1,1", "1,x,1,1"],
    )
    def test_bad_poly_names_flag(self, poly):
        with pytest.raises(UsageError) as excinfo:
            cli.parse_config(["--poly", poly])
        assert excinfo.value.flag == "--poly"

    def test_poly_and_search_conflict(self):
        with pytest.raises(UsageError):
            cli.parse_config(["--poly", "1,-4,1,1", "--search", "5"])

    def test_invalid_value_names_flag(self):
        with pytest.raises(UsageError) as excinfo:
            cli.parse_config(["--search", "3", "--precision-bits", "8"])
        assert excinfo.value.flag == "--precision-bits"

    def test_non_integer(self):
        with pytest.raises(UsageError) as excinfo:
            cli.parse_config(["--search", "3", "--samples", "many"])
        assert excinfo.value.flag == "--samples"

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.env"
        path.write_text("poly=1,-4,1,1\nc=2\nk1-max=3\nsamples=4\n")
        config = cli.parse_config(["--config", str(path), "--samples", "7"])
        assert config.poly.b == -4
        assert config.charge_c == 2
        assert config.k1_max == 3
        assert config.samples == 7

    def test_flag_source_replaces_file_source(self, tmp_path):
        path = tmp_path / "run.env"
        path.write_text("poly=1,-4,1,1\n")
        config = cli.parse_config(["--search", "4"], config_file=str(path))
        assert config.poly is None
        assert config.search == 4

    def test_config_file_unknown_key(self, tmp_path):
        path = tmp_path / "run.env"
        path.write_text("colour=blue\n")
        with pytest.raises(UsageError) as excinfo:
            cli.parse_config(["--config", str(path)])
        assert excinfo.value.flag == "--config"

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(UsageError):
            cli.parse_config(["--config", str(tmp_path / "absent.env")])


class TestRun:
    """Exit codes of full runs"""

    def test_unknown_claim(self):
        assert cli.run(["--poly", "1,-4,1,1", "--claims", "C99"]) == cli.EXIT_USAGE

    def test_usage_error(self):
        assert cli.run(["--poly", "0,1,1,1"]) == cli.EXIT_USAGE

    def test_degenerate_quartic(self):
        assert cli.run(["--poly", "1,-2,0,1"]) == cli.EXIT_GATE

    def test_gate_rejected(self, tmp_path):
        out = tmp_path / "report.json"
        code = cli.run(["--poly", "1,0,0,-2", "--claims", "C01,C09", "--out", str(out)])
        assert code == cli.EXIT_GATE
        data = json.loads(out.read_text())
        assert data["overall"] == "gate-rejected"
        assert data["gate"]["real_root_count"] == 2
        assert [c["status"] for c in data["claims"]] == ["failed", "skipped"]

    def test_verified(self, tmp_path):
        out = tmp_path / "report.json"
        assert cli.run(["--poly", "1,-4,1,1", "--claims", "C09", "--out", str(out)]) == cli.EXIT_VERIFIED
        report = SuiteReport.model_validate_json(out.read_text())
        assert report.claims[0].id == "C09"
        assert report.gate.delta == 1957

    def test_stdout(self, capsys):
        assert cli.run(["--poly", "1,-4,1,1", "--claims", "C01", "--format", "md"]) == cli.EXIT_VERIFIED
        assert "| C01 | Admissibility gate | verified-exact |" in capsys.readouterr().out


class TestReportOutput:
    def _rejected_report(self, rejected_context):
        config = RunConfig(poly=rejected_context.quartic, claims=["C01", "C02"])
        claims = run_all(rejected_context, config.claims)
        return config, SuiteReport.assemble(config, rejected_context.gate, claims, 0.0)

    def test_markdown_shows_failed_witness(self, rejected_context):
        _, report = self._rejected_report(rejected_context)
        text = cli.render_markdown(report)
        assert "| real roots (Sturm) | 2 |" in text
        assert "Overall: **gate-rejected**" in text
        assert "## C01:" in text
        assert "## C02:" not in text

    def test_unwritable_output(self, rejected_context, tmp_path):
        config, report = self._rejected_report(rejected_context)
        config = config.model_copy(update={"out": str(tmp_path / "missing" / "report.json")})
        assert cli.emit_report(report, config) == cli.EXIT_IO

    def test_exit_code_follows_overall(self, rejected_context):
        _, report = self._rejected_report(rejected_context)
        assert cli.exit_code(report) == cli.EXIT_GATE
