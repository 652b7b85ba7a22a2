import json
import pytest
from fractions import Fraction
from unittest.mock import patch

from app.api.models import OutputFormat, RunConfig, Task
from app.core.config import settings
from app.core.exceptions import NoSolution
from app.main import EXIT_FAILURE, EXIT_PASS, EXIT_RESOURCE_GUARD, EXIT_USAGE, main, run
from app.services import structure
from app.services.cohomology import s_class
from app.services.report_generator import ReportGenerator


class TestCommandLine:
    """Tests for argument handling and exit codes."""

    def test_usage_error(self, capsys):
        assert main(["cup-table", "--max-index", "0"]) == EXIT_USAGE
        assert "invalid configuration" in capsys.readouterr().err

    def test_unknown_task(self):
        with pytest.raises(SystemExit) as raised:
            main(["plot"])
        assert raised.value.code == 2

    def test_markdown_alias(self):
        config = RunConfig(task="yoneda", output_format="md")
        assert config.output_format == OutputFormat.MARKDOWN
        assert config.max_hdeg == settings.MAX_HDEG

    def test_cup_table_markdown(self, capsys):
        assert main(["cup-table", "--max-index", "1", "--max-pq", "1", "--format", "md", "--workers", "1"]) == EXIT_PASS
        output = capsys.readouterr().out
        assert output.startswith("# cup-table: PASS")
        assert "## Cup products" in output

    def test_field_cohomology_series(self, capsys):
        assert main(["cohomology", "--coeff", "k", "--max-hdeg", "3", "--workers", "1"]) == EXIT_PASS
        report = json.loads(capsys.readouterr().out)
        assert report["schema"] == 1
        assert report["tables"]["series"][0]["coefficients"] == [1, 2, 2, 2]

    def test_reports_are_deterministic(self, capsys):
        main(["yoneda", "--max-degree", "3", "--workers", "1"])
        first = capsys.readouterr().out
        main(["yoneda", "--max-degree", "3", "--workers", "2"])
        second = capsys.readouterr().out
        assert first == second
        assert "elapsed_seconds" not in first

    def test_resource_guard(self):
        with patch.object(settings, "ORACLE_MAX_COLUMNS", 5):
            assert main(["cohomology", "--max-hdeg", "2", "--weight-window", "2", "--workers", "1"]) == EXIT_RESOURCE_GUARD


class TestRun:
    """Tests for running suites and reporting failures."""

    def test_corrupted_bracket_fails(self, capsys):
        original = structure.bracket_h1

        def corrupted(left, right):
            if left == structure.s_derivation(1) and right == structure.s_derivation(2):
                return {s_class(3): Fraction(3)}
            return original(left, right)

        with patch("app.services.structure.bracket_h1", side_effect=corrupted):
            assert main(["virasoro", "--max-m", "2"]) == EXIT_FAILURE
        report = json.loads(capsys.readouterr().out)
        assert report["status"] == "FAIL"
        transport = [c for c in report["checks"] if c["name"] == "virasoro.transport" and c["status"] == "FAIL"]
        assert len(transport) == 1
        assert transport[0]["indices"] == {"left": "s_1", "right": "s_2"}

    def test_library_error_becomes_fail_entry(self):
        config = RunConfig(task=Task.CUP_TABLE, max_index=1, max_pq=1, workers=1)
        with patch("app.services.structure.verify_cup_table", side_effect=NoSolution("inconsistent system")):
            report, status = run(config)
        assert status == EXIT_FAILURE
        assert [c.name for c in report.failures] == ["cup-table"]
        assert "NoSolution" in report.failures[0].detail

    def test_timing_only_on_request(self):
        config = RunConfig(task=Task.YONEDA, max_degree=2, workers=1, include_timing=True)
        report, status = run(config)
        assert status == EXIT_PASS
        assert report.elapsed_seconds is not None
        assert "Elapsed" in ReportGenerator.render(report, OutputFormat.MARKDOWN)
