import json
from fractions import Fraction

from app.api.models import OutputFormat, RunConfig, Task, to_jsonable
from app.services.checks import CheckResult
from app.services.report_generator import ReportGenerator, TableKind


class TestReportGenerator:
    """Tests for report assembly and rendering."""

    def setup_method(self):
        """Setup for each test method."""
        self.config = RunConfig(task=Task.CUP_TABLE, max_index=1, max_pq=1, workers=1)
        self.results = [
            CheckResult.compare("cup.table", {"left": "s_1", "right": "s_0"}, "-4*t_2^2", "-4*t_2^2"),
            CheckResult.compare("cup.table", {"left": "s_0", "right": "s_1"}, "4*t_2^2", "2*t_2^2"),
            CheckResult.compare("cup.unit", {"class": "c"}, "c", "c"),
        ]

    def test_summary_and_status(self):
        report = ReportGenerator.build(self.config, self.results)
        assert report.status == "FAIL"
        assert (report.summary.total, report.summary.passed, report.summary.failed) == (3, 2, 1)
        assert [c.indices["left"] for c in report.failures] == ["s_0"]

    def test_skipped_entries_are_counted_not_failed(self):
        results = [
            CheckResult.compare("resolution.g-chain-map", {"length": 2, "middle": "x|x"}, "0", "0"),
            CheckResult.skipped("resolution.g-chain-map", {"length": 2, "middle": "x|y"}, "boundary leaves the domain of g"),
        ]
        report = ReportGenerator.build(self.config, results)
        assert report.status == "PASS"
        assert (report.summary.passed, report.summary.failed, report.summary.skipped) == (1, 0, 1)
        assert report.failures == []
        text = ReportGenerator.render(report, OutputFormat.MARKDOWN)
        assert "| resolution.g-chain-map | 1 | 0 | 1 |" in text

    def test_order_does_not_depend_on_input(self):
        forward = ReportGenerator.render(ReportGenerator.build(self.config, self.results))
        backward = ReportGenerator.render(ReportGenerator.build(self.config, list(reversed(self.results))))
        assert forward == backward

    def test_json_schema(self):
        data = json.loads(ReportGenerator.render(ReportGenerator.build(self.config, self.results, elapsed=1.5)))
        assert data["schema"] == 1
        assert data["task"] == "cup-table"
        assert "elapsed_seconds" not in data
        assert "workers" not in data["parameters"]

    def test_markdown_cup_grid(self):
        text = ReportGenerator.render(ReportGenerator.build(self.config, self.results), OutputFormat.MARKDOWN)
        assert "| ⌣ | s_1 | s_0 |" in text
        assert "| s_0 | 2*t_2^2 **FAIL** |  |" in text
        assert "## Discrepancies" in text

    def test_markdown_tables(self):
        tables = {
            TableKind.DIMENSIONS: [{"degree": 0, "weight": 0, "dimension": 1}, {"degree": 1, "weight": -1, "dimension": 2}],
            TableKind.E2: [{"p": 0, "q": 0, "basis": ["e"]}, {"p": 1, "q": 0, "basis": ["bar(e)"]}],
        }
        text = ReportGenerator.render(ReportGenerator.build(self.config, [], tables), OutputFormat.MARKDOWN)
        assert "| n \\ w | -1 | 0 |" in text
        assert "| 1 | bar(e) |" in text

    def test_jsonable(self):
        assert to_jsonable({(1, 2): Fraction(1, 2)}) == {"[1, 2]": "1/2"}
        assert to_jsonable((Task.YONEDA, None)) == ["yoneda", None]
