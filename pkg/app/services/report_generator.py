import json
import logging
from typing import Any, Dict, List, Optional, Sequence

from app.api.models import CheckEntry, OutputFormat, Report, ReportSummary, RunConfig, to_jsonable
from app.services.checks import CheckResult, CheckStatus

# Configure logging
logger = logging.getLogger(__name__)


class TableKind:
    """Keys of the optional tables attached to a report."""
    DIMENSIONS = "dimensions"
    BRACKETS = "brackets"
    E2 = "e2"
    SERIES = "series"
    VERDICTS = "verdicts"


class ReportGenerator:
    """
    Builds reports from check results and renders them as JSON or Markdown.
    """

    @classmethod
    def build(
        cls,
        config: RunConfig,
        results: Sequence[CheckResult],
        tables: Optional[Dict[str, Any]] = None,
        elapsed: Optional[float] = None,
    ) -> Report:
        """
        Assemble a report; results are re-sorted so equal configurations give equal reports.

        Args:
            config: the run configuration
            results: check results from one or more suites
            tables: extra tables keyed by TableKind
            elapsed: wall time, kept only if the configuration asks for it

        Returns:
            The report model
        """
        ordered = sorted(results, key=CheckResult.sort_key)
        checks = [
            CheckEntry(
                name=r.name,
                indices=to_jsonable(r.indices),
                expected=to_jsonable(r.expected),
                computed=to_jsonable(r.computed),
                status=r.status,
                detail=r.detail,
            )
            for r in ordered
        ]
        failed = sum(1 for r in ordered if r.failed)
        skipped = sum(1 for r in ordered if r.status == CheckStatus.SKIP)
        summary = ReportSummary(total=len(ordered), passed=len(ordered) - failed - skipped, failed=failed, skipped=skipped)
        parameters = config.model_dump(mode="json", exclude={"task", "output_format", "include_timing", "workers"})
        status = CheckStatus.PASS if failed == 0 else CheckStatus.FAIL
        logger.info(f"{config.task.value}: {summary.passed}/{summary.total} checks passed")
        return Report(
            task=config.task,
            parameters=parameters,
            status=status,
            summary=summary,
            checks=checks,
            tables=to_jsonable(tables or {}),
            elapsed_seconds=round(elapsed, 3) if config.include_timing and elapsed is not None else None,
        )

    @classmethod
    def render(cls, report: Report, format_type: OutputFormat = OutputFormat.JSON) -> str:
        if format_type == OutputFormat.MARKDOWN:
            return cls._format_markdown_report(report)
        return cls._format_json_report(report)

    @classmethod
    def _format_json_report(cls, report: Report) -> str:
        data = report.model_dump(mode="json", by_alias=True, exclude_none=True)
        return json.dumps(data, indent=2, ensure_ascii=False)

    @classmethod
    def _format_markdown_report(cls, report: Report) -> str:
        """
        Format the report as Markdown: header, summary, the task's tables and every discrepancy.
        """
        lines = [
            f"# {report.task.value}: {report.status}",
            "",
            f"- Checks: {report.summary.total}",
            f"- Passed: {report.summary.passed}",
            f"- Failed: {report.summary.failed}",
            f"- Skipped: {report.summary.skipped}",
            "- Parameters: " + ", ".join(f"{k}={v}" for k, v in report.parameters.items()),
        ]
        if report.elapsed_seconds is not None:
            lines.append(f"- Elapsed: {report.elapsed_seconds}s")

        cup_cells = [entry for entry in report.checks if entry.name == "cup.table"]
        if cup_cells:
            lines.extend(["", "## Cup products", ""])
            lines.extend(cls._cup_grid(cup_cells))

        tables = report.tables
        if TableKind.DIMENSIONS in tables:
            lines.extend(["", "## Dimensions", ""])
            lines.extend(cls._dimension_grid(tables[TableKind.DIMENSIONS]))
        if TableKind.BRACKETS in tables:
            lines.extend(["", "## Brackets", ""])
            lines.extend(cls._bracket_rows(tables[TableKind.BRACKETS]))
        if TableKind.E2 in tables:
            lines.extend(["", "## E_2 page", ""])
            lines.extend(cls._e2_grid(tables[TableKind.E2]))
        if TableKind.SERIES in tables:
            lines.extend(["", "## Hilbert series", ""])
            for row in tables[TableKind.SERIES]:
                lines.append(f"- {row['name']}: {', '.join(str(c) for c in row['coefficients'])}")
        if TableKind.VERDICTS in tables:
            lines.extend(["", "## K_2 verdicts", ""])
            for row in tables[TableKind.VERDICTS]:
                lines.append(f"- {row['algebra']}: {'K_2' if row['is_k2'] else 'not K_2'}")

        lines.extend(["", "## Checks", "", "| check | passed | failed | skipped |", "|---|---|---|---|"])
        for name, (passed, failed, skipped) in cls._counts(report.checks).items():
            lines.append(f"| {name} | {passed} | {failed} | {skipped} |")

        failures = report.failures
        if failures:
            lines.extend(["", "## Discrepancies", ""])
            for entry in failures:
                indices = ", ".join(f"{k}={v}" for k, v in entry.indices.items())
                lines.append(f"- **{entry.name}** ({indices}): expected `{entry.expected}`, computed `{entry.computed}`")
                if entry.detail:
                    lines.append(f"  - {entry.detail}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def _counts(checks: List[CheckEntry]) -> Dict[str, List[int]]:
        counts: Dict[str, List[int]] = {}
        for entry in checks:
            bucket = counts.setdefault(entry.name, [0, 0, 0])
            bucket[[CheckStatus.PASS, CheckStatus.FAIL, CheckStatus.SKIP].index(entry.status)] += 1
        return counts

    @staticmethod
    def _cup_grid(cells: List[CheckEntry]) -> List[str]:
        """Rows are left factors, columns right factors; failing cells are marked."""
        lefts: List[str] = []
        rights: List[str] = []
        values: Dict[tuple, str] = {}
        for entry in cells:
            left, right = entry.indices["left"], entry.indices["right"]
            if left not in lefts:
                lefts.append(left)
            if right not in rights:
                rights.append(right)
            mark = "" if entry.status == CheckStatus.PASS else " **FAIL**"
            values[(left, right)] = f"{entry.computed}{mark}"
        lines = ["| ⌣ | " + " | ".join(rights) + " |", "|---" * (len(rights) + 1) + "|"]
        for left in lefts:
            lines.append(f"| {left} | " + " | ".join(values.get((left, r), "") for r in rights) + " |")
        return lines

    @staticmethod
    def _dimension_grid(rows: List[Dict[str, Any]]) -> List[str]:
        """Degree down, weight across."""
        degrees = sorted({row["degree"] for row in rows})
        weights = sorted({row["weight"] for row in rows})
        values = {(row["degree"], row["weight"]): row["dimension"] for row in rows}
        lines = ["| n \\ w | " + " | ".join(str(w) for w in weights) + " |", "|---" * (len(weights) + 1) + "|"]
        for n in degrees:
            lines.append(f"| {n} | " + " | ".join(str(values.get((n, w), "")) for w in weights) + " |")
        return lines

    @staticmethod
    def _bracket_rows(rows: List[Dict[str, Any]]) -> List[str]:
        lines = ["| δ | class | [δ, class] |", "|---|---|---|"]
        for row in rows:
            result = " + ".join(f"{c}*{k}" for k, c in row["result"].items()) or "0"
            lines.append(f"| {row['delta']} | {row['class']} | {result} |")
        return lines

    @staticmethod
    def _e2_grid(cells: List[Dict[str, Any]]) -> List[str]:
        """p down (rows 0 and 1), q across."""
        qs = sorted({cell["q"] for cell in cells})
        values = {(cell["p"], cell["q"]): ", ".join(cell["basis"]) or "0" for cell in cells}
        lines = ["| p \\ q | " + " | ".join(str(q) for q in qs) + " |", "|---" * (len(qs) + 1) + "|"]
        for p in (0, 1):
            lines.append(f"| {p} | " + " | ".join(values.get((p, q), "") for q in qs) + " |")
        return lines
