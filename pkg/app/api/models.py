from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from app.core.config import settings


class Task(str, Enum):
    """Verification suites the batch driver can run."""
    VERIFY_REWRITING = "verify-rewriting"
    VERIFY_RESOLUTION = "verify-resolution"
    COHOMOLOGY = "cohomology"
    HOMOLOGY = "homology"
    CUP_TABLE = "cup-table"
    VIRASORO = "virasoro"
    BRACKETS = "brackets"
    YONEDA = "yoneda"
    BOSONIZATION = "bosonization"


class OutputFormat(str, Enum):
    JSON = "json"
    MARKDOWN = "markdown"


class CoefficientChoice(str, Enum):
    ALGEBRA = "A"
    FIELD = "k"


class RunConfig(BaseModel):
    """Parameters of one verification run; defaults come from the environment."""
    task: Task = Field(..., description="Suite to run")
    max_hdeg: int = Field(default_factory=lambda: settings.MAX_HDEG, gt=0, description="Largest homological degree")
    weight_window: int = Field(default_factory=lambda: settings.WEIGHT_WINDOW, gt=0, description="Largest |internal weight|")
    max_index: int = Field(default_factory=lambda: settings.MAX_INDEX, gt=0, description="Largest class subscript n")
    max_pq: int = Field(default_factory=lambda: settings.MAX_PQ, gt=0, description="Largest periodicity exponent p, q")
    max_m: int = Field(default_factory=lambda: settings.MAX_M, gt=0, description="Largest derivation index m")
    max_degree: int = Field(
        default_factory=lambda: settings.MAX_YONEDA_DEGREE, gt=0, description="Largest cohomological degree for H^*(-, k)"
    )
    coefficients: CoefficientChoice = Field(CoefficientChoice.ALGEBRA, description="Coefficient module A or k")
    output_format: OutputFormat = Field(
        default_factory=lambda: OutputFormat(settings.OUTPUT_FORMAT), description="Report format"
    )
    workers: int = Field(default_factory=lambda: settings.WORKERS, gt=0, description="Worker threads for independent cells")
    include_timing: bool = Field(False, description="Record elapsed time (breaks byte-identical reports)")

    @field_validator("output_format", mode="before")
    @classmethod
    def accept_md(cls, value):
        return OutputFormat.MARKDOWN if value == "md" else value


def to_jsonable(value: Any) -> Any:
    """Fractions as strings, tuples as lists, dictionary keys as strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


class CheckEntry(BaseModel):
    """One check as it appears in a report."""
    name: str
    indices: Dict[str, Any] = Field(default_factory=dict)
    expected: Any = None
    computed: Any = None
    status: str
    detail: Optional[str] = None


class ReportSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0


class Report(BaseModel):
    """Machine-readable outcome of a run."""
    schema_version: int = Field(1, alias="schema", description="Report schema version")
    task: Task
    parameters: Dict[str, Any] = Field(default_factory=dict)
    status: str
    summary: ReportSummary = Field(default_factory=ReportSummary)
    checks: List[CheckEntry] = Field(default_factory=list)
    tables: Dict[str, Any] = Field(default_factory=dict)
    elapsed_seconds: Optional[float] = Field(None, description="Only present when timing was requested")

    model_config = {"populate_by_name": True}

    @property
    def failures(self) -> List[CheckEntry]:
        return [entry for entry in self.checks if entry.status == "FAIL"]
