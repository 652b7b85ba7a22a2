import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

# Configure logging
logger = logging.getLogger(__name__)


class CheckStatus:
    """Verdicts recorded in reports."""
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


@dataclass
class CheckResult:
    """One verified statement: what was expected, what was computed, and the verdict."""
    name: str
    indices: Dict[str, Any] = field(default_factory=dict)
    expected: Any = None
    computed: Any = None
    status: str = CheckStatus.PASS
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    @property
    def failed(self) -> bool:
        return self.status == CheckStatus.FAIL

    @classmethod
    def compare(
        cls,
        name: str,
        indices: Dict[str, Any],
        expected: Any,
        computed: Any,
        detail: Optional[str] = None,
    ) -> "CheckResult":
        status = CheckStatus.PASS if expected == computed else CheckStatus.FAIL
        if status == CheckStatus.FAIL:
            logger.warning(f"{name} {indices}: expected {expected}, computed {computed}")
        return cls(name, indices, expected, computed, status, detail)

    @classmethod
    def failure(cls, name: str, indices: Dict[str, Any], detail: str, expected: Any = None) -> "CheckResult":
        logger.warning(f"{name} {indices}: {detail}")
        return cls(name, indices, expected, None, CheckStatus.FAIL, detail)

    @classmethod
    def skipped(cls, name: str, indices: Dict[str, Any], detail: str) -> "CheckResult":
        """A statement that could not be evaluated; reported and counted, never a failure."""
        logger.info(f"{name} {indices} skipped: {detail}")
        return cls(name, indices, None, None, CheckStatus.SKIP, detail)

    def sort_key(self):
        keyed = [(k, (0, v, "") if isinstance(v, int) else (1, 0, str(v))) for k, v in self.indices.items()]
        return (self.name, sorted(keyed))


def run_parallel(tasks: List[Callable[[], List[CheckResult]]], workers: int = 1) -> List[CheckResult]:
    """
    Run independent check producers on a thread pool and return their results in a stable order.

    Args:
        tasks: zero-argument callables returning lists of results
        workers: pool size; 1 runs inline

    Returns:
        All results sorted by name and indices
    """
    results: List[CheckResult] = []
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            results.extend(task())
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(lambda task: task(), tasks):
                results.extend(chunk)
    return sorted(results, key=CheckResult.sort_key)
