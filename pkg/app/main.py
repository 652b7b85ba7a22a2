import argparse
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.api.models import CoefficientChoice, Report, RunConfig, Task
from app.core.config import settings
from app.core.exceptions import InvalidConfig, ResourceGuardExceeded, SuperJordanError
from app.services import algebra, cohomology, resolution, structure, yoneda
from app.services.checks import CheckResult
from app.services.report_generator import ReportGenerator, TableKind

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE_GUARD = 3

TaskOutcome = Tuple[List[CheckResult], Dict[str, object]]


def _rewriting(config: RunConfig) -> TaskOutcome:
    return algebra.verify_rewriting(), {}


def _resolution(config: RunConfig) -> TaskOutcome:
    return resolution.verify_resolution(max_index=config.max_hdeg + 2, f_degree=min(config.max_hdeg, 5)), {}


def _cohomology(config: RunConfig) -> TaskOutcome:
    n_max, w_max = config.max_hdeg, config.weight_window
    oracle_degree = min(n_max, settings.ORACLE_MAX_HDEG)
    oracle_weight = min(w_max, settings.ORACLE_MAX_WEIGHT)
    if config.coefficients == CoefficientChoice.FIELD:
        results = cohomology.verify_field_cohomology(n_max, config.workers)
        results += cohomology.verify_oracle(oracle_degree, 0, cohomology.Coefficients.FIELD)
        dims = [
            {"degree": n, "weight": w, "dimension": cohomology.cohomology_cell(n, w, cohomology.Coefficients.FIELD).dimension}
            for n in range(n_max + 1) for w in range(-(n + 1), 1)
        ]
        series = [yoneda.yoneda_dimension(n) for n in range(n_max + 1)]
        return results, {TableKind.DIMENSIONS: dims, TableKind.SERIES: [{"name": "H^*(A, k)", "coefficients": series}]}

    results = cohomology.verify_cohomology(n_max, w_max, config.workers)
    results += cohomology.verify_complex_property(n_max, w_max)
    results += cohomology.verify_explicit_differentials(n_max, w_max)
    results += cohomology.verify_periodicity(n_max, w_max)
    for lemma in cohomology.LemmaId:
        results += cohomology.verify_kernel_image_bases(lemma, w_max)
    results += cohomology.verify_oracle(oracle_degree, oracle_weight)
    dims = [
        {"degree": n, "weight": w, "dimension": cohomology.cohomology_cell(n, w).dimension}
        for n in range(n_max + 1) for w in range(-(n + 1), w_max + 1)
    ]
    return results, {TableKind.DIMENSIONS: dims}


def _homology(config: RunConfig) -> TaskOutcome:
    n_max, w_max = config.max_hdeg, config.weight_window
    results = cohomology.verify_homology(n_max, w_max, config.workers)
    results += cohomology.verify_homology_oracle(
        min(n_max, settings.ORACLE_HOMOLOGY_MAX_HDEG), min(w_max, settings.ORACLE_HOMOLOGY_MAX_WEIGHT)
    )
    dims = [
        {"degree": n, "weight": w, "dimension": cohomology.homology_cell(n, w).dimension}
        for n in range(n_max + 1) for w in range(0, w_max + 1)
    ]
    return results, {TableKind.DIMENSIONS: dims}


def _cup_table(config: RunConfig) -> TaskOutcome:
    results = structure.verify_cup_table(config.max_index, config.max_pq, config.workers)
    results += structure.verify_cup_properties()
    results += structure.verify_cup_periodicity(2 * config.max_pq + 1)
    return results, {}


def _virasoro(config: RunConfig) -> TaskOutcome:
    results = structure.verify_derivations(config.max_m)
    results += structure.verify_h1_brackets(config.max_m)
    results += structure.virasoro_check(config.max_m)
    return results, {}


def _brackets(config: RunConfig) -> TaskOutcome:
    max_m = min(config.max_m, 4)
    results = structure.verify_liftings(min(config.max_hdeg, 4))
    results += structure.verify_lifting_agreement(config.max_index)
    results += structure.verify_h1_action(max_m, config.max_index, config.max_pq, config.workers)
    results += structure.verify_jacobi_extension(config.max_index)
    results += structure.verify_poisson()
    results += structure.verify_periodicity_transport(max_m, config.max_index, config.max_pq)
    results += structure.verify_intermediate_series(config.max_pq, config.max_index + 2)
    return results, {TableKind.BRACKETS: structure.bracket_table(max_m, config.max_index, config.max_pq)}


def _yoneda(config: RunConfig) -> TaskOutcome:
    results = yoneda.verify_yoneda(config.max_degree, min(config.max_degree, 10), config.workers)
    series = [yoneda.yoneda_dimension(n) for n in range(config.max_degree + 1)]
    return results, {TableKind.SERIES: [{"name": "H^*(A, k)", "coefficients": series}]}


def _bosonization(config: RunConfig) -> TaskOutcome:
    results = yoneda.verify_bosonization(config.max_degree)
    cells = [
        {"p": p, "q": q, "basis": yoneda.e2_page(p, q).basis}
        for p in (0, 1) for q in range(config.max_degree + 1)
    ]
    summary = yoneda.bosonization_yoneda(config.max_degree)
    tables = {
        TableKind.E2: cells,
        TableKind.SERIES: [{"name": "H^*(A#kZ, k)", "coefficients": summary["dimensions"]}],
        TableKind.VERDICTS: [{"algebra": v.algebra, "is_k2": v.is_k2, "witnesses": v.witnesses} for v in yoneda.k2_verdicts()],
    }
    return results, tables


TASKS: Dict[Task, Callable[[RunConfig], TaskOutcome]] = {
    Task.VERIFY_REWRITING: _rewriting,
    Task.VERIFY_RESOLUTION: _resolution,
    Task.COHOMOLOGY: _cohomology,
    Task.HOMOLOGY: _homology,
    Task.CUP_TABLE: _cup_table,
    Task.VIRASORO: _virasoro,
    Task.BRACKETS: _brackets,
    Task.YONEDA: _yoneda,
    Task.BOSONIZATION: _bosonization,
}


def run(config: RunConfig) -> Tuple[Report, int]:
    """
    Run one suite and build its report.

    Returns:
        The report and the process exit status (0 pass, 1 verification failure)

    Raises:
        ResourceGuardExceeded: if the bar oracle window is too large
    """
    logger.info(f"Running {config.task.value}")
    started = time.perf_counter()
    try:
        results, tables = TASKS[config.task](config)
    except ResourceGuardExceeded:
        raise
    except SuperJordanError as e:
        logger.error(f"{config.task.value} aborted: {e}")
        results, tables = [CheckResult.failure(config.task.value, {}, f"{type(e).__name__}: {e}")], {}
    report = ReportGenerator.build(config, results, tables, time.perf_counter() - started)
    return report, EXIT_PASS if report.summary.failed == 0 else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="super-jordan",
        description="Verify the homological structure of the super Jordan plane and its bosonization.",
    )
    parser.add_argument("task", choices=[t.value for t in Task])
    parser.add_argument("--max-hdeg", type=int, help=f"largest homological degree (default {settings.MAX_HDEG})")
    parser.add_argument("--weight-window", type=int, help=f"largest |weight| (default {settings.WEIGHT_WINDOW})")
    parser.add_argument("--max-index", type=int, help=f"largest class subscript (default {settings.MAX_INDEX})")
    parser.add_argument("--max-pq", type=int, help=f"largest periodicity exponent (default {settings.MAX_PQ})")
    parser.add_argument("--max-m", type=int, help=f"largest derivation index (default {settings.MAX_M})")
    parser.add_argument("--max-degree", type=int, help=f"largest degree of H^*(-, k) (default {settings.MAX_YONEDA_DEGREE})")
    parser.add_argument("--coeff", choices=[c.value for c in CoefficientChoice], default=CoefficientChoice.ALGEBRA.value)
    parser.add_argument("--format", dest="output_format", choices=["json", "md", "markdown"])
    parser.add_argument("--workers", type=int, help=f"worker threads (default {settings.WORKERS})")
    parser.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> Tuple[RunConfig, str]:
    args = build_parser().parse_args(argv)
    values = {
        "task": args.task,
        "max_hdeg": args.max_hdeg,
        "weight_window": args.weight_window,
        "max_index": args.max_index,
        "max_pq": args.max_pq,
        "max_m": args.max_m,
        "max_degree": args.max_degree,
        "coefficients": args.coeff,
        "output_format": args.output_format,
        "workers": args.workers,
        "include_timing": args.timing,
    }
    try:
        config = RunConfig(**{k: v for k, v in values.items() if v is not None})
    except ValidationError as e:
        raise InvalidConfig(str(e)) from e
    return config, args.log_level


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config, log_level = parse_config(argv)
    except InvalidConfig as e:
        print(f"invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, str(log_level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        report, status = run(config)
    except ResourceGuardExceeded as e:
        logger.error(f"Resource guard exceeded: {e}")
        return EXIT_RESOURCE_GUARD
    sys.stdout.write(ReportGenerator.render(report, config.output_format))
    return status


if __name__ == "__main__":
    sys.exit(main())
