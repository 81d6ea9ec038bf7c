import concurrent.futures
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .. import oracle
from ..domains import DomainSpec
from ..functionals import FunctionalReport, NumericSettings, evaluate
from ..utils import P_INF, LpTorsionError
from ._checks import (
    CheckResult,
    check_convex_lower,
    check_energy_identity,
    check_interpolation,
    check_monotone_fp,
    check_one_d_sharp,
    check_pq_ceiling,
    check_recursion,
    check_sandwich,
    check_t2_bound,
    check_talenti,
)

# Largest exponent for which the discrete energy identity is checked.
ENERGY_IDENTITY_MAX_P = 3.0


@dataclass
class DomainOutcome:
    """Checks of one corpus domain, or the error that prevented them."""

    label: str
    backend: str
    results: List[CheckResult] = field(default_factory=list)
    report: Optional[FunctionalReport] = None
    error: Optional[str] = None
    unbounded_qs: List[float] = field(default_factory=list)


@dataclass
class CorpusSummary:
    """
    Aggregate of a corpus run.

    Attributes:
        n_domains: Number of corpus domains.
        n_checks: Number of evaluated checks.
        n_failed: Number of checks with margin below -tolerance.
        worst_margins: Smallest margin per check family, with its domain.
        errors: Error message per domain that could not be checked.
        unbounded: Labels of domains with q > 1 entries, which have no finite bound.

    """

    n_domains: int = 0
    n_checks: int = 0
    n_failed: int = 0
    worst_margins: Dict[str, Tuple[float, str]] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)
    unbounded: List[str] = field(default_factory=list)

    @property
    def n_passed(self) -> int:
        return self.n_checks - self.n_failed

    @property
    def exit_status(self) -> int:
        """1 on any violation, else 2 if any domain errored, else 0."""
        if self.n_failed:
            return 1
        if self.errors:
            return 2
        return 0


def applicable_checks(
    report: FunctionalReport, ps: Sequence[float]
) -> List[CheckResult]:
    """
    Runs every check that applies to a report.

    Args:
        report: Functional report of one domain.
        ps: Exponents the report was evaluated for.

    Returns:
        List of CheckResults in a fixed order.

    """
    ps = sorted(set(float(p) for p in ps))
    results: List[CheckResult] = []
    if len(ps) > 1:
        results.extend(check_monotone_fp(report, ps))
    if 1.0 in ps:
        for p in ps:
            if 1 <= p <= 2:
                results.extend(check_interpolation(report, p))
    if 1.0 in ps and 2.0 in ps:
        results.append(check_t2_bound(report))
    results.extend(check_sandwich(report, report.dimension))
    results.extend(check_convex_lower(report))
    results.extend(check_pq_ceiling(report))
    results.extend(check_one_d_sharp(report))
    results.extend(check_talenti(report))
    results.extend(check_recursion(report))

    if report.fields:
        finest = min(torsion.grid.h for torsion in report.fields)
        for torsion in report.fields:
            if torsion.grid.h != finest:
                continue
            for p in ps:
                if p != P_INF and p <= ENERGY_IDENTITY_MAX_P:
                    results.append(
                        check_energy_identity(torsion, p, domain=report.label)
                    )
    return results


def _verify_domain(
    task: Tuple[str, DomainSpec, Sequence[float], Sequence[float], str, NumericSettings]
) -> DomainOutcome:
    label, spec, ps, qs, backend, settings = task
    if backend != "numeric":
        backend = "oracle" if oracle.supports(spec) else "numeric"
    outcome = DomainOutcome(
        label=label, backend=backend, unbounded_qs=[q for q in qs if q > 1]
    )
    try:
        report = evaluate(
            spec,
            ps,
            qs,
            backend=backend,
            settings=settings,
            label=label,
            keep_fields=backend == "numeric",
        )
        outcome.results = applicable_checks(report, ps)
        report.fields = []
        outcome.report = report
    except (ValueError, LpTorsionError) as error:
        outcome.error = f"{type(error).__name__}: {error}"
    return outcome


def run_corpus(
    corpus: Mapping[str, DomainSpec],
    ps: Sequence[float],
    qs: Sequence[float] = (1.0,),
    backend: str = "oracle",
    settings: Optional[NumericSettings] = None,
    workers: int = 1,
    verbose: bool = False,
) -> Tuple[List[DomainOutcome], CorpusSummary]:
    """
    Evaluates every corpus domain and applies all checks that apply to it.

    Domains the oracle cannot handle are evaluated with the numeric backend. Errors
    are recorded per domain and do not stop the run.

    Args:
        corpus: Domains keyed by label, in output order.
        ps: Exponents p.
        qs: Exponents q for F_{p,q}.
        backend: "oracle", "numeric" or "auto".
        settings: Numeric backend settings.
        workers: Number of worker processes; 1 runs in the calling process.
        verbose: Print one line per domain.

    Returns:
        Per-domain outcomes in corpus order and their summary.

    """
    settings = settings or NumericSettings()
    tasks = [
        (label, spec, list(ps), list(qs), backend, settings)
        for label, spec in corpus.items()
    ]

    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(_verify_domain, tasks))
    else:
        outcomes = [_verify_domain(task) for task in tasks]

    if verbose:
        for outcome in outcomes:
            status = outcome.error or (
                f"{sum(result.passed for result in outcome.results)}/"
                f"{len(outcome.results)} checks passed"
            )
            print(f"{outcome.label} ({outcome.backend}): {status}")

    return outcomes, summarize(outcomes)


def check_family(check_id: str) -> str:
    return check_id.split("[", 1)[0]


def summarize(outcomes: Sequence[DomainOutcome]) -> CorpusSummary:
    """
    Counts checks and failures and finds the worst margin per check family.

    Args:
        outcomes: Outcomes of run_corpus.

    Returns:
        CorpusSummary

    """
    summary = CorpusSummary(n_domains=len(outcomes))
    for outcome in outcomes:
        if outcome.error is not None:
            summary.errors[outcome.label] = outcome.error
        if outcome.unbounded_qs:
            summary.unbounded.append(outcome.label)
        for result in outcome.results:
            summary.n_checks += 1
            summary.n_failed += not result.passed
            family = check_family(result.check_id)
            if (
                family not in summary.worst_margins
                or result.margin < summary.worst_margins[family][0]
            ):
                summary.worst_margins[family] = (result.margin, result.domain)
    return summary
