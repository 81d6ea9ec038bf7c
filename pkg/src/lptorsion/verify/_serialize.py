import dataclasses
from typing import Any, Dict, Sequence

import jinja2
import pandas as pd
import yaml

from ..functionals import FORMATS
from ..utils import format_float, write_atomic
from ..utils.constants import OUTPUT_DIGITS
from ._checks import CheckResult
from ._corpus import CorpusSummary, DomainOutcome

_TEMPLATE_ENVIRONMENT = jinja2.Environment(
    loader=jinja2.PackageLoader("lptorsion", "templates"),
    undefined=jinja2.StrictUndefined,
    keep_trailing_newline=True,
)
_TEMPLATE_ENVIRONMENT.filters["g"] = format_float

RESULT_COLUMNS = ["check_id", "domain", "margin", "tolerance", "passed"]


def results_frame(results: Sequence[CheckResult]) -> pd.DataFrame:
    """CSV projection with columns check_id, domain, margin, tolerance, passed."""
    return pd.DataFrame(
        [dataclasses.asdict(result) for result in results], columns=RESULT_COLUMNS
    )


def summary_to_dict(summary: CorpusSummary) -> Dict[str, Any]:
    return {
        "domains": summary.n_domains,
        "checks": summary.n_checks,
        "passed": summary.n_passed,
        "failed": summary.n_failed,
        "exit_status": summary.exit_status,
        "worst_margins": {
            family: {"margin": margin, "domain": domain}
            for family, (margin, domain) in summary.worst_margins.items()
        },
        "errors": dict(summary.errors),
        "expected_unbounded": list(summary.unbounded),
    }


def render_results(
    outcomes: Sequence[DomainOutcome], summary: CorpusSummary, fmt: str = "csv"
) -> str:
    """
    Renders the checks of a corpus run.

    Args:
        outcomes: Per-domain outcomes.
        summary: Their summary.
        fmt: "csv" (check rows only), "txt" or "yaml" (check rows and summary block).

    Returns:
        The rendered document.

    """
    results = [result for outcome in outcomes for result in outcome.results]
    if fmt == "csv":
        return results_frame(results).to_csv(
            index=False, float_format=f"%.{OUTPUT_DIGITS}g"
        )
    if fmt == "yaml":
        return yaml.safe_dump(
            {
                "checks": [dataclasses.asdict(result) for result in results],
                "summary": summary_to_dict(summary),
            },
            sort_keys=False,
        )
    if fmt == "txt":
        return _TEMPLATE_ENVIRONMENT.get_template("verify.txt.jinja2").render(
            {"outcomes": outcomes, "summary": summary}
        )
    raise ValueError(
        f"Unknown output format '{fmt}', choose one of {', '.join(FORMATS)}."
    )


def write_results(
    outcomes: Sequence[DomainOutcome],
    summary: CorpusSummary,
    filename: str,
    fmt: str = "csv",
):
    """
    Writes the checks of a corpus run atomically to a file.

    Returns:
        Nothing

    """
    write_atomic(render_results(outcomes, summary, fmt), filename)
