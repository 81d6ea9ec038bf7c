import dataclasses
from typing import Any, Dict, List, Sequence

import jinja2
import pandas as pd
import yaml

from ..domains import spec_to_dict
from ..utils import format_float, write_atomic
from ..utils.constants import OUTPUT_DIGITS
from ._evaluate import FunctionalReport, format_p

_TEMPLATE_ENVIRONMENT = jinja2.Environment(
    loader=jinja2.PackageLoader("lptorsion", "templates"),
    undefined=jinja2.StrictUndefined,
    keep_trailing_newline=True,
)
_TEMPLATE_ENVIRONMENT.filters["g"] = format_float
_TEMPLATE_ENVIRONMENT.filters["p"] = format_p

REPORT_COLUMNS = ["domain", "p", "q", "measure", "lambda1", "tp", "fp", "fpq", "err"]

FORMATS = ("csv", "txt", "yaml")


def report_to_dict(report: FunctionalReport) -> Dict[str, Any]:
    """Structured document of a FunctionalReport; torsion fields are left out."""
    return {
        "domain": report.label,
        "spec": spec_to_dict(report.spec),
        "backend": report.backend,
        "settings": dataclasses.asdict(report.settings) if report.settings else None,
        "measure": report.measure,
        "lambda1": {
            "lower": report.lambda1.lower,
            "upper": report.lambda1.upper,
            "exact": report.lambda1.exact,
        },
        "v_max": report.v_max,
        "tp": {format_p(p): value for p, value in report.tp.items()},
        "fp": {format_p(p): list(value) for p, value in report.fp.items()},
        "fpq": {
            f"{format_p(p)},{q:g}": list(value) for (p, q), value in report.fpq.items()
        },
        "error_estimates": dict(report.error_estimates),
    }


def reports_frame(reports: Sequence[FunctionalReport]) -> pd.DataFrame:
    """
    Flat table with one row per (domain, p, q).

    Interval-valued entries are represented by their midpoint; err is the half-width of
    the F_{p,q} range plus its numeric error estimate.

    """
    rows: List[Dict[str, Any]] = []
    for report in reports:
        for (p, q), (lower, upper) in report.fpq.items():
            fp_lower, fp_upper = report.fp[p]
            rows.append(
                {
                    "domain": report.label,
                    "p": format_p(p),
                    "q": q,
                    "measure": report.measure,
                    "lambda1": report.lambda1.midpoint,
                    "tp": report.tp[p],
                    "fp": 0.5 * (fp_lower + fp_upper),
                    "fpq": 0.5 * (lower + upper),
                    "err": 0.5 * (upper - lower)
                    + report.error(f"fpq[{format_p(p)},{q:g}]"),
                }
            )
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def render_reports(reports: Sequence[FunctionalReport], fmt: str = "csv") -> str:
    """
    Renders reports in one of the output formats.

    Args:
        reports: Reports to render.
        fmt: "csv", "txt" or "yaml".

    Returns:
        The rendered document.

    """
    if fmt == "csv":
        return reports_frame(reports).to_csv(
            index=False, float_format=f"%.{OUTPUT_DIGITS}g"
        )
    if fmt == "yaml":
        return yaml.safe_dump(
            {"reports": [report_to_dict(report) for report in reports]}, sort_keys=False
        )
    if fmt == "txt":
        return _TEMPLATE_ENVIRONMENT.get_template("report.txt.jinja2").render(
            {"reports": reports}
        )
    raise ValueError(
        f"Unknown output format '{fmt}', choose one of {', '.join(FORMATS)}."
    )


def write_reports(
    reports: Sequence[FunctionalReport], filename: str, fmt: str = "csv"
):
    """
    Writes reports atomically to a file.

    Args:
        reports: Reports to write.
        filename: Output path.
        fmt: "csv", "txt" or "yaml".

    Returns:
        Nothing

    """
    write_atomic(render_reports(reports, fmt), filename)
