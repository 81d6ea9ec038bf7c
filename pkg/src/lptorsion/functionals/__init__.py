from ._formulas import f_p, f_pq, measure_exponent
from ._evaluate import (
    BACKENDS,
    NumericSettings,
    FunctionalReport,
    evaluate,
    format_p,
)
from ._serialize import (
    FORMATS,
    REPORT_COLUMNS,
    report_to_dict,
    reports_frame,
    render_reports,
    write_reports,
)
