from ._checks import (
    CheckResult,
    check_monotone_fp,
    check_interpolation,
    check_t2_bound,
    check_sandwich,
    check_energy_identity,
    check_convex_lower,
    check_pq_ceiling,
    check_one_d_sharp,
    check_talenti,
    check_recursion,
)
from ._corpus import (
    DomainOutcome,
    CorpusSummary,
    applicable_checks,
    check_family,
    run_corpus,
    summarize,
)
from ._serialize import (
    RESULT_COLUMNS,
    results_frame,
    summary_to_dict,
    render_results,
    write_results,
)
