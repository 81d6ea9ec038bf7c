import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

from ..constructions import (
    g_p_convex_lower,
    one_d_sharp,
    one_d_sharp_inf,
    pq_ceiling,
    sandwich_constant,
    talenti_fp0,
)
from ..functionals import FunctionalReport, f_p, f_pq, format_p
from ..pde import TorsionField, grad_energy, lp_norm
from ..utils import P_INF
from ..utils.constants import EXACT_TOLERANCE

# Numeric tolerances are this multiple of the Richardson error estimate.
RICHARDSON_SAFETY = 3.0


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one inequality or identity check.

    The margin is the slack of the inequality (negative when violated); a check passes
    when margin >= -tolerance.
    """

    check_id: str
    domain: str
    margin: float
    tolerance: float
    passed: bool

    @classmethod
    def from_margin(
        cls, check_id: str, domain: str, margin: float, tolerance: float
    ) -> "CheckResult":
        passed = bool(margin >= -tolerance)
        return cls(check_id, domain, float(margin), float(tolerance), passed)


def _adverse(margin: Callable[[float], float], report: FunctionalReport) -> float:
    """Smallest margin over the endpoints of the eigenvalue bracket."""
    return min(margin(value) for value in report.lambda1.endpoints)


def _reference_values(report: FunctionalReport) -> Dict[str, float]:
    values = {"lambda1": report.lambda1.upper, "v_max": report.v_max}
    values.update({f"tp[{format_p(p)}]": value for p, value in report.tp.items()})
    values.update({f"fp[{format_p(p)}]": value[1] for p, value in report.fp.items()})
    values.update(
        {
            f"fpq[{format_p(p)},{q:g}]": value[1]
            for (p, q), value in report.fpq.items()
        }
    )
    return values


def _tolerance(
    report: FunctionalReport, keys: Sequence[str], reference: float, weight: float = 1.0
) -> float:
    """
    Tolerance of a margin of magnitude reference whose inputs carry the relative
    errors of keys; never below round-off.
    """
    values = _reference_values(report)
    relative = math.fsum(
        report.error(key) / abs(values[key]) for key in keys if values.get(key)
    )
    return max(
        RICHARDSON_SAFETY * weight * relative * abs(reference),
        EXACT_TOLERANCE * abs(reference),
    )


def _require(report: FunctionalReport, ps: Sequence[float]):
    missing = [format_p(p) for p in ps if p not in report.tp]
    if missing:
        raise ValueError(
            f"The report of '{report.label}' has no entries for "
            f"p = {', '.join(missing)}."
        )


def _fp(report: FunctionalReport, p: float, lambda1: float) -> float:
    return f_p(report.tp[p], lambda1, report.measure, p)


def _fpq(report: FunctionalReport, p: float, q: float, lambda1: float) -> float:
    return f_pq(report.tp[p], lambda1, report.measure, p, q, report.dimension)


def check_monotone_fp(
    report: FunctionalReport, ps: Sequence[float]
) -> List[CheckResult]:
    """
    Checks F_p <= F_q for consecutive exponents p < q (P_INF included when present).

    Args:
        report: Functional report containing every exponent in ps.
        ps: Exponents.

    Returns:
        One CheckResult per consecutive pair.

    """
    ps = sorted(set(float(p) for p in ps))
    _require(report, ps)
    results = []
    for p, q in zip(ps[:-1], ps[1:]):
        margin = _adverse(
            lambda value, p=p, q=q: _fp(report, q, value) - _fp(report, p, value),
            report,
        )
        results.append(
            CheckResult.from_margin(
                f"monotone_fp[{format_p(p)}<={format_p(q)}]",
                report.label,
                margin,
                _tolerance(
                    report,
                    [f"fp[{format_p(p)}]", f"fp[{format_p(q)}]"],
                    report.fp[q][1],
                ),
            )
        )
    return results


def check_interpolation(report: FunctionalReport, p: float) -> List[CheckResult]:
    """
    Checks F_p <= F_1^(1/p) <= 1 for p in [1, 2].

    Returns:
        Two CheckResults: the interpolation inequality and F_1 <= 1.

    """
    if not 1 <= p <= 2:
        raise ValueError(f"The interpolation check needs p in [1, 2], got {p}.")
    p = float(p)
    _require(report, [1.0, p])
    interpolation = _adverse(
        lambda value: _fp(report, 1.0, value) ** (1 / p) - _fp(report, p, value), report
    )
    below_one = _adverse(lambda value: 1 - _fp(report, 1.0, value), report)
    return [
        CheckResult.from_margin(
            f"interpolation[{format_p(p)}]",
            report.label,
            interpolation,
            _tolerance(report, ["fp[1]", f"fp[{format_p(p)}]"], report.fp[p][1]),
        ),
        CheckResult.from_margin(
            "f1_at_most_one",
            report.label,
            below_one,
            _tolerance(report, ["fp[1]"], 1.0),
        ),
    ]


def check_t2_bound(report: FunctionalReport) -> CheckResult:
    """Checks T_2 <= (T_1 / lambda_1)^(1/2)."""
    _require(report, [1.0, 2.0])
    t1, t2 = report.tp[1.0], report.tp[2.0]
    margin = _adverse(lambda value: math.sqrt(t1 / value) - t2, report)
    return CheckResult.from_margin(
        "t2_bound",
        report.label,
        margin,
        _tolerance(report, ["tp[1]", "tp[2]", "lambda1"], t2),
    )


def check_sandwich(report: FunctionalReport, m: int) -> List[CheckResult]:
    """Checks 1 <= lambda_1 * max v <= 4 + 3 m log 2."""
    upper_constant = sandwich_constant(m)
    tolerance = _tolerance(
        report, ["lambda1", "v_max"], report.lambda1.upper * report.v_max
    )
    return [
        CheckResult.from_margin(
            "sandwich_lower",
            report.label,
            _adverse(lambda value: value * report.v_max - 1, report),
            tolerance,
        ),
        CheckResult.from_margin(
            "sandwich_upper",
            report.label,
            _adverse(lambda value: upper_constant - value * report.v_max, report),
            tolerance,
        ),
    ]


def check_energy_identity(
    field: TorsionField, p: float, rel_tol: float = 1e-2, domain: str = ""
) -> CheckResult:
    """
    Checks the integration by parts identity
    int v^p = (4p / (p+1)^2) int |D v^((p+1)/2)|^2 on a discrete torsion field.

    The margin is rel_tol minus the relative mismatch of both sides; the tolerance is 0.
    """
    if p == P_INF:
        raise ValueError("The energy identity needs a finite exponent p.")
    lhs = lp_norm(field, p) ** p
    rhs = 4 * p / (p + 1) ** 2 * grad_energy(field, p)
    mismatch = abs(lhs - rhs) / lhs
    return CheckResult.from_margin(
        f"energy_identity[{format_p(p)}]", domain, rel_tol - mismatch, 0.0
    )


def check_convex_lower(report: FunctionalReport) -> List[CheckResult]:
    """Checks F_p >= g_p_convex_lower(m, p) on convex domains for every p."""
    if not report.spec.is_convex:
        return []
    results = []
    for p in report.tp:
        bound = g_p_convex_lower(report.dimension, p)
        results.append(
            CheckResult.from_margin(
                f"convex_lower[{format_p(p)}]",
                report.label,
                _adverse(lambda value, p=p: _fp(report, p, value) - bound, report),
                _tolerance(report, [f"fp[{format_p(p)}]"], report.fp[p][0]),
            )
        )
    return results


def check_pq_ceiling(report: FunctionalReport) -> List[CheckResult]:
    """Checks F_{p,q} <= pq_ceiling(m, q) for every entry with q <= 1."""
    results = []
    for p, q in report.fpq:
        if q > 1:
            continue
        ceiling = pq_ceiling(report.dimension, q)
        key = f"fpq[{format_p(p)},{q:g}]"
        results.append(
            CheckResult.from_margin(
                f"pq_ceiling[{format_p(p)},{q:g}]",
                report.label,
                _adverse(
                    lambda value, p=p, q=q: ceiling - _fpq(report, p, q, value),
                    report,
                ),
                _tolerance(report, [key], report.fpq[(p, q)][1]),
            )
        )
    return results


def check_one_d_sharp(report: FunctionalReport) -> List[CheckResult]:
    """Checks F_{p,q} <= one_d_sharp(p, q) in one dimension for every q <= 1."""
    if report.dimension != 1:
        return []
    results = []
    for p, q in report.fpq:
        if q > 1:
            continue
        bound = one_d_sharp_inf(q) if p == P_INF else one_d_sharp(p, q)
        key = f"fpq[{format_p(p)},{q:g}]"
        results.append(
            CheckResult.from_margin(
                f"one_d_sharp[{format_p(p)},{q:g}]",
                report.label,
                _adverse(
                    lambda value, p=p, q=q: bound - _fpq(report, p, q, value),
                    report,
                ),
                _tolerance(report, [key], max(report.fpq[(p, q)][1], bound)),
            )
        )
    return results


def check_talenti(report: FunctionalReport) -> List[CheckResult]:
    """Checks F_{p,0} <= talenti_fp0(m, p); F_{p,0} does not involve lambda_1."""
    results = []
    for p, tp in report.tp.items():
        value = f_pq(tp, 1.0, report.measure, p, 0.0, report.dimension)
        bound = talenti_fp0(report.dimension, p)
        results.append(
            CheckResult.from_margin(
                f"talenti[{format_p(p)}]",
                report.label,
                bound - value,
                _tolerance(report, [f"tp[{format_p(p)}]"], max(value, bound)),
            )
        )
    return results


def check_recursion(report: FunctionalReport) -> List[CheckResult]:
    """
    Checks (4p / (p+1)^2) F_{p+1}^(p+1) <= F_p^p whenever both p and p + 1 are in the
    report.
    """
    results = []
    lower, upper = report.lambda1.endpoints
    for p in report.tp:
        if p == P_INF or p + 1 not in report.tp:
            continue
        # F_p^p - c F_{p+1}^(p+1) = lambda^p / |Omega| (T_p^p - c lambda T_{p+1}^(p+1))
        factor = (
            report.tp[p] ** p
            - 4 * p / (p + 1) ** 2 * upper * report.tp[p + 1] ** (p + 1)
        )
        scale = (lower if factor >= 0 else upper) ** p / report.measure
        results.append(
            CheckResult.from_margin(
                f"recursion[{format_p(p)}]",
                report.label,
                scale * factor,
                _tolerance(
                    report,
                    [f"fp[{format_p(p)}]", f"fp[{format_p(p + 1)}]"],
                    report.fp[p][1] ** p,
                    weight=p + 1,
                ),
            )
        )
    return results
