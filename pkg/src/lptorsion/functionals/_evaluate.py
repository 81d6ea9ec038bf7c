import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .. import oracle
from ..domains import Cuboid, DomainSpec, Ellipsoid, IntervalUnion
from ..oracle import Lambda1Bracket
from ..pde import (
    TorsionField,
    lambda1_numeric,
    lp_norm,
    rasterize,
    richardson,
    solve_torsion,
)
from ..utils import P_INF, UnsupportedDomainError
from ._formulas import f_p, f_pq

BACKENDS = ("oracle", "numeric", "auto")

Range = Tuple[float, float]


@dataclass(frozen=True)
class NumericSettings:
    """Settings of the finite-difference backend."""

    h: float = 1.0 / 64
    tol: float = 1e-10
    richardson: bool = True
    jacobi: bool = False


@dataclass(eq=False)
class FunctionalReport:
    """
    T_p, lambda_1, |Omega| and the products F_p and F_{p,q} of one domain.

    F values are ranges (lower, upper): the endpoints coincide unless lambda_1 is only
    known through a bracket. For the numeric backend, error_estimates holds the
    Richardson error per entry, keyed as "lambda1", "v_max", "tp[p]", "fp[p]" and
    "fpq[p,q]".
    """

    spec: DomainSpec
    label: str
    backend: str
    measure: float
    lambda1: Lambda1Bracket
    v_max: float
    tp: Dict[float, float]
    fp: Dict[float, Range]
    fpq: Dict[Tuple[float, float], Range]
    settings: Optional[NumericSettings] = None
    error_estimates: Dict[str, float] = field(default_factory=dict)
    fields: List[TorsionField] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    def error(self, key: str) -> float:
        return self.error_estimates.get(key, 0.0)


def format_p(p: float) -> str:
    return "inf" if p == P_INF else f"{p:g}"


def _check_exponents(ps: Sequence[float], qs: Sequence[float]):
    if not ps:
        raise ValueError("At least one exponent p is needed.")
    for p in ps:
        if not (p >= 1 or p == P_INF):
            raise ValueError(f"The exponent p must be at least 1, got {p}.")
    for q in qs:
        if not math.isfinite(q):
            raise ValueError(f"The exponent q must be finite, got {q}.")


def _shape_key(piece: DomainSpec) -> Hashable:
    """Translation-invariant key; congruent components share one numeric solve."""
    if isinstance(piece, IntervalUnion):
        ((a, b),) = piece.intervals
        return ("interval", b - a)
    if isinstance(piece, Ellipsoid):
        return ("ellipsoid", piece.semi_axes)
    if isinstance(piece, Cuboid):
        return ("cuboid", piece.sides)
    return ("other", id(piece))


@dataclass
class _NumericQuantities:
    tp_power: Dict[float, float]
    v_max: float
    lambda1: float
    fields: List[TorsionField]


def _solve_numeric(
    spec: DomainSpec,
    ps: Sequence[float],
    h: float,
    settings: NumericSettings,
    keep_fields: bool,
    verbose: bool,
) -> _NumericQuantities:
    groups: Dict[Hashable, Tuple[DomainSpec, int]] = {}
    for piece in spec.components():
        key = _shape_key(piece)
        representative, count = groups.get(key, (piece, 0))
        groups[key] = (representative, count + 1)

    tp_power = {p: 0.0 for p in ps if p != P_INF}
    v_max, lambda1 = 0.0, math.inf
    fields = []
    for representative, count in groups.values():
        grid = rasterize(representative, h)
        torsion = solve_torsion(grid, settings.tol, settings.jacobi, verbose)
        eigen = lambda1_numeric(
            grid, settings.tol, jacobi=settings.jacobi, verbose=verbose
        )
        for p in tp_power:
            tp_power[p] += count * lp_norm(torsion, p) ** p
        v_max = max(v_max, lp_norm(torsion, P_INF))
        lambda1 = min(lambda1, eigen.lambda1)
        if keep_fields:
            fields.append(torsion)
    return _NumericQuantities(tp_power, v_max, lambda1, fields)


def _extrapolate(coarse: float, fine: Optional[float]) -> Tuple[float, float]:
    if fine is None:
        return coarse, 0.0
    result = richardson(coarse, fine)
    return result.value, result.error


def _numeric_backend(
    spec: DomainSpec,
    ps: Sequence[float],
    settings: NumericSettings,
    keep_fields: bool,
    verbose: bool,
) -> Tuple[
    Dict[float, float], float, Lambda1Bracket, Dict[str, float], List[TorsionField]
]:
    coarse = _solve_numeric(spec, ps, settings.h, settings, keep_fields, verbose)
    fine = (
        _solve_numeric(spec, ps, settings.h / 2, settings, keep_fields, verbose)
        if settings.richardson
        else None
    )

    errors: Dict[str, float] = {}
    tp: Dict[float, float] = {}
    for p in ps:
        if p == P_INF:
            continue
        coarse_value = coarse.tp_power[p] ** (1.0 / p)
        fine_value = None if fine is None else fine.tp_power[p] ** (1.0 / p)
        tp[p], errors[f"tp[{format_p(p)}]"] = _extrapolate(coarse_value, fine_value)

    v_max, errors["v_max"] = _extrapolate(
        coarse.v_max, None if fine is None else fine.v_max
    )
    if P_INF in ps:
        tp[P_INF], errors[f"tp[{format_p(P_INF)}]"] = v_max, errors["v_max"]

    lambda1, errors["lambda1"] = _extrapolate(
        coarse.lambda1, None if fine is None else fine.lambda1
    )
    values = {"lambda1": lambda1, "v_max": v_max}
    values.update({f"tp[{format_p(p)}]": tp[p] for p in tp})
    for key, value in values.items():
        if errors[key] > 0.01 * value:
            warnings.warn(
                f"Richardson error estimate of {key} exceeds 1% of its value; "
                "consider a finer grid."
            )

    fields = coarse.fields + (fine.fields if fine is not None else [])
    return tp, v_max, Lambda1Bracket.point(lambda1), errors, fields


def _product_range(values: Sequence[float]) -> Range:
    return min(values), max(values)


def evaluate(
    spec: DomainSpec,
    ps: Sequence[float],
    qs: Sequence[float] = (1.0,),
    backend: str = "auto",
    settings: Optional[NumericSettings] = None,
    label: str = "",
    keep_fields: bool = False,
    verbose: bool = False,
) -> FunctionalReport:
    """
    Computes T_p, lambda_1 and the products F_p, F_{p,q} of a domain.

    Args:
        spec: Domain.
        ps: Exponents p >= 1 (P_INF allowed).
        qs: Eigenvalue exponents q for F_{p,q}.
        backend: "oracle" (closed forms), "numeric" (finite differences, dimension <= 2)
            or "auto" (oracle where available).
        settings: Numeric backend settings.
        label: Name of the domain in reports.
        keep_fields: Keep the computed torsion fields in the report.
        verbose: Print solver progress.

    Returns:
        FunctionalReport

    """
    # pylint: disable=too-many-arguments,too-many-locals
    if backend not in BACKENDS:
        raise ValueError(
            f"Unknown backend '{backend}', choose one of {', '.join(BACKENDS)}."
        )
    _check_exponents(ps, qs)
    ps = list(dict.fromkeys(float(p) for p in ps))
    qs = list(dict.fromkeys(float(q) for q in qs))

    if backend == "auto":
        backend = "oracle" if oracle.supports(spec) else "numeric"

    errors: Dict[str, float] = {}
    fields: List[TorsionField] = []
    if backend == "oracle":
        if not oracle.supports(spec):
            raise UnsupportedDomainError(
                f"The oracle backend does not support {type(spec).__name__}; "
                "use the numeric backend."
            )
        settings = None
        tp = {p: oracle.tp_norm(spec, p) for p in ps}
        v_max = oracle.v_max(spec)
        lambda1 = oracle.lambda1(spec)
    else:
        if spec.dimension > 2:
            raise UnsupportedDomainError(
                "The numeric backend handles dimensions 1 and 2 only, got "
                f"{spec.dimension}."
            )
        settings = settings or NumericSettings()
        tp, v_max, lambda1, errors, fields = _numeric_backend(
            spec, ps, settings, keep_fields, verbose
        )

    measure = spec.measure()
    m = spec.dimension
    lambda_relative = errors.get("lambda1", 0.0) / lambda1.upper

    fp: Dict[float, Range] = {}
    fpq: Dict[Tuple[float, float], Range] = {}
    for p in ps:
        tp_relative = errors.get(f"tp[{format_p(p)}]", 0.0) / tp[p]
        fp[p] = _product_range(
            [f_p(tp[p], value, measure, p) for value in lambda1.endpoints]
        )
        if errors:
            errors[f"fp[{format_p(p)}]"] = fp[p][1] * (tp_relative + lambda_relative)
        for q in qs:
            fpq[(p, q)] = _product_range(
                [f_pq(tp[p], value, measure, p, q, m) for value in lambda1.endpoints]
            )
            if errors:
                errors[f"fpq[{format_p(p)},{q:g}]"] = fpq[(p, q)][1] * (
                    tp_relative + abs(q) * lambda_relative
                )

    return FunctionalReport(
        spec=spec,
        label=label,
        backend=backend,
        measure=measure,
        lambda1=lambda1,
        v_max=v_max,
        tp=tp,
        fp=fp,
        fpq=fpq,
        settings=settings,
        error_estimates=errors,
        fields=fields,
    )
