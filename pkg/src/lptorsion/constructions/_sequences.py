from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from ..domains import Ball, DomainSpec, arrange_along_axis
from ..functionals import FunctionalReport, evaluate
from ..oracle import tp_norm
from ..specialfn import ball_lambda1, ball_volume
from ..utils import P_INF, round_significant
from ._bounds import _check_dimension, _check_p, fp_ball, pq_ceiling

# Distance between consecutive balls of a union; the unit-ball diameter.
BALL_GAP = 2.0

SEQUENCE_COLUMNS = ["n", "r_n", "measure", "lambda1", "tp", "fp", "predicted_bound"]


@dataclass(eq=False)
class SequenceSample:
    """
    One member of an extremal domain sequence together with the value predicted for it.

    Attributes:
        family: "ball_cluster" or "equal_balls".
        n: Index of the member (number of small balls).
        r_n: Radius of the small balls.
        spec: The domain.
        p: Torsion exponent.
        q: Eigenvalue exponent (1 for F_p).
        predicted_bound: Value predicted at this n.
        fp_value: Computed F_{p,q} of spec.
        is_upper_bound: True if fp_value must not exceed predicted_bound.
        report: Full functional report of spec.

    """

    family: str
    n: int
    r_n: float
    spec: DomainSpec
    p: float
    q: float
    predicted_bound: float
    fp_value: float
    is_upper_bound: bool
    report: FunctionalReport

    def within_bound(self, tol: float = 1e-12) -> bool:
        if not self.is_upper_bound:
            return True
        return self.fp_value <= self.predicted_bound * (1 + tol)


def _check_n(n: int):
    if int(n) != n or n < 1:
        raise ValueError(f"The number of balls must be a positive integer, got {n}.")


def cluster_radius(m: int, p: float, n: int) -> float:
    """Radius (m / (2pn))^(1/(2p+m)) of the small balls minimising the bound."""
    return (m / (2 * p * n)) ** (1 / (2 * p + m))


def ball_cluster(m: int, p: float, n: int) -> DomainSpec:
    """
    Disjoint union of the unit ball and n balls of radius r_n, laid out along the first
    axis with gap 2.
    """
    _check_dimension(m)
    _check_p(p)
    _check_n(n)
    if p == P_INF:
        raise ValueError("The ball-union construction needs a finite exponent p.")
    radius = cluster_radius(m, p, n)
    if radius >= 1:
        raise ValueError(
            f"The small-ball radius r_n = {radius:.6g} is not below 1 for m={m}, "
            f"p={p}, n={n}; choose a larger n."
        )
    members = [Ball.create(m)] + [Ball.create(m, radius) for _ in range(n)]
    return arrange_along_axis(members, gap=BALL_GAP)


def cluster_bound(m: int, p: float, n: int) -> float:
    """
    Upper bound for F_p of the ball union:
    ((1 + 2p/m) (m/2p)^(2p/(2p+m)) n^(-2p/(2p+m)))^(1/p) F_p(B_1).
    """
    exponent = 2 * p / (2 * p + m)
    power = (1 + 2 * p / m) * (m / (2 * p)) ** exponent * n ** (-exponent)
    return power ** (1 / p) * fp_ball(m, p)


def ball_cluster_sequence(m: int, p: float, n: int) -> SequenceSample:
    """
    Member n of the sequence showing that F_p has infimum 0.

    Args:
        m: Dimension.
        p: Exponent p >= 1.
        n: Number of small balls.

    Returns:
        SequenceSample with the closed-form F_p of the union and its predicted bound.

    """
    spec = ball_cluster(m, p, n)
    report = evaluate(spec, [p], [1.0], backend="oracle", label=f"ball_cluster_n{n}")
    _, upper = report.fp[float(p)]
    return SequenceSample(
        family="ball_cluster",
        n=n,
        r_n=cluster_radius(m, p, n),
        spec=spec,
        p=p,
        q=1.0,
        predicted_bound=cluster_bound(m, p, n),
        fp_value=upper,
        is_upper_bound=True,
        report=report,
    )


def equal_balls_radius(m: int, n: int) -> float:
    """Radius of n equal balls of total measure 1."""
    return (1 / (ball_volume(m) * n)) ** (1 / m)


def equal_balls_value(m: int, p: float, q: float, n: int) -> float:
    """F_{p,q} of n equal balls of total measure 1, in closed form."""
    _check_dimension(m)
    _check_n(n)
    radius = equal_balls_radius(m, n)
    if p == P_INF:
        return equal_balls_inf_value(m, q, n)
    ball = Ball.create(m)
    power = (
        radius ** (2 * p - 2 * p * q)
        * tp_norm(ball, p) ** p
        * ball_lambda1(m) ** (p * q)
        / ball_volume(m)
    )
    return power ** (1 / p)


def equal_balls_inf_value(m: int, q: float, n: int) -> float:
    """F_{inf,q} of n equal balls of total measure 1, in closed form."""
    _check_dimension(m)
    _check_n(n)
    radius = equal_balls_radius(m, n)
    return radius ** (2 - 2 * q) * ball_lambda1(m) ** q / (2 * m)


def equal_balls_sequence(m: int, p: float, q: float, n: int) -> SequenceSample:
    """
    Member n of the sequence of n equal balls of total measure 1.

    For q > 1 the values grow without bound and predicted_bound is the closed-form
    value of the member; for q <= 1 it is the ceiling valid for every domain.

    Args:
        m: Dimension.
        p: Exponent p >= 1 or P_INF.
        q: Eigenvalue exponent.
        n: Number of balls.

    Returns:
        SequenceSample

    """
    _check_dimension(m)
    _check_p(p)
    _check_n(n)
    radius = equal_balls_radius(m, n)
    spec = arrange_along_axis([Ball.create(m, radius) for _ in range(n)], gap=BALL_GAP)
    report = evaluate(spec, [p], [q], backend="oracle", label=f"equal_balls_n{n}")
    is_upper_bound = q <= 1
    return SequenceSample(
        family="equal_balls",
        n=n,
        r_n=radius,
        spec=spec,
        p=p,
        q=q,
        predicted_bound=(
            pq_ceiling(m, q) if is_upper_bound else equal_balls_value(m, p, q, n)
        ),
        fp_value=report.fpq[(float(p), float(q))][1],
        is_upper_bound=is_upper_bound,
        report=report,
    )


def sequence_table(
    family: str,
    m: int,
    p: float,
    ns: Iterable[int],
    q: Optional[float] = None,
) -> pd.DataFrame:
    """
    Samples an extremal sequence at several n.

    Args:
        family: "ball_cluster" or "equal_balls".
        m: Dimension.
        p: Exponent p.
        ns: Values of n.
        q: Eigenvalue exponent (equal_balls only, default 1).

    Returns:
        DataFrame with columns n, r_n, measure, lambda1, tp, fp, predicted_bound.

    """
    samples: List[SequenceSample] = []
    for n in ns:
        if family == "ball_cluster":
            samples.append(ball_cluster_sequence(m, p, n))
        elif family == "equal_balls":
            samples.append(equal_balls_sequence(m, p, 1.0 if q is None else q, n))
        else:
            raise ValueError(f"Unknown sequence family '{family}'.")

    table = pd.DataFrame(
        [
            {
                "n": sample.n,
                "r_n": sample.r_n,
                "measure": sample.report.measure,
                "lambda1": sample.report.lambda1.midpoint,
                "tp": sample.report.tp[float(sample.p)],
                "fp": sample.fp_value,
                "predicted_bound": sample.predicted_bound,
            }
            for sample in samples
        ],
        columns=SEQUENCE_COLUMNS,
    )
    # Rounded to the written precision, so constant members compare equal.
    value_columns = SEQUENCE_COLUMNS[1:]
    table[value_columns] = round_significant(table[value_columns].to_numpy())
    return table


def log_log_slope(ns: Iterable[int], values: Iterable[float]) -> float:
    """Least-squares slope of log(values) against log(ns)."""
    slope, _ = np.polyfit(np.log(list(ns)), np.log(list(values)), 1)
    return float(slope)
