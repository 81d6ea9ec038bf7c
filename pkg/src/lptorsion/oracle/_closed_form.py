import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..domains import (
    Ball,
    Cuboid,
    DisjointUnion,
    DomainSpec,
    Ellipsoid,
    IntervalUnion,
    Polygon,
)
from ..specialfn import ball_lambda1, ball_volume, ln_gamma
from ..utils import P_INF, UnsupportedDomainError
from ..utils.types import Point


@dataclass(frozen=True)
class Lambda1Bracket:
    """Rigorous enclosure lower <= lambda_1 <= upper; exact if lower == upper."""

    lower: float
    upper: float
    exact: bool = False

    def __post_init__(self):
        if self.lower < 0 or self.upper < self.lower:
            raise ValueError(
                f"Invalid eigenvalue bracket [{self.lower}, {self.upper}]."
            )
        if self.exact and self.lower != self.upper:
            raise ValueError("An exact bracket must have equal endpoints.")

    @classmethod
    def point(cls, value: float) -> "Lambda1Bracket":
        return cls(value, value, True)

    @property
    def endpoints(self) -> Tuple[float, float]:
        return self.lower, self.upper

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.upper - self.lower)

    def scale(self, alpha: float) -> "Lambda1Bracket":
        """Bracket of the homothetic domain alpha * Omega."""
        return Lambda1Bracket(
            self.lower / alpha ** 2, self.upper / alpha ** 2, self.exact
        )


def _primitives(spec: DomainSpec) -> List[DomainSpec]:
    if isinstance(spec, DisjointUnion):
        return [piece for member in spec.members for piece in _primitives(member)]
    return spec.components()


def _as_ellipsoid(spec: DomainSpec) -> Ellipsoid:
    """Intervals are one-dimensional ellipsoids."""
    if isinstance(spec, IntervalUnion):
        ((a, b),) = spec.intervals
        return Ellipsoid((0.5 * (b - a),), (0.5 * (a + b),))
    if isinstance(spec, Ellipsoid):
        return spec
    raise UnsupportedDomainError(
        f"No closed-form torsion function for {type(spec).__name__}; "
        "use the numeric backend."
    )


def supports(spec: DomainSpec) -> bool:
    """True if the torsion function of spec is available in closed form."""
    return all(
        isinstance(piece, (IntervalUnion, Ellipsoid)) for piece in _primitives(spec)
    )


def _inverse_axes_sum(ellipsoid: Ellipsoid) -> float:
    return float(sum(1.0 / a ** 2 for a in ellipsoid.semi_axes))


def torsion_value(spec: DomainSpec, x: Point) -> float:
    """
    Evaluates the torsion function at a point.

    Args:
        spec: Interval union, ball, ellipsoid or a disjoint union of these.
        x: Point of the same dimension as spec.

    Returns:
        v(x), or 0 if x lies outside the domain.

    """
    if not supports(spec):
        raise UnsupportedDomainError(
            f"No closed-form torsion function for {type(spec).__name__}; "
            "use the numeric backend."
        )
    point = np.asarray(x, dtype=float).reshape(1, spec.dimension)
    for piece in _primitives(spec):
        if piece.contains(point)[0]:
            ellipsoid = _as_ellipsoid(piece)
            return float(
                0.5 / _inverse_axes_sum(ellipsoid) * (1.0 - ellipsoid.level(point)[0])
            )
    return 0.0


def _ellipsoid_tp_power(ellipsoid: Ellipsoid, p: float) -> float:
    """T_p^p of a single ellipsoid."""
    m = ellipsoid.dimension
    log_value = (
        -p * math.log(2.0)
        + math.log(ball_volume(m))
        + ln_gamma(m / 2 + 1)
        + ln_gamma(p + 1)
        - ln_gamma(m / 2 + p + 1)
        - p * math.log(_inverse_axes_sum(ellipsoid))
        + sum(math.log(a) for a in ellipsoid.semi_axes)
    )
    return math.exp(log_value)


def v_max(spec: DomainSpec) -> float:
    """Maximum of the torsion function, attained at the center of a fattest piece."""
    if not supports(spec):
        raise UnsupportedDomainError(
            f"No closed-form torsion function for {type(spec).__name__}; "
            "use the numeric backend."
        )
    return max(
        0.5 / _inverse_axes_sum(_as_ellipsoid(piece)) for piece in _primitives(spec)
    )


def tp_norm(spec: DomainSpec, p: float) -> float:
    """
    L^p norm of the torsion function, computed in closed form.

    Args:
        spec: Interval union, ball, ellipsoid or a disjoint union of these.
        p: Exponent p >= 1, or P_INF.

    Returns:
        T_p of the domain; T_p^p is additive over disjoint components.

    """
    if p < 1:
        raise ValueError(f"The exponent p must be at least 1, got {p}.")
    if p == P_INF:
        return v_max(spec)
    if not supports(spec):
        raise UnsupportedDomainError(
            f"No closed-form torsion function for {type(spec).__name__}; "
            "use the numeric backend."
        )
    total = math.fsum(
        _ellipsoid_tp_power(_as_ellipsoid(piece), p) for piece in _primitives(spec)
    )
    return total ** (1.0 / p)


def _piece_lambda1(piece: DomainSpec) -> Lambda1Bracket:
    if isinstance(piece, IntervalUnion):
        ((a, b),) = piece.intervals
        return Lambda1Bracket.point(math.pi ** 2 / (b - a) ** 2)
    if isinstance(piece, Cuboid):
        inverse_squares = sum(1.0 / side ** 2 for side in piece.sides)
        return Lambda1Bracket.point(math.pi ** 2 * inverse_squares)
    if isinstance(piece, Ellipsoid):
        m = piece.dimension
        if isinstance(piece, Ball) or len(set(piece.semi_axes)) == 1:
            return Lambda1Bracket.point(ball_lambda1(m) / piece.semi_axes[0] ** 2)
        ball_value = ball_lambda1(m)
        enclosing_cuboid = math.pi ** 2 / 4 * _inverse_axes_sum(piece)
        faber_krahn = ball_value * (ball_volume(m) / piece.measure()) ** (2.0 / m)
        inscribed_ball = ball_value / min(piece.semi_axes) ** 2
        # The torsion function as Rayleigh trial function: int |Dv|^2 = int v.
        torsion_rayleigh = tp_norm(piece, 1) / tp_norm(piece, 2) ** 2
        return Lambda1Bracket(
            max(enclosing_cuboid, faber_krahn), min(inscribed_ball, torsion_rayleigh)
        )
    if isinstance(piece, Polygon):
        raise UnsupportedDomainError(
            "No closed-form eigenvalue for polygons; use the numeric backend."
        )
    raise UnsupportedDomainError(f"Unsupported domain type {type(piece).__name__}.")


def lambda1(spec: DomainSpec) -> Lambda1Bracket:
    """
    First Dirichlet eigenvalue of the Laplacian.

    Exact for intervals, balls and cuboids; a rigorous bracket for general ellipsoids.
    For disjoint unions the eigenvalue is the minimum over the components.

    Args:
        spec: Any domain except polygons (or unions containing them).

    Returns:
        Lambda1Bracket

    """
    brackets = [_piece_lambda1(piece) for piece in _primitives(spec)]
    lower = min(bracket.lower for bracket in brackets)
    upper = min(bracket.upper for bracket in brackets)
    return Lambda1Bracket(lower, upper, lower == upper)


def spectral_series_1d(length: float, p: int, n_terms: int) -> float:
    """
    Partial eigenfunction expansion sum_{j <= N} lambda_j^{-p} (int phi_j)^2 of an
    interval.

    With lambda_j = (j pi / L)^2 and phi_j = sqrt(2 / L) sin(j pi x / L), the integrals
    vanish for even j and equal 2 sqrt(2L) / (j pi) for odd j. The series converges to
    T_1 for p = 1 and to T_2^2 for p = 2.

    Args:
        length: Interval length L > 0.
        p: 1 or 2.
        n_terms: Number of terms N >= 1.

    Returns:
        The partial sum.

    """
    if length <= 0:
        raise ValueError(f"The interval length must be positive, got {length}.")
    if p not in (1, 2):
        raise ValueError(
            f"The spectral series is available for p = 1 and p = 2, got {p}."
        )
    if n_terms < 1:
        raise ValueError(f"At least one term is needed, got {n_terms}.")

    # Smallest terms first.
    j = np.arange(n_terms - (1 - n_terms % 2), 0, -2, dtype=float)
    integral_squared = 8.0 * length / (j * math.pi) ** 2
    return float(np.sum((length / (j * math.pi)) ** (2 * p) * integral_squared))
