import math

from scipy import optimize

from .. import oracle
from ..domains import Ball
from ..functionals import f_p
from ..specialfn import ball_lambda1, ball_volume, ln_gamma
from ..utils import P_INF, RootFindingError
from ..utils.constants import CONVEX_F1_DEFICIT


def _check_dimension(m: int, minimum: int = 1):
    if int(m) != m or m < minimum:
        raise ValueError(f"The dimension must be an integer >= {minimum}, got {m}.")


def _check_p(p: float):
    if not p >= 1:
        raise ValueError(f"The exponent p must be at least 1, got {p}.")


def sandwich_constant(m: int) -> float:
    """Upper bound 4 + 3 m log 2 for lambda_1 * max v over all domains in R^m."""
    _check_dimension(m)
    return 4 + 3 * m * math.log(2)


def g_p_convex_lower(m: int, p: float) -> float:
    """
    Lower bound for F_p over bounded convex sets in R^m, obtained from John's ellipsoid:
    2^-3 pi^2 m^(-(m+2p)/p) (Gamma(m/2+1) Gamma(p+1) / Gamma(m/2+p+1))^(1/p).

    For p = P_INF the limit pi^2 / (8 m^2) is returned.
    """
    _check_dimension(m)
    _check_p(p)
    if p == P_INF:
        return math.pi ** 2 / (8 * m ** 2)
    log_ratio = ln_gamma(m / 2 + 1) + ln_gamma(p + 1) - ln_gamma(m / 2 + p + 1)
    return math.pi ** 2 / 8 * m ** (-(m + 2 * p) / p) * math.exp(log_ratio / p)


def g_inf_convex_limit() -> float:
    """Limit of the convex lower bound as p grows, in one dimension."""
    return math.pi ** 2 / 8


def tp_ball_lower(m: int, p: float) -> float:
    """Lower bound omega_m^(1/p) / (2 m^((p+1)/p) p^(m/(2p))) for T_p(B_1)."""
    _check_dimension(m, 2)
    _check_p(p)
    return ball_volume(m) ** (1 / p) / (2 * m ** ((p + 1) / p) * p ** (m / (2 * p)))


def f_sup_lower_from_ball(m: int, p: float) -> float:
    """Lower bound for F_p(B_1), and hence for its supremum, from tp_ball_lower."""
    return ball_lambda1(m) * tp_ball_lower(m, p) / ball_volume(m) ** (1 / p)


def ball_excess_ratio(m: int) -> float:
    """j^2_{(m-2)/2} / (2^(19/16) m^(9/8)); exceeds 1 for m = 2, ..., 19."""
    _check_dimension(m, 2)
    return ball_lambda1(m) / (2 ** (19 / 16) * m ** (9 / 8))


def recursion_bound(p: float, n: int, fp_base: float) -> float:
    """
    Bound for the supremum of F_{p+n} given a bound fp_base for the supremum of F_p:
    ((p+n) / (4^n p) prod_{j=1..n} (p+j))^(1/(p+n)) fp_base^(p/(p+n)).
    """
    _check_p(p)
    if int(n) != n or n < 1:
        raise ValueError(f"The number of steps must be a positive integer, got {n}.")
    if fp_base <= 0:
        raise ValueError(f"The base value must be positive, got {fp_base}.")
    log_factor = (
        math.log(p + n)
        - n * math.log(4)
        - math.log(p)
        + math.fsum(math.log(p + j) for j in range(1, n + 1))
    )
    return math.exp((log_factor + p * math.log(fp_base)) / (p + n))


def convex_delta_bound(delta: float) -> float:
    """
    Bound ((1 + delta^2/4)(1 - 1/11560))^(1/(2+delta)) for the supremum of F_{2+delta}
    over planar convex sets.
    """
    return ((1 + delta ** 2 / 4) * (1 - 1 / CONVEX_F1_DEFICIT)) ** (1 / (2 + delta))


def f2_derivative_bound(delta: float) -> float:
    """Difference quotient bound ((1 + delta^2/4)^(1/(2+delta)) - 1) / delta."""
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}.")
    return ((1 + delta ** 2 / 4) ** (1 / (2 + delta)) - 1) / delta


def delta_star() -> float:
    """Closed-form root 2 / sqrt(11559) of convex_delta_bound(delta) = 1."""
    return 2 / math.sqrt(CONVEX_F1_DEFICIT - 1)


def p2_convex_lower() -> float:
    """
    Lower bound 2 + delta* for the largest p with sup F_p = 1 over planar convex sets.

    The closed-form root is cross-checked against a bisection solve of
    (1 + delta^2/4)(1 - 1/11560) = 1.
    """
    closed_form = delta_star()
    try:
        root = optimize.bisect(
            lambda delta: (1 + delta ** 2 / 4) * (1 - 1 / CONVEX_F1_DEFICIT) - 1,
            0.0,
            1.0,
            xtol=1e-15,
        )
    except ValueError as error:
        raise RootFindingError(f"No sign change found for delta*: {error}") from error
    if abs(root - closed_form) > 1e-10:
        raise RootFindingError(
            f"Bisection root {root} disagrees with the closed form {closed_form}."
        )
    return 2 + closed_form


def talenti_fp0(m: int, p: float) -> float:
    """Supremum of F_{p,0}: T_p(B_1) / omega_m^(1/p + 2/m)."""
    _check_dimension(m)
    _check_p(p)
    ball = Ball.create(m)
    return oracle.tp_norm(ball, p) / ball_volume(m) ** (
        (0 if p == P_INF else 1 / p) + 2 / m
    )


def one_d_sharp(p: float, q: float) -> float:
    """
    Supremum of F_{p,q} over open sets of the real line, attained by a single interval:
    pi^((4pq+1)/(2p)) / 2^((1+3p)/p) (Gamma(p+1) / Gamma(p+3/2))^(1/p).

    Raises:
        ValueError: For q > 1, where the supremum is infinite.

    """
    _check_p(p)
    if q > 1:
        raise ValueError(f"The supremum is infinite for q > 1, got q = {q}.")
    if p == P_INF:
        return one_d_sharp_inf(q)
    log_value = (
        (4 * p * q + 1) / (2 * p) * math.log(math.pi)
        - (1 + 3 * p) / p * math.log(2)
        + (ln_gamma(p + 1) - ln_gamma(p + 1.5)) / p
    )
    return math.exp(log_value)


def one_d_sharp_inf(q: float) -> float:
    """Supremum of F_{inf,q} in one dimension: pi^(2q) / 8."""
    if q > 1:
        raise ValueError(f"The supremum is infinite for q > 1, got q = {q}.")
    return math.pi ** (2 * q) / 8


def pq_ceiling(m: int, q: float) -> float:
    """
    Upper bound (4 + 3 m log 2) lambda_1(B_1)^(q-1) omega_m^(2(q-1)/m) for F_{p,q} and
    F_{inf,q} when q <= 1.
    """
    _check_dimension(m)
    if q > 1:
        raise ValueError(f"F_(p,q) is unbounded for q > 1, got q = {q}.")
    return sandwich_constant(m) * ball_lambda1(m) ** (q - 1) * ball_volume(m) ** (
        2 * (q - 1) / m
    )


def fp_ball(m: int, p: float) -> float:
    """F_p of the unit ball."""
    ball = Ball.create(m)
    return f_p(oracle.tp_norm(ball, p), ball_lambda1(m), ball.measure(), p)
