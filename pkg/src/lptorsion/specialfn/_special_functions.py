"""Special functions behind every closed form: log-Gamma, Bessel J_nu, the first
positive Bessel zero and unit-ball volumes.
"""
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from ..utils.exceptions import RootFindingError


@dataclass(frozen=True)
class BesselZero:
    """First positive zero j_nu of J_nu, with an absolute error bound."""

    nu: float
    value: float
    precision: float

    def __post_init__(self):
        if self.value <= self.nu:
            raise ValueError(
                f"The first zero of J_{self.nu} must exceed the order, "
                f"got {self.value}."
            )


def ln_gamma(x: float) -> float:
    """
    Natural logarithm of the Gamma function for positive arguments.

    Args:
        x: Argument, strictly positive.

    Returns:
        ln(Gamma(x))

    """
    if x <= 0:
        raise ValueError(f"ln_gamma is only defined for x > 0, got {x}.")
    return float(special.gammaln(x))


def bessel_j(nu: float, x: float) -> float:
    """
    Bessel function of the first kind J_nu(x) for non-negative order and argument.

    Args:
        nu: Order, nu >= 0.
        x: Argument, x >= 0.

    Returns:
        J_nu(x)

    """
    if nu < 0:
        raise ValueError(f"Only non-negative orders are supported, got nu={nu}.")
    if x < 0:
        raise ValueError(f"Only non-negative arguments are supported, got x={x}.")
    return float(special.jv(nu, x))


@functools.lru_cache(maxsize=None)
def first_bessel_zero(nu: float) -> BesselZero:
    """
    Locates the first positive zero of J_nu.

    The bracket [nu, nu + 3(1 + nu^(1/3)) + 3] contains j_nu. It is scanned for the
    first sign change, the zero is bisected to 1e-6 and then polished with Newton
    steps using J_nu'.

    Args:
        nu: Order, nu >= 0.

    Raises:
        RootFindingError: If no sign change is found inside the bracket.

    Returns:
        BesselZero with the zero and its absolute error bound.

    """
    if nu < 0:
        raise ValueError(f"Only non-negative orders are supported, got nu={nu}.")

    lower = float(nu)
    upper = nu + 3 * (1 + nu ** (1 / 3)) + 3
    samples = np.linspace(lower, upper, 513)
    values = special.jv(nu, samples)

    # J_nu is positive on (0, j_nu); the first negative sample closes the bracket.
    negative = np.flatnonzero(values[1:] < 0)
    if negative.size == 0:
        raise RootFindingError(
            f"No sign change of J_{nu} found in [{lower}, {upper}]."
        )
    index = negative[0] + 1
    a, b = float(samples[index - 1]), float(samples[index])

    coarse = optimize.bisect(lambda x: special.jv(nu, x), a, b, xtol=1e-6)
    value = optimize.newton(
        lambda x: special.jv(nu, x),
        coarse,
        fprime=lambda x: special.jvp(nu, x),
        tol=1e-13,
        maxiter=50,
        disp=False,
    )
    value = float(value)
    if not a <= value <= b:
        raise RootFindingError(
            f"Newton polish left the bracket [{a}, {b}] for J_{nu}: {value}."
        )

    precision = max(
        abs(float(special.jv(nu, value) / special.jvp(nu, value))),
        4 * np.finfo(float).eps * value,
    )
    return BesselZero(nu=float(nu), value=value, precision=precision)


def ball_volume(m: int) -> float:
    """Volume omega_m = pi^(m/2) / Gamma(m/2 + 1) of the unit ball in R^m."""
    if m < 1:
        raise ValueError(f"Dimension must be at least 1, got {m}.")
    return math.exp(0.5 * m * math.log(math.pi) - ln_gamma(0.5 * m + 1))


def ball_lambda1(m: int) -> float:
    """Principal Dirichlet eigenvalue j^2_{(m-2)/2} of the unit ball in R^m."""
    if m < 1:
        raise ValueError(f"Dimension must be at least 1, got {m}.")
    if m == 1:
        # J_{-1/2}(x) ~ cos(x): the unit 'ball' (-1, 1) has lambda_1 = (pi/2)^2.
        return math.pi ** 2 / 4
    return first_bessel_zero(0.5 * (m - 2)).value ** 2
