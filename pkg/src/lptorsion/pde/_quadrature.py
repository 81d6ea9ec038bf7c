import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import pandas as pd

from ..utils import P_INF, write_atomic
from ..utils.constants import OUTPUT_DIGITS
from ._grid import directions, shift
from ._solvers import EigenResult, TorsionField


def lp_norm(field: Union[TorsionField, EigenResult], p: float) -> float:
    """
    Midpoint-rule L^p norm (h^m sum v_i^p)^(1/p) of a grid function; p = P_INF gives the
    maximum.
    """
    values = field.values if isinstance(field, TorsionField) else field.vector
    if p < 1:
        raise ValueError(f"The exponent p must be at least 1, got {p}.")
    if p == P_INF:
        return float(values.max())
    return float(field.grid.cell_volume * np.sum(values ** p)) ** (1.0 / p)


def grad_energy(field: TorsionField, p: float) -> float:
    """
    Discrete Dirichlet energy of w = v^((p+1)/2).

    Differences are taken between coupled neighbours, and against the boundary point
    (where w = 0) at distance theta * h when the grid line leaves the domain. For p = 1
    this equals h^m v^T A v for the same operator the torsion problem was solved with.

    Args:
        field: Torsion field.
        p: Exponent p >= 1.

    Returns:
        Approximation of the integral of |D v^((p+1)/2)|^2.

    """
    if p < 1 or p == P_INF:
        raise ValueError(
            f"The gradient energy needs a finite exponent p >= 1, got {p}."
        )
    grid = field.grid
    w = grid.to_full(field.values ** ((p + 1) / 2))

    energy = 0.0
    for index, (axis, sign) in enumerate(directions(grid.dim)):
        coupled = grid.coupled[index]
        if sign > 0:
            # Every interior link once.
            jumps = np.where(coupled, (w - shift(w, axis, sign)) ** 2, 0.0)
            energy += float(np.sum(jumps))
        cut = grid.mask & ~coupled
        energy += float(np.sum(np.where(cut, w ** 2 / grid.boundary_frac[index], 0.0)))
    return energy * grid.h ** (grid.dim - 2)


@dataclass(frozen=True)
class Extrapolation:
    value: float
    error: float


def richardson(coarse: float, fine: float, order: int = 2) -> Extrapolation:
    """
    Richardson extrapolation of a quantity computed at spacings h and h/2.

    Args:
        coarse: Value at spacing h.
        fine: Value at spacing h/2.
        order: Convergence order of the discretisation.

    Returns:
        The extrapolated value and the error estimate |fine - coarse| / (2^order - 1).

    """
    factor = 2.0 ** order
    return Extrapolation(
        (factor * fine - coarse) / (factor - 1), abs(fine - coarse) / (factor - 1)
    )


def write_field(field: Union[TorsionField, EigenResult], filename: str) -> None:
    """
    Writes a grid function as a whitespace separated table `x [y] value`, one row per
    interior node.

    Args:
        field: Torsion field or eigenpair.
        filename: Output path.

    Returns:
        Nothing

    """
    values = field.values if isinstance(field, TorsionField) else field.vector
    coordinates = field.grid.coordinates()
    df = pd.DataFrame(coordinates, columns=["x", "y"][: field.grid.dim])
    df["value"] = values
    text = df.to_csv(
        sep=" ", header=False, index=False, float_format=f"%.{OUTPUT_DIGITS}g"
    )
    write_atomic(text, filename)


def convergence_ratio(coarse: float, fine: float, finest: float) -> float:
    """Ratio of successive differences; about 4 for a second order scheme."""
    denominator = finest - fine
    if denominator == 0:
        return math.inf
    return (fine - coarse) / denominator
