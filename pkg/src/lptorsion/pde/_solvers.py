import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ..utils import ConvergenceError
from ._grid import Grid, directions, shift


class DirichletLaplacian:
    """
    Matrix-free Shortley–Weller discretisation of -Δ with homogeneous Dirichlet data.

    In flux form, a node couples to every neighbour of the same component with weight
    1/h^2, and a grid line leaving the domain at distance theta * h adds
    u_i / (theta h^2) to the diagonal. The resulting matrix is symmetric positive
    definite with non-positive off-diagonal entries.
    """

    def __init__(self, grid: Grid):
        self.grid = grid
        self.inverse_h2 = 1.0 / grid.h ** 2
        links = [
            (axis, sign, grid.coupled[index])
            for index, (axis, sign) in enumerate(directions(grid.dim))
        ]
        self._links = links

        diagonal = np.zeros(grid.shape)
        for index in range(2 * grid.dim):
            diagonal += np.where(
                grid.coupled[index], 1.0, 1.0 / grid.boundary_frac[index]
            )
        self.diagonal = self.inverse_h2 * diagonal[grid.mask]

    @property
    def size(self) -> int:
        return self.grid.n_interior

    def __call__(self, values: np.ndarray) -> np.ndarray:
        full = self.grid.to_full(values)
        neighbours = np.zeros(self.grid.shape)
        for axis, sign, coupled in self._links:
            neighbours += np.where(coupled, shift(full, axis, sign), 0.0)
        return self.diagonal * values - self.inverse_h2 * neighbours[self.grid.mask]

    def rayleigh_quotient(self, values: np.ndarray) -> float:
        return float(values @ self(values) / (values @ values))


def conjugate_gradient(
    operator: Callable[[np.ndarray], np.ndarray],
    rhs: np.ndarray,
    tol: float,
    max_iter: int,
    x0: Optional[np.ndarray] = None,
    diagonal: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, int, float]:
    """
    Conjugate gradients for a symmetric positive definite operator.

    Iterates until the max-norm of the residual drops below tol * max|rhs|.

    Args:
        operator: Function applying the matrix to a vector.
        rhs: Right-hand side.
        tol: Relative residual tolerance.
        max_iter: Iteration cap.
        x0: Optional starting vector.
        diagonal: If given, Jacobi (diagonal) scaling is applied.

    Returns:
        Tuple of the solution, the number of iterations and the final relative residual.

    """
    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=float)
    r = rhs - operator(x)
    scale = float(np.max(np.abs(rhs))) or 1.0
    z = r / diagonal if diagonal is not None else r
    d = z.copy()
    rz = r @ z

    iteration = 0
    residual = float(np.max(np.abs(r))) / scale
    while residual > tol and iteration < max_iter:
        ad = operator(d)
        alpha = rz / (d @ ad)
        x += alpha * d
        r -= alpha * ad

        z = r / diagonal if diagonal is not None else r
        rz_next = r @ z
        d = z + (rz_next / rz) * d
        rz = rz_next

        iteration += 1
        residual = float(np.max(np.abs(r))) / scale

    if residual > tol:
        raise ConvergenceError(
            f"Conjugate gradients stopped at relative residual {residual:.3e} after "
            f"{iteration} iterations (tolerance {tol:.1e})."
        )
    return x, iteration, residual


def _iteration_cap(grid: Grid) -> int:
    return 20 * grid.cells_per_axis ** 2


def _shape_label(grid: Grid) -> str:
    return "x".join(map(str, grid.shape))


@dataclass(eq=False)
class TorsionField:
    """
    Discrete torsion function on a grid.

    Attributes:
        grid: Grid the field lives on.
        values: Value per interior node, in mask order.
        residual: Max-norm of the discrete residual -Δv - 1.
        iterations: Conjugate gradient iterations used.

    """

    grid: Grid
    values: np.ndarray
    residual: float
    iterations: int = 0


@dataclass(eq=False)
class EigenResult:
    """
    Principal eigenpair of the discrete Dirichlet Laplacian.

    Attributes:
        lambda1: Smallest eigenvalue.
        vector: Non-negative eigenvector with unit Euclidean norm, in mask order.
        residual: Relative eigen-residual |Au - lambda u| / (lambda |u|).
        iterations: Outer inverse-iteration steps.

    """

    grid: Grid
    lambda1: float
    vector: np.ndarray
    residual: float
    iterations: int


def solve_torsion(
    grid: Grid, tol: float = 1e-10, jacobi: bool = False, verbose: bool = False
) -> TorsionField:
    """
    Solves -Δv = 1 with zero boundary values on the grid.

    Args:
        grid: Grid with Shortley–Weller boundary data.
        tol: Relative residual tolerance of the conjugate gradient solver.
        jacobi: Apply diagonal scaling.
        verbose: Print progress.

    Returns:
        TorsionField

    """
    if tol <= 0:
        raise ValueError(f"The tolerance must be positive, got {tol}.")
    if verbose:
        print(f"Solving torsion problem on {_shape_label(grid)} grid...", end=" ")

    operator = DirichletLaplacian(grid)
    rhs = np.ones(operator.size)
    values, iterations, _ = conjugate_gradient(
        operator,
        rhs,
        tol,
        _iteration_cap(grid),
        diagonal=operator.diagonal if jacobi else None,
    )
    residual = float(np.max(np.abs(operator(values) - rhs)))

    if verbose:
        print(f"done ({iterations} iterations).")

    # The discrete operator is inverse-positive; negative values are round-off.
    return TorsionField(grid, np.clip(values, 0.0, None), residual, iterations)


def lambda1_numeric(
    grid: Grid,
    tol: float = 1e-10,
    max_iter: int = 500,
    jacobi: bool = False,
    verbose: bool = False,
) -> EigenResult:
    """
    Smallest eigenvalue of the discrete Dirichlet Laplacian by inverse power iteration.

    Each step solves A w = u by warm-started conjugate gradients. Iteration stops when
    the Rayleigh quotient changes by at most tol relative and the relative
    eigen-residual is at most sqrt(tol).

    Args:
        grid: Grid with Shortley–Weller boundary data.
        tol: Relative tolerance on the Rayleigh quotient.
        max_iter: Cap on outer iterations.
        jacobi: Apply diagonal scaling in the inner solves.
        verbose: Print progress.

    Returns:
        EigenResult

    """
    if tol <= 0:
        raise ValueError(f"The tolerance must be positive, got {tol}.")
    if verbose:
        print(f"Computing eigenvalue on {_shape_label(grid)} grid...", end=" ")

    operator = DirichletLaplacian(grid)
    vector = np.ones(operator.size) / np.sqrt(operator.size)
    estimate = operator.rayleigh_quotient(vector)
    inner_tol = min(tol, 1e-8)

    for iteration in range(1, max_iter + 1):
        solution, _, _ = conjugate_gradient(
            operator,
            vector,
            inner_tol,
            _iteration_cap(grid),
            x0=vector / estimate,
            diagonal=operator.diagonal if jacobi else None,
        )
        vector = solution / np.linalg.norm(solution)
        previous, estimate = estimate, operator.rayleigh_quotient(vector)
        eigen_residual = operator(vector) - estimate * vector
        residual = float(np.linalg.norm(eigen_residual)) / estimate
        if abs(estimate - previous) <= tol * estimate and residual <= np.sqrt(tol):
            break
    else:
        raise ConvergenceError(
            f"Inverse iteration did not converge in {max_iter} steps "
            f"(last eigenvalue estimate {estimate:.10g})."
        )

    if vector.sum() < 0:
        vector = -vector
    if vector.min() < -1e-8 * vector.max():
        warnings.warn(
            "The principal eigenvector has negative entries beyond round-off; "
            "the eigenvalue may belong to a higher mode."
        )
    vector = np.clip(vector, 0.0, None)

    if verbose:
        print(f"done ({iteration} iterations).")

    return EigenResult(grid, estimate, vector, residual, iteration)
