from ._grid import Grid, rasterize, rasterize_components
from ._solvers import (
    DirichletLaplacian,
    TorsionField,
    EigenResult,
    conjugate_gradient,
    solve_torsion,
    lambda1_numeric,
)
from ._quadrature import (
    Extrapolation,
    lp_norm,
    grad_energy,
    richardson,
    write_field,
    convergence_ratio,
)
