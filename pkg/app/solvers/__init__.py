"""
Конечно-разностные схемы.
"""
from app.solvers.tridiagonal import SingularSystemError, TridiagonalSystem, thomas_solve, thomas_solve_batch
from app.solvers.heat import (
    SchemeKind,
    Stability,
    StabilityWarning,
    adi_step_2d,
    crank_nicolson_step_1d,
    explicit_step_1d,
    heat_advance,
    heat_solve_1d,
    heat_solve_2d,
    implicit_step_1d,
    stability_classify,
)
from app.solvers.burgers import CFLViolationError, burgers_solve_1d, burgers_step_1d, total_variation
from app.solvers.laplace import LaplaceResult, dirichlet_mask, laplace_boundary_field, laplace_solve_2d

__all__ = [
    "SingularSystemError",
    "TridiagonalSystem",
    "thomas_solve",
    "thomas_solve_batch",
    "SchemeKind",
    "Stability",
    "StabilityWarning",
    "adi_step_2d",
    "crank_nicolson_step_1d",
    "explicit_step_1d",
    "heat_advance",
    "heat_solve_1d",
    "heat_solve_2d",
    "implicit_step_1d",
    "stability_classify",
    "CFLViolationError",
    "burgers_solve_1d",
    "burgers_step_1d",
    "total_variation",
    "LaplaceResult",
    "dirichlet_mask",
    "laplace_boundary_field",
    "laplace_solve_2d",
]
