import numpy as np
import pytest

from app.core.fields import BoundarySpec, Field, FieldError
from app.solvers.laplace import (
    dirichlet_mask,
    laplace_boundary_field,
    laplace_solve_2d,
    stencil_residual,
)


def test_uniform_boundary_gives_uniform_field():
    shape = (10, 10)
    result = laplace_solve_2d(laplace_boundary_field(shape, BoundarySpec.uniform(42.0)), dirichlet_mask(shape))
    assert result.converged
    np.testing.assert_allclose(result.field.values, 42.0, atol=1e-8)


def test_linear_field_is_exact_solution():
    # T = i + 2j гармонична: свободные узлы не меняются
    i, j = np.mgrid[0:8, 0:9]
    exact = (i + 2.0 * j).astype(float)
    start = exact.copy()
    start[1:-1, 1:-1] = 0.0
    result = laplace_solve_2d(Field(start), dirichlet_mask(exact.shape), tol=1e-12)
    assert result.converged
    np.testing.assert_allclose(result.field.values, exact, atol=1e-9)


def test_residual_is_small_after_convergence():
    shape = (16, 12)
    mask = dirichlet_mask(shape)
    result = laplace_solve_2d(laplace_boundary_field(shape, BoundarySpec(600, 500, 194, 248)), mask)
    assert result.converged
    assert stencil_residual(result.field, mask).max() < 1e-9
    assert result.field.values[1:-1, 1:-1].min() >= 194.0
    assert result.field.values[1:-1, 1:-1].max() <= 600.0


def test_interior_fixed_node_is_respected():
    shape = (9, 9)
    mask = dirichlet_mask(shape)
    mask[4, 4] = True
    start = laplace_boundary_field(shape, BoundarySpec.uniform(0.0)).values.copy()
    start[4, 4] = 100.0
    result = laplace_solve_2d(Field(start), mask)
    assert result.field.values[4, 4] == 100.0
    assert 0.0 < result.field.values[4, 5] < 100.0


def test_not_converged_returns_last_iterate(caplog):
    shape = (30, 30)
    result = laplace_solve_2d(
        laplace_boundary_field(shape, BoundarySpec(100, 0, 0, 0)), dirichlet_mask(shape), max_iters=3
    )
    assert not result.converged
    assert result.iterations == 3
    assert result.max_update > 0
    assert "не сошёлся" in caplog.text


def test_free_edge_node_rejected():
    shape = (5, 5)
    mask = dirichlet_mask(shape)
    mask[0, 2] = False
    with pytest.raises(FieldError):
        laplace_solve_2d(laplace_boundary_field(shape, BoundarySpec.uniform(1.0)), mask)


def test_mask_shape_mismatch():
    with pytest.raises(FieldError):
        laplace_solve_2d(laplace_boundary_field((5, 5), BoundarySpec.uniform(1.0)), dirichlet_mask((6, 5)))
