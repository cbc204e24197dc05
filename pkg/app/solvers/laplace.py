"""
Стационарная теплопроводность: уравнение Лапласа, итерации Гаусса–Зейделя.
"""
import logging
from dataclasses import dataclass

import numpy as np
from numba import njit

from app.core.fields import BoundarySpec, Field, FieldError, write_edges

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaplaceResult:
    field: Field
    converged: bool
    iterations: int
    max_update: float


@njit(cache=True, nogil=True)
def _gauss_seidel(values, fixed, tol, max_iters):
    rows, cols = values.shape
    update = 0.0
    for it in range(1, max_iters + 1):
        update = 0.0
        for i in range(rows):
            for j in range(cols):
                if fixed[i, j]:
                    continue
                new = 0.25 * (values[i + 1, j] + values[i - 1, j] + values[i, j + 1] + values[i, j - 1])
                delta = abs(new - values[i, j])
                if delta > update:
                    update = delta
                values[i, j] = new
        if update < tol:
            return it, update, True
    return max_iters, update, False


def dirichlet_mask(shape: tuple[int, int]) -> np.ndarray:
    """Маска закреплённых узлов: все края прямоугольной пластины."""
    mask = np.zeros(shape, dtype=np.bool_)
    mask[0, :] = mask[-1, :] = True
    mask[:, 0] = mask[:, -1] = True
    return mask


def laplace_boundary_field(shape: tuple[int, int], boundary: BoundarySpec, fill: float = 0.0) -> Field:
    """Стартовое поле: края из boundary, внутри — fill."""
    return Field.wrap(write_edges(np.full(shape, float(fill)), boundary))


def laplace_solve_2d(
    boundary_field: Field,
    mask,
    tol: float = 1e-10,
    max_iters: int = 100_000,
) -> LaplaceResult:
    """
    Решить T_ij = (T_{i+1,j} + T_{i−1,j} + T_{i,j+1} + T_{i,j−1}) / 4 на свободных узлах.

    Обход построчный, сходимость — по максимальному изменению за проход.
    При исчерпании max_iters поле всё равно возвращается с converged=False.
    """
    fixed = np.asarray(mask.values if isinstance(mask, Field) else mask).astype(np.bool_)
    if fixed.shape != boundary_field.shape:
        raise FieldError(f"Маска {fixed.shape} не совпадает с полем {boundary_field.shape}")
    if not fixed.any():
        raise FieldError("Нужен хотя бы один закреплённый узел")
    edges = dirichlet_mask(fixed.shape)
    if np.any(~fixed & edges):
        raise FieldError("Свободные узлы на краю сетки не имеют четырёх соседей")

    values = np.array(boundary_field.values, dtype=np.float64)
    iterations, update, converged = _gauss_seidel(values, fixed, float(tol), int(max_iters))
    if not converged:
        logger.warning(f"Гаусс–Зейдель не сошёлся за {iterations} итераций (изменение {update:.3e})")
    return LaplaceResult(Field.wrap(values), bool(converged), int(iterations), float(update))


def stencil_residual(field: Field, mask) -> np.ndarray:
    """|T − среднее четырёх соседей| на свободных узлах, ноль на закреплённых."""
    fixed = np.asarray(mask.values if isinstance(mask, Field) else mask).astype(np.bool_)
    values = field.values
    residual = np.zeros_like(values)
    average = 0.25 * (values[2:, 1:-1] + values[:-2, 1:-1] + values[1:-1, 2:] + values[1:-1, :-2])
    residual[1:-1, 1:-1] = np.abs(values[1:-1, 1:-1] - average)
    residual[fixed] = 0.0
    return residual
