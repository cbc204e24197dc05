"""
Пропагаторы: отображение X(t) → X(t+P).

Числовой (P шагов решателя), аффинный (восстановлен пробами), гребневая регрессия.
"""
import logging
import warnings
from abc import ABC, abstractmethod

import numpy as np
import scipy.linalg

from app.core.dataset import Dataset
from app.core.fields import BoundarySpec, Field, ShapeMismatchError, write_edges
from app.core.problems import BurgersProblem, HeatProblem
from app.services.datagen import Standardizer, fit_standardizer
from app.solvers.burgers import burgers_step_field
from app.solvers.heat import adi_advance_array, heat_advance

logger = logging.getLogger(__name__)

# Сколько пробных полей прогоняется одним пакетом
PROBE_BATCH = 256


class UnsupportedProblemError(TypeError):
    """Пропагатор не применим к этому классу задач."""


class SingularNormalMatrixError(ArithmeticError):
    """Нормальная матрица вырождена."""
    def __init__(self, reg: float):
        hint = " Задайте reg > 0." if reg == 0 else ""
        super().__init__(f"Нормальная матрица XᵀX + reg·I вырождена (reg={reg}).{hint}")
        self.reg = reg


class Propagator(ABC):
    """Детерминированное отображение поля на P шагов вперёд."""

    kind: str = "abstract"

    def __init__(self, pred_step: int, shape: tuple[int, int], problem_class: str):
        if pred_step < 1:
            raise ValueError("P должно быть не меньше 1")
        self.pred_step = pred_step
        self.shape = tuple(shape)
        self.problem_class = problem_class

    @abstractmethod
    def advance(self, field: Field) -> Field:
        """Один прогноз на P шагов."""

    def _check_shape(self, field: Field) -> None:
        if field.shape != self.shape:
            raise ShapeMismatchError(self.shape, field.shape)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} P={self.pred_step} shape={self.shape}>"


class NumericalPropagator(Propagator):
    """P последовательных шагов ADI (или схемы Годунова для Бюргерса)."""

    kind = "numerical"

    def __init__(self, problem: HeatProblem | BurgersProblem, pred_step: int):
        problem_class = "heat" if isinstance(problem, HeatProblem) else "burgers"
        super().__init__(pred_step, problem.shape, problem_class)
        self.problem = problem

    def advance(self, field: Field) -> Field:
        self._check_shape(field)
        if isinstance(self.problem, HeatProblem):
            return heat_advance(field, self.problem.boundary, self.problem.lam, self.pred_step)
        current = field
        for _ in range(self.pred_step):
            current = burgers_step_field(current, self.problem)
        return current


class AffinePropagator(Propagator):
    """
    advance(x) = M·x_interior + b, края задачи накладываются заново.

    Верен только для (BC, λ), на которых получен.
    """

    kind = "affine"

    def __init__(self, matrix: np.ndarray, offset: np.ndarray, pred_step: int, problem: HeatProblem):
        super().__init__(pred_step, problem.shape, "heat")
        d = problem.interior_size
        if matrix.shape != (d, d) or offset.shape != (d,):
            raise ValueError(f"Ожидались M {d}x{d} и b длины {d}, получено {matrix.shape}, {offset.shape}")
        self.matrix = np.asarray(matrix, dtype=np.float64)
        self.offset = np.asarray(offset, dtype=np.float64)
        self.problem = problem

    def advance(self, field: Field) -> Field:
        self._check_shape(field)
        interior = self.matrix @ field.interior().reshape(-1) + self.offset
        result = np.empty(self.shape)
        result[1:-1, 1:-1] = interior.reshape(self.problem.interior_shape)
        return Field.wrap(write_edges(result, self.problem.boundary))


class RidgePropagator(Propagator):
    """
    Линейный суррогат: внутренность = W·[x; 1] в стандартизованном пространстве.

    Края выхода копируются с входа.
    """

    kind = "ridge"

    def __init__(
        self,
        weights: np.ndarray,
        pred_step: int,
        shape: tuple[int, int],
        reg: float,
        standardizer: Standardizer | None,
    ):
        super().__init__(pred_step, shape, "heat")
        d = (shape[0] - 2) * (shape[1] - 2)
        if weights.shape != (d, d + 1):
            raise ValueError(f"Ожидалась матрица весов {d}x{d + 1}, получено {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise ValueError("Веса содержат нечисловые значения")
        self.weights = np.asarray(weights, dtype=np.float64)
        self.reg = reg
        self.standardizer = standardizer

    def advance(self, field: Field) -> Field:
        self._check_shape(field)
        x = field.interior().reshape(-1)
        if self.standardizer is not None:
            x = self.standardizer.transform(x)
        y = self.weights[:, :-1] @ x + self.weights[:, -1]
        if self.standardizer is not None:
            y = self.standardizer.inverse(y)
        result = np.array(field.values)
        result[1:-1, 1:-1] = y.reshape(self.shape[0] - 2, self.shape[1] - 2)
        return Field.wrap(result)


def numerical_propagator(problem: HeatProblem | BurgersProblem, pred_step: int) -> NumericalPropagator:
    return NumericalPropagator(problem, pred_step)


def probe_affine(problem: HeatProblem, pred_step: int) -> AffinePropagator:
    """
    Восстановить P-шаговое отображение задачи пробами.

    b = F(0), столбец j матрицы M = F(e_j) − b; всего d + 1 прогонов,
    выполняемых пакетами. Отображение линейно по состоянию и краям вместе,
    поэтому F(e_j) − F(0) считается сразу как прогон e_j с нулевыми краями.
    """
    if not isinstance(problem, HeatProblem):
        raise UnsupportedProblemError("Аффинные пробы допустимы только для линейной задачи теплопроводности")
    rows, cols = problem.interior_shape
    d = problem.interior_size

    def run(interiors: np.ndarray, boundary: BoundarySpec) -> np.ndarray:
        batch = np.zeros((interiors.shape[0], *problem.shape))
        batch[:, 1:-1, 1:-1] = interiors.reshape(-1, rows, cols)
        advanced = adi_advance_array(batch, boundary, problem.lam, pred_step)
        return advanced[:, 1:-1, 1:-1].reshape(interiors.shape[0], d)

    offset = run(np.zeros((1, d)), problem.boundary)[0]
    homogeneous = BoundarySpec.uniform(0.0)
    matrix = np.empty((d, d))
    for start in range(0, d, PROBE_BATCH):
        stop = min(start + PROBE_BATCH, d)
        basis = np.zeros((stop - start, d))
        basis[np.arange(stop - start), np.arange(start, stop)] = 1.0
        matrix[:, start:stop] = run(basis, homogeneous).T

    logger.info(f"Аффинный пропагатор: d={d}, P={pred_step}, {d + 1} прогонов")
    return AffinePropagator(matrix, offset, pred_step, problem)


def solve_ridge(inputs: np.ndarray, targets: np.ndarray, reg: float) -> np.ndarray:
    """
    W = argmin Σ‖W[x;1] − y‖² + reg‖W‖² через нормальные уравнения.

    Args:
        inputs: (n, d)
        targets: (n, k)

    Returns:
        W формы (k, d + 1), последний столбец — сдвиг

    Raises:
        SingularNormalMatrixError: XᵀX + reg·I вырождена
    """
    if reg < 0:
        raise ValueError("reg должна быть неотрицательной")
    inputs = np.asarray(inputs, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    design = np.hstack([inputs, np.ones((inputs.shape[0], 1))])
    normal = design.T @ design + reg * np.eye(design.shape[1])
    rhs = design.T @ targets
    with warnings.catch_warnings():
        if reg == 0:
            warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            solution = scipy.linalg.solve(normal, rhs, assume_a="pos")
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as e:
            raise SingularNormalMatrixError(reg) from e
    return solution.T


def fit_ridge(dataset: Dataset, reg: float, standardize: bool = True) -> RidgePropagator:
    """Обучить гребневый суррогат на внутренних узлах пар датасета."""
    if dataset.sample_count < 1:
        raise ValueError("Пустой датасет")
    shape = dataset.meta.grid_shape
    inputs = dataset.inputs()[:, 1:-1, 1:-1].reshape(dataset.sample_count, -1)
    targets = dataset.targets()[:, 1:-1, 1:-1].reshape(dataset.sample_count, -1)

    standardizer = None
    if standardize:
        if dataset.mean is not None and dataset.std is not None:
            standardizer = Standardizer(dataset.mean, dataset.std)
        else:
            standardizer = fit_standardizer(dataset)
        inputs = standardizer.transform(inputs)
        targets = standardizer.transform(targets)

    weights = solve_ridge(inputs, targets, reg)
    logger.info(f"Гребневый пропагатор: {dataset.sample_count} образцов, d={inputs.shape[1]}, reg={reg}")
    return RidgePropagator(weights, dataset.meta.pred_step, shape, reg, standardizer)


def advance(propagator: Propagator, field: Field) -> Field:
    """Один прогноз на P шагов с проверкой формы."""
    if field.shape != propagator.shape:
        raise ShapeMismatchError(propagator.shape, field.shape)
    return propagator.advance(field)
