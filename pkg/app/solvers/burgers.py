"""
Невязкое уравнение Бюргерса: схема Годунова первого порядка.
"""
import logging

import numpy as np

from app.core.fields import Field
from app.core.problems import BurgersProblem
from app.core.trajectory import Trajectory

logger = logging.getLogger(__name__)


class CFLViolationError(ValueError):
    """Нарушено условие Куранта max|u|·dt/dx ≤ 1."""
    def __init__(self, cfl: float):
        super().__init__(f"Число Куранта {cfl:.4f} больше 1, уменьшите dt")
        self.cfl = cfl


def _flux(u: np.ndarray) -> np.ndarray:
    return 0.5 * u * u


def godunov_flux(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Поток Годунова для f(u) = u²/2 на гранях."""
    f_left, f_right = _flux(left), _flux(right)
    # Волна разрежения: минимум f на [left, right], ноль если отрезок содержит 0
    rarefaction = np.where(left > 0.0, f_left, np.where(right < 0.0, f_right, 0.0))
    shock = np.maximum(f_left, f_right)
    return np.where(left <= right, rarefaction, shock)


def burgers_step_1d(u, dt: float, dx: float) -> np.ndarray:
    """
    Один шаг консервативной схемы вверх по потоку.

    Границы — нулевой градиент (фиктивные ячейки копируют крайние).

    Raises:
        CFLViolationError: max|u|·dt/dx > 1
    """
    values = np.asarray(u, dtype=np.float64).reshape(-1)
    cfl = float(np.max(np.abs(values))) * dt / dx if values.size else 0.0
    if cfl > 1.0:
        raise CFLViolationError(cfl)
    padded = np.concatenate(([values[0]], values, [values[-1]]))
    faces = godunov_flux(padded[:-1], padded[1:])
    return values - (dt / dx) * (faces[1:] - faces[:-1])


def total_variation(u) -> float:
    """Сумма модулей разностей соседних ячеек."""
    return float(np.sum(np.abs(np.diff(np.asarray(u, dtype=np.float64).reshape(-1)))))


def burgers_step_field(field: Field, problem: BurgersProblem) -> Field:
    return Field.wrap(burgers_step_1d(field.values[:, 0], problem.dt, problem.dx).reshape(-1, 1))


def burgers_solve_1d(problem: BurgersProblem, steps: int) -> Trajectory:
    """Траектория X(0..steps) уравнения Бюргерса."""
    if steps < 0:
        raise ValueError("steps должно быть неотрицательным")
    current = problem.initial_field()
    states = [(0, current)]
    for step in range(1, steps + 1):
        current = burgers_step_field(current, problem)
        states.append((step, current))
    return Trajectory(states)
