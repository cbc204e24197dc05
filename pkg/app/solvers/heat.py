"""
Схемы для уравнения теплопроводности: явная, неявная, Кранка–Николсон, ADI.
"""
import enum
import logging
import warnings

import numpy as np

from app.core.fields import BoundarySpec, Field, FieldError, apply_dirichlet, write_edges
from app.core.problems import HeatProblem
from app.core.trajectory import Trajectory
from app.solvers.tridiagonal import TridiagonalSystem, constant_tridiagonal, thomas_solve, thomas_solve_batch

logger = logging.getLogger(__name__)

EXPLICIT_LAMBDA_LIMIT = 0.5


class StabilityWarning(UserWarning):
    """Явная схема запущена за пределом устойчивости λ ≤ 1/2."""


class SchemeKind(enum.Enum):
    EXPLICIT = "explicit"
    IMPLICIT = "implicit"
    CRANK_NICOLSON = "crank-nicolson"
    ADI = "adi"
    BURGERS_UPWIND = "burgers-upwind"
    LAPLACE_ITERATIVE = "laplace-iterative"


class Stability(enum.Enum):
    STABLE = "stable"
    CONDITIONALLY_UNSTABLE = "conditionally-unstable"


def stability_classify(scheme: SchemeKind, lam: float) -> Stability:
    """
    Классифицировать устойчивость схемы при данном λ.

    Для BURGERS_UPWIND аргумент трактуется как число Куранта.
    """
    if lam < 0:
        raise ValueError(f"λ должна быть неотрицательной, получено {lam}")
    if scheme is SchemeKind.EXPLICIT:
        return Stability.STABLE if lam <= EXPLICIT_LAMBDA_LIMIT else Stability.CONDITIONALLY_UNSTABLE
    if scheme is SchemeKind.BURGERS_UPWIND:
        return Stability.STABLE if lam <= 1.0 else Stability.CONDITIONALLY_UNSTABLE
    return Stability.STABLE


# ============= 1D =============

def _as_interior(interior) -> np.ndarray:
    values = np.asarray(interior, dtype=np.float64).reshape(-1)
    if values.size < 1:
        raise FieldError("Нужен хотя бы один внутренний узел")
    return values


def explicit_step_1d(interior, f0: float, fm1: float, lam: float) -> np.ndarray:
    """Явная схема: T_i += λ(T_{i+1} − 2T_i + T_{i−1})."""
    values = _as_interior(interior)
    if lam > EXPLICIT_LAMBDA_LIMIT:
        warnings.warn(
            f"λ={lam} > 1/2: явная схема неустойчива",
            StabilityWarning,
            stacklevel=2,
        )
    padded = np.concatenate(([f0], values, [fm1]))
    return values + lam * (padded[2:] - 2.0 * values + padded[:-2])


def implicit_step_1d(interior, f0_next: float, fm1_next: float, lam: float) -> np.ndarray:
    """Неявная схема: −λT_{i−1} + (1+2λ)T_i − λT_{i+1} = T_i^l на шаге l+1."""
    values = _as_interior(interior)
    lower, diag, upper = constant_tridiagonal(values.size, -lam, 1.0 + 2.0 * lam)
    rhs = values.copy()
    rhs[0] += lam * f0_next
    rhs[-1] += lam * fm1_next
    return thomas_solve(TridiagonalSystem(lower, diag, upper, rhs))


def crank_nicolson_step_1d(
    interior,
    f0_now: float,
    f0_next: float,
    fm1_now: float,
    fm1_next: float,
    lam: float,
) -> np.ndarray:
    """Кранк–Николсон: вторая производная усредняется между слоями l и l+1."""
    values = _as_interior(interior)
    lower, diag, upper = constant_tridiagonal(values.size, -lam, 2.0 * (1.0 + lam))
    padded = np.concatenate(([f0_now], values, [fm1_now]))
    rhs = lam * padded[:-2] + 2.0 * (1.0 - lam) * values + lam * padded[2:]
    rhs[0] += lam * f0_next
    rhs[-1] += lam * fm1_next
    return thomas_solve(TridiagonalSystem(lower, diag, upper, rhs))


def heat_solve_1d(
    interior,
    boundary: BoundarySpec,
    lam: float,
    steps: int,
    scheme: SchemeKind = SchemeKind.CRANK_NICOLSON,
) -> np.ndarray:
    """
    Прогнать 1D-схему на steps шагов.

    Концы берутся из boundary.left_at(l) / right_at(l).

    Returns:
        Массив формы (steps + 1, m) внутренних значений
    """
    if steps < 0:
        raise ValueError("steps должно быть неотрицательным")
    current = _as_interior(interior).copy()
    history = [current]
    for step in range(steps):
        left_now, right_now = boundary.left_at(step), boundary.right_at(step)
        left_next, right_next = boundary.left_at(step + 1), boundary.right_at(step + 1)
        if scheme is SchemeKind.EXPLICIT:
            current = explicit_step_1d(current, left_now, right_now, lam)
        elif scheme is SchemeKind.IMPLICIT:
            current = implicit_step_1d(current, left_next, right_next, lam)
        elif scheme is SchemeKind.CRANK_NICOLSON:
            current = crank_nicolson_step_1d(current, left_now, left_next, right_now, right_next, lam)
        else:
            raise ValueError(f"Схема {scheme.value} не является 1D-схемой теплопроводности")
        history.append(current)
    return np.stack(history)


# ============= 2D ADI =============

def _adi_sweep(values: np.ndarray, lam: float) -> np.ndarray:
    """
    Полный шаг ADI для массива (..., N, M) с уже наложенными краями.

    Первый полушаг неявный по j (строки), второй — неявный по i (столбцы).
    """
    rows, cols = values.shape[-2:]
    explicit_weight = 2.0 * (1.0 - lam)

    # Полушаг l → l+1/2: по системе на каждую внутреннюю строку
    lower, diag, upper = constant_tridiagonal(cols - 2, -lam, 2.0 * (1.0 + lam))
    rhs = lam * (values[..., :-2, 1:-1] + values[..., 2:, 1:-1]) + explicit_weight * values[..., 1:-1, 1:-1]
    rhs[..., :, 0] += lam * values[..., 1:-1, 0]
    rhs[..., :, -1] += lam * values[..., 1:-1, -1]
    half = values.copy()
    half[..., 1:-1, 1:-1] = thomas_solve_batch(lower, diag, upper, rhs, axis=-1)

    # Полушаг l+1/2 → l+1: по системе на каждый внутренний столбец
    lower, diag, upper = constant_tridiagonal(rows - 2, -lam, 2.0 * (1.0 + lam))
    rhs = lam * (half[..., 1:-1, :-2] + half[..., 1:-1, 2:]) + explicit_weight * half[..., 1:-1, 1:-1]
    rhs[..., 0, :] += lam * half[..., 0, 1:-1]
    rhs[..., -1, :] += lam * half[..., -1, 1:-1]
    result = half.copy()
    result[..., 1:-1, 1:-1] = thomas_solve_batch(lower, diag, upper, rhs, axis=-2)
    return result


def adi_step_2d(field: Field, boundary: BoundarySpec, lam: float) -> Field:
    """Один шаг ADI (Писмен–Рэкфорд) с постоянными краями на обоих полушагах."""
    rows, cols = field.shape
    if rows < 3 or cols < 3:
        raise FieldError(f"ADI требует сетку не меньше 3x3, форма {field.shape}")
    values = write_edges(field.values.copy(), boundary)
    result = write_edges(_adi_sweep(values, lam), boundary)
    return Field.wrap(result)


def adi_advance_array(values: np.ndarray, boundary: BoundarySpec, lam: float, steps: int) -> np.ndarray:
    """steps шагов ADI для пакета полей (..., N, M)."""
    current = write_edges(np.array(values, dtype=np.float64), boundary)
    for _ in range(steps):
        current = write_edges(_adi_sweep(current, lam), boundary)
    return current


def heat_advance(field: Field, boundary: BoundarySpec, lam: float, steps: int) -> Field:
    """Только конечное состояние после steps шагов ADI."""
    if steps < 0:
        raise ValueError("steps должно быть неотрицательным")
    current = apply_dirichlet(field, boundary)
    for _ in range(steps):
        current = adi_step_2d(current, boundary, lam)
    return current


def heat_solve_2d(problem: HeatProblem, steps: int) -> Trajectory:
    """Траектория X(0..steps) задачи теплопроводности методом ADI."""
    if steps < 0:
        raise ValueError("steps должно быть неотрицательным")
    current = problem.initial_field()
    states = [(0, current)]
    for step in range(1, steps + 1):
        current = adi_step_2d(current, problem.boundary, problem.lam)
        states.append((step, current))
    logger.debug(f"ADI: {steps} шагов на сетке {problem.shape}")
    return Trajectory(states)
