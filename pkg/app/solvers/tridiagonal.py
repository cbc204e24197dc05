"""
Трёхдиагональные системы: алгоритм Томаса.
"""
from dataclasses import dataclass

import numpy as np
from numba import njit


class SingularSystemError(ArithmeticError):
    """Нулевой ведущий элемент при прямом ходе."""
    def __init__(self, pivot_index: int):
        super().__init__(f"Вырожденная трёхдиагональная система: нулевой пивот в строке {pivot_index}")
        self.pivot_index = pivot_index


@dataclass(frozen=True)
class TridiagonalSystem:
    """
    Система Ax = rhs с диагоналями lower, diag, upper длины m.

    lower[0] и upper[m-1] не используются.
    """
    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        sizes = {len(self.lower), len(self.diag), len(self.upper), len(self.rhs)}
        if len(sizes) != 1:
            raise ValueError(f"Диагонали и правая часть разной длины: {sorted(sizes)}")
        if len(self.diag) == 0:
            raise ValueError("Пустая система")

    @property
    def size(self) -> int:
        return len(self.diag)


@njit(cache=True)
def _thomas_kernel(lower, diag, upper, rhs):
    n = rhs.shape[0]
    c = np.empty(n)
    d = np.empty(n)
    x = np.empty(n)

    pivot = diag[0]
    if pivot == 0.0:
        return x, 0
    c[0] = upper[0] / pivot
    d[0] = rhs[0] / pivot

    # Прямой ход
    for i in range(1, n):
        pivot = diag[i] - lower[i] * c[i - 1]
        if pivot == 0.0:
            return x, i
        c[i] = upper[i] / pivot
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / pivot

    # Обратная подстановка
    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x, -1


def thomas_solve(system: TridiagonalSystem) -> np.ndarray:
    """
    Решить трёхдиагональную систему прогонкой.

    Raises:
        SingularSystemError: нулевой пивот при исключении
    """
    upper = np.array(system.upper, dtype=np.float64)
    upper[-1] = 0.0
    x, bad = _thomas_kernel(
        np.ascontiguousarray(system.lower, dtype=np.float64),
        np.ascontiguousarray(system.diag, dtype=np.float64),
        upper,
        np.ascontiguousarray(system.rhs, dtype=np.float64),
    )
    if bad >= 0:
        raise SingularSystemError(int(bad))
    return x


def thomas_solve_batch(
    lower: np.ndarray,
    diag: np.ndarray,
    upper: np.ndarray,
    rhs: np.ndarray,
    axis: int = 0,
) -> np.ndarray:
    """
    Решить много систем с общей матрицей сразу.

    Коэффициенты — векторы длины m; rhs содержит m уравнений вдоль оси axis,
    остальные оси — независимые системы. Каждая система решается
    теми же операциями, что и отдельно, поэтому результат не зависит
    от того, сколько систем в пакете.
    """
    moved = np.moveaxis(np.asarray(rhs, dtype=np.float64), axis, 0)
    n = moved.shape[0]
    c = np.empty(n)
    d = np.empty_like(moved)

    pivot = diag[0]
    if pivot == 0.0:
        raise SingularSystemError(0)
    c[0] = upper[0] / pivot if n > 1 else 0.0
    d[0] = moved[0] / pivot
    for i in range(1, n):
        pivot = diag[i] - lower[i] * c[i - 1]
        if pivot == 0.0:
            raise SingularSystemError(i)
        c[i] = upper[i] / pivot if i < n - 1 else 0.0
        d[i] = (moved[i] - lower[i] * d[i - 1]) / pivot

    x = np.empty_like(d)
    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return np.moveaxis(x, 0, axis)


def constant_tridiagonal(m: int, off: float, main: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Диагонали матрицы Тёплица (off, main, off) размера m."""
    lower = np.full(m, off)
    upper = np.full(m, off)
    lower[0] = 0.0
    upper[-1] = 0.0
    return lower, np.full(m, main), upper
