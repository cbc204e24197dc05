"""
Эталоны на плотной линейной алгебре для проверки схем.
"""
import numpy as np

from app.core.fields import BoundarySpec, Field, write_edges


def dense_tridiagonal(lower, diag, upper) -> np.ndarray:
    """Плотная матрица из трёх диагоналей (lower[0], upper[-1] игнорируются)."""
    diag = np.asarray(diag, dtype=np.float64)
    m = diag.size
    matrix = np.diag(diag)
    if m > 1:
        matrix += np.diag(np.asarray(lower, dtype=np.float64)[1:], k=-1)
        matrix += np.diag(np.asarray(upper, dtype=np.float64)[:-1], k=1)
    return matrix


def _second_difference(m: int) -> np.ndarray:
    return -2.0 * np.eye(m) + np.eye(m, k=1) + np.eye(m, k=-1)


def dense_implicit_step_1d(interior, f0_next: float, fm1_next: float, lam: float) -> np.ndarray:
    values = np.asarray(interior, dtype=np.float64).reshape(-1)
    m = values.size
    matrix = np.eye(m) - lam * _second_difference(m)
    rhs = values.copy()
    rhs[0] += lam * f0_next
    rhs[-1] += lam * fm1_next
    return np.linalg.solve(matrix, rhs)


def dense_crank_nicolson_step_1d(interior, f0_now, f0_next, fm1_now, fm1_next, lam: float) -> np.ndarray:
    values = np.asarray(interior, dtype=np.float64).reshape(-1)
    m = values.size
    second = _second_difference(m)
    left = 2.0 * np.eye(m) - lam * second
    rhs = (2.0 * np.eye(m) + lam * second) @ values
    rhs[0] += lam * (f0_now + f0_next)
    rhs[-1] += lam * (fm1_now + fm1_next)
    return np.linalg.solve(left, rhs)


def dense_adi_step_2d(field: Field, boundary: BoundarySpec, lam: float) -> np.ndarray:
    """Шаг ADI через собранные плотные системы обоих полушагов."""
    values = write_edges(np.array(field.values, dtype=np.float64), boundary)
    rows, cols = values.shape
    ni, nj = rows - 2, cols - 2
    along_j = np.kron(np.eye(ni), 2.0 * np.eye(nj) - lam * _second_difference(nj))
    along_i = np.kron(2.0 * np.eye(ni) - lam * _second_difference(ni), np.eye(nj))

    def explicit_part(grid: np.ndarray, axis: int) -> np.ndarray:
        inner = grid[1:-1, 1:-1]
        if axis == 0:
            return lam * (grid[:-2, 1:-1] + grid[2:, 1:-1]) + 2.0 * (1.0 - lam) * inner
        return lam * (grid[1:-1, :-2] + grid[1:-1, 2:]) + 2.0 * (1.0 - lam) * inner

    rhs = explicit_part(values, axis=0)
    rhs[:, 0] += lam * values[1:-1, 0]
    rhs[:, -1] += lam * values[1:-1, -1]
    half = values.copy()
    half[1:-1, 1:-1] = np.linalg.solve(along_j, rhs.reshape(-1)).reshape(ni, nj)

    rhs = explicit_part(half, axis=1)
    rhs[0, :] += lam * half[0, 1:-1]
    rhs[-1, :] += lam * half[-1, 1:-1]
    result = half.copy()
    result[1:-1, 1:-1] = np.linalg.solve(along_i, rhs.reshape(-1)).reshape(ni, nj)
    return result


def characteristic_burgers(u0, x: np.ndarray, t: float, iterations: int = 200) -> np.ndarray:
    """Решение u = u0(x − u t) простыми итерациями (до образования ударной волны)."""
    u = u0(x)
    for _ in range(iterations):
        u = u0(x - u * t)
    return u
