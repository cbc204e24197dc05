"""
Метрики ошибок между полями.
"""
import numpy as np

from app.core.fields import Field, ShapeMismatchError


def _difference(a: Field, b: Field) -> np.ndarray:
    if a.shape != b.shape:
        raise ShapeMismatchError(a.shape, b.shape)
    return a.values - b.values


def mae(a: Field, b: Field) -> float:
    """Средняя абсолютная ошибка."""
    return float(np.mean(np.abs(_difference(a, b))))


def mse(a: Field, b: Field) -> float:
    """Среднеквадратичная ошибка."""
    diff = _difference(a, b)
    return float(np.mean(diff * diff))
