"""
Метрики и форматирование.
"""
from app.utils.metrics import mae, mse

__all__ = ["mae", "mse"]
