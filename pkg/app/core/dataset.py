"""
Датасет пар (вход, цель) по батчам.
"""
from dataclasses import dataclass

import numpy as np

from app.core.fields import Field, FieldError
from app.core.problems import PermutationSample


@dataclass(frozen=True)
class Sample:
    """Пара X(t0) → X(t0+P) и перестановка, из которой она получена."""
    input: Field
    target: Field
    permutation: PermutationSample | None = None


@dataclass(frozen=True)
class Batch:
    """Батч с общим начальным шагом t0 и целевым t1 = t0 + P."""
    t0: int
    t1: int
    samples: tuple[Sample, ...]


@dataclass(frozen=True)
class DatasetMeta:
    """Параметры генерации."""
    grid_shape: tuple[int, int]
    pred_step: int
    bc_ic_range: tuple[float, float]
    lambda_range: tuple[float, float]
    t_range: tuple[int, int]
    seed: int


@dataclass(frozen=True)
class Dataset:
    """Батчи пар и статистика стандартизации (μ, σ по всем точкам)."""
    batches: tuple[Batch, ...]
    meta: DatasetMeta
    mean: float | None = None
    std: float | None = None

    def __post_init__(self):
        for batch in self.batches:
            if batch.t1 - batch.t0 != self.meta.pred_step:
                raise FieldError(
                    f"Батч t0={batch.t0}, t1={batch.t1} не согласован с P={self.meta.pred_step}"
                )
            for sample in batch.samples:
                if sample.input.shape != self.meta.grid_shape or sample.target.shape != self.meta.grid_shape:
                    raise FieldError("Форма пары не совпадает с формой сетки датасета")

    @property
    def batch_size(self) -> int:
        return len(self.batches[0].samples) if self.batches else 0

    @property
    def sample_count(self) -> int:
        return sum(len(batch.samples) for batch in self.batches)

    def samples(self) -> list[Sample]:
        return [sample for batch in self.batches for sample in batch.samples]

    def inputs(self) -> np.ndarray:
        """Входы формы (n, N, M)."""
        return np.stack([s.input.values for s in self.samples()])

    def targets(self) -> np.ndarray:
        """Цели формы (n, N, M)."""
        return np.stack([s.target.values for s in self.samples()])

    def with_stats(self, mean: float | None, std: float | None) -> "Dataset":
        return Dataset(self.batches, self.meta, mean, std)
