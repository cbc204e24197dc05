"""
Генерация обучающих данных: случайные перестановки, батчи (X(t0), X(t0+P)), стандартизация.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from app.core.dataset import Batch, Dataset, DatasetMeta, Sample
from app.core.fields import Field, write_edges
from app.core.problems import HeatProblem, PermutationSample
from app.solvers.heat import heat_advance

logger = logging.getLogger(__name__)


class ConstantDatasetError(ValueError):
    """Все значения датасета одинаковы, σ = 0."""


@dataclass(frozen=True)
class GenConfig:
    """Диапазоны и размеры для генерации датасета."""
    grid_shape: tuple[int, int] = (12, 12)
    pred_step: int = 10
    batches: int = 1
    batch_size: int = 32
    bc_ic_range: tuple[float, float] = (0.0, 100.0)
    lambda_range: tuple[float, float] = (0.0, 1.0)
    t_range: tuple[int, int] = (0, 1000)
    seed: int = 0

    def __post_init__(self):
        for name in ("bc_ic_range", "lambda_range", "t_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: нижняя граница {lo} больше верхней {hi}")
        if self.lambda_range[0] < 0:
            raise ValueError("λ не может быть отрицательной")
        if self.t_range[0] < 0:
            raise ValueError("Начальный шаг не может быть отрицательным")
        if self.pred_step < 1:
            raise ValueError("P должно быть не меньше 1")
        if self.batch_size < 1:
            raise ValueError("batch_size должно быть не меньше 1")
        if self.batches < 0:
            raise ValueError("batches не может быть отрицательным")

    def meta(self) -> DatasetMeta:
        return DatasetMeta(
            grid_shape=tuple(self.grid_shape),
            pred_step=self.pred_step,
            bc_ic_range=tuple(self.bc_ic_range),
            lambda_range=tuple(self.lambda_range),
            t_range=tuple(self.t_range),
            seed=self.seed,
        )


@dataclass(frozen=True)
class Standardizer:
    """(x − μ)/σ по всем точкам данных."""
    mean: float
    std: float

    def __post_init__(self):
        if not (self.std > 0 and math.isfinite(self.std)):
            raise ConstantDatasetError(f"σ должна быть положительной, получено {self.std}")

    def transform(self, values: np.ndarray) -> np.ndarray:
        return (values - self.mean) / self.std

    def inverse(self, values: np.ndarray) -> np.ndarray:
        return values * self.std + self.mean


def generate_random_permutation(config: GenConfig, rng: np.random.Generator) -> PermutationSample:
    """Шесть независимых равномерных значений (BC1..BC4, IC, λ)."""
    lo, hi = config.bc_ic_range
    temps = [float(rng.uniform(lo, hi)) for _ in range(5)]
    lam = float(rng.uniform(*config.lambda_range))
    return PermutationSample(*temps, lam=lam)


def batch_streams(seed: int | np.random.SeedSequence, batches: int, batch_size: int) -> list[tuple[np.random.SeedSequence, list[np.random.SeedSequence]]]:
    """
    Разбиение потоков ГСЧ: корень → батч i → (поток t0, потоки образцов 0..batch_size−1).

    Поток каждого образца фиксирован индексами (i, j), порядок вычисления неважен.
    """
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    streams = []
    for batch_seq in root.spawn(batches):
        t_seq, *sample_seqs = batch_seq.spawn(batch_size + 1)
        streams.append((t_seq, sample_seqs))
    return streams


def solve_pair(permutation: PermutationSample, shape: tuple[int, int], t0: int, pred_step: int) -> Sample:
    """Решить задачу перестановки до t0 + P и взять пару (X(t0), X(t0+P))."""
    problem = permutation.to_problem(shape)
    start = heat_advance(problem.initial_field(), problem.boundary, problem.lam, t0)
    target = heat_advance(start, problem.boundary, problem.lam, pred_step)
    return Sample(start, target, permutation)


def _generate_batch(config: GenConfig, t_seq, sample_seqs) -> Batch:
    t_lo, t_hi = config.t_range
    t0 = int(np.random.Generator(np.random.PCG64(t_seq)).integers(t_lo, t_hi, endpoint=True))
    samples = []
    for seq in sample_seqs:
        permutation = generate_random_permutation(config, np.random.Generator(np.random.PCG64(seq)))
        samples.append(solve_pair(permutation, tuple(config.grid_shape), t0, config.pred_step))
    return Batch(t0=t0, t1=t0 + config.pred_step, samples=tuple(samples))


def generate_dataset(
    config: GenConfig,
    rng: np.random.SeedSequence | None = None,
    workers: int = 1,
) -> Dataset:
    """
    Сгенерировать датасет по батчам.

    Внутри батча все образцы берутся в одни и те же (t0, t0+P),
    между батчами t0 разный. Батчи могут считаться параллельно.
    """
    streams = batch_streams(rng if rng is not None else config.seed, config.batches, config.batch_size)
    logger.info(
        f"Генерация: {config.batches} батчей по {config.batch_size}, "
        f"сетка {config.grid_shape}, P={config.pred_step}, потоков {workers}"
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(lambda s: _generate_batch(config, *s), streams))
    else:
        batches = [_generate_batch(config, *s) for s in streams]

    dataset = Dataset(tuple(batches), config.meta())
    if dataset.sample_count == 0:
        return dataset
    try:
        stats = fit_standardizer(dataset)
    except ConstantDatasetError:
        logger.warning("Датасет постоянный, статистика стандартизации не сохранена")
        return dataset
    return dataset.with_stats(stats.mean, stats.std)


def generate_probe_dataset(problem: HeatProblem, pred_step: int, samples: int, seed: int = 0) -> Dataset:
    """
    Датасет одной перестановки со случайными внутренними состояниями.

    Входы — края задачи и равномерно случайная внутренность в диапазоне
    температур задачи; цели — P шагов ADI от входа.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    temps = [*problem.boundary.as_tuple()]
    if not isinstance(problem.ic, Field):
        temps.append(problem.ic)
    lo, hi = min(temps), max(temps)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0

    inputs = rng.uniform(lo, hi, size=(samples, *problem.shape))
    write_edges(inputs, problem.boundary)
    pairs = []
    for values in inputs:
        start = Field.wrap(values.copy())
        pairs.append(Sample(start, heat_advance(start, problem.boundary, problem.lam, pred_step)))

    meta = DatasetMeta(
        grid_shape=tuple(problem.shape),
        pred_step=pred_step,
        bc_ic_range=(float(lo), float(hi)),
        lambda_range=(problem.lam, problem.lam),
        t_range=(0, 0),
        seed=seed,
    )
    dataset = Dataset((Batch(0, pred_step, tuple(pairs)),), meta)
    stats = fit_standardizer(dataset)
    return dataset.with_stats(stats.mean, stats.std)


def fit_standardizer(dataset: Dataset) -> Standardizer:
    """
    μ и σ (генеральная) по всем значениям входов и целей вместе.

    Raises:
        ConstantDatasetError: σ = 0
    """
    if dataset.sample_count == 0:
        raise ValueError("Пустой датасет")
    values = np.concatenate([dataset.inputs().ravel(), dataset.targets().ravel()])
    mean = float(np.mean(values))
    std = float(np.std(values))
    if std == 0.0:
        raise ConstantDatasetError("Все значения датасета одинаковы, σ = 0")
    return Standardizer(mean, std)


def standardize(field: Field, standardizer: Standardizer) -> Field:
    return Field.wrap(standardizer.transform(field.values))


def destandardize(field: Field, standardizer: Standardizer) -> Field:
    return Field.wrap(standardizer.inverse(field.values))
