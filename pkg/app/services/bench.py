"""
Замеры скорости: P шагов численного решателя против одного прогноза пропагатора.
"""
import gc
import logging
import statistics
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

import pandas as pd

from app.core.fields import Field
from app.core.problems import HeatProblem
from app.services.propagators import Propagator, advance
from app.solvers.heat import heat_advance
from app.utils.metrics import mae

logger = logging.getLogger(__name__)

MIN_ELAPSED = 1e-6
MIN_REPS = 3

BENCH_COLUMNS = [
    "grid_rows",
    "grid_cols",
    "steps",
    "pred_step",
    "numerical_time_s",
    "propagator_time_s",
    "ratio",
    "reps",
    "mae",
]


class TimerResolutionError(RuntimeError):
    """Замер короче разрешения таймера."""
    def __init__(self, elapsed: float):
        super().__init__(
            f"Время замера {elapsed:.2e} с меньше {MIN_ELAPSED:.0e} с: увеличьте reps или размер задачи"
        )
        self.elapsed = elapsed


@dataclass(frozen=True)
class BenchRecord:
    grid_rows: int
    grid_cols: int
    steps: int
    pred_step: int
    numerical_time_s: float
    propagator_time_s: float
    ratio: float
    reps: int
    mae: float

    def as_row(self) -> dict:
        return asdict(self)


def _median_time(run: Callable[[], Field], reps: int, timer: Callable[[], float]) -> tuple[float, Field]:
    result = run()  # прогрев, не учитывается
    samples = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(reps):
            start = timer()
            result = run()
            samples.append(timer() - start)
    finally:
        if gc_was_enabled:
            gc.enable()
    return statistics.median(samples), result


def bench_single_chunk(
    problem: HeatProblem,
    P: int,
    propagator: Propagator,
    reps: int = 5,
    steps: int | None = None,
    timer: Callable[[], float] = time.perf_counter,
) -> BenchRecord:
    """
    Медианы reps замеров: steps шагов ADI против steps/P прогнозов.

    По умолчанию steps = P (один чанк, один прогноз).

    Raises:
        TimerResolutionError: медиана меньше 1 мкс
    """
    if reps < MIN_REPS:
        raise ValueError(f"reps должно быть не меньше {MIN_REPS}")
    steps = P if steps is None else steps
    if steps < P or steps % P:
        raise ValueError(f"steps={steps} должно быть кратно P={P}")
    if propagator.pred_step != P:
        raise ValueError(f"P пропагатора {propagator.pred_step} не совпадает с {P}")

    start = problem.initial_field()
    predictions = steps // P

    def numerical() -> Field:
        return heat_advance(start, problem.boundary, problem.lam, steps)

    def surrogate() -> Field:
        current = start
        for _ in range(predictions):
            current = advance(propagator, current)
        return current

    numerical_time, numerical_end = _median_time(numerical, reps, timer)
    propagator_time, propagator_end = _median_time(surrogate, reps, timer)
    for elapsed in (numerical_time, propagator_time):
        if elapsed < MIN_ELAPSED:
            raise TimerResolutionError(elapsed)

    record = BenchRecord(
        grid_rows=problem.shape[0],
        grid_cols=problem.shape[1],
        steps=steps,
        pred_step=P,
        numerical_time_s=numerical_time,
        propagator_time_s=propagator_time,
        ratio=numerical_time / propagator_time,
        reps=reps,
        mae=mae(numerical_end, propagator_end),
    )
    logger.info(
        f"Бенчмарк {problem.shape[0]}x{problem.shape[1]}, steps={steps}, P={P}: "
        f"ratio={record.ratio:.2f}, MAE={record.mae:.2e}"
    )
    return record


def bench_sweep(
    grid_sizes: Iterable[int | tuple[int, int]],
    steps_list: Iterable[int],
    P: int,
    propagator_factory: Callable[[HeatProblem], Propagator],
    problem_factory: Callable[[tuple[int, int]], HeatProblem],
    reps: int = 5,
) -> pd.DataFrame:
    """
    Строка BenchRecord на каждую пару (сетка, шаги).

    Пропагатор строится один раз на сетку.
    """
    grids = [(g, g) if isinstance(g, int) else tuple(g) for g in grid_sizes]
    steps_list = list(steps_list)
    if not grids or not steps_list:
        raise ValueError("Списки сеток и шагов не должны быть пустыми")
    rows = []
    for shape in grids:
        problem = problem_factory(shape)
        propagator = propagator_factory(problem)
        for steps in steps_list:
            rows.append(bench_single_chunk(problem, P, propagator, reps=reps, steps=steps).as_row())
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)


def records_from_frame(frame: pd.DataFrame) -> list[BenchRecord]:
    return [BenchRecord(**row) for row in frame.to_dict(orient="records")]
