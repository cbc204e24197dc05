"""
Ускорение по чанкам: индексы 0..L делятся на P независимых последовательностей
(k, k+P, k+2P, ...), каждая продвигается пропагатором от своей затравки X(k).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from app.core.fields import Field
from app.core.problems import BurgersProblem, HeatProblem
from app.core.trajectory import ChunkPlan, Trajectory
from app.services.propagators import Propagator, advance
from app.solvers.burgers import burgers_step_field
from app.solvers.heat import adi_step_2d
from app.utils.metrics import mae, mse

logger = logging.getLogger(__name__)


class ChunkExecutionError(RuntimeError):
    """Ошибка в одном из чанков; прогон прерван."""
    def __init__(self, chunk_index: int, cause: Exception):
        super().__init__(f"Чанк {chunk_index} завершился ошибкой: {cause}")
        self.chunk_index = chunk_index
        self.cause = cause


class MalformedRunError(ValueError):
    """Набор чанков не покрывает 0..L ровно один раз."""
    def __init__(self, missing: list[int], duplicates: list[int], out_of_range: list[int] | None = None):
        out_of_range = out_of_range or []
        parts = []
        if missing:
            parts.append(f"нет индексов {missing}")
        if duplicates:
            parts.append(f"повторы индексов {duplicates}")
        if out_of_range:
            parts.append(f"индексы за пределами 0..L: {out_of_range}")
        super().__init__("Некорректный набор чанков: " + ("; ".join(parts) or "пусто"))
        self.missing = missing
        self.duplicates = duplicates
        self.out_of_range = out_of_range


class IndexMismatchError(KeyError):
    """В эталоне нет индекса, предсказанного чанком."""


@dataclass(frozen=True)
class ChunkRun:
    """Результат одного чанка: состояния в индексах k, k+P, ..."""
    index: int
    seed: Field
    states: tuple[tuple[int, Field], ...]
    recursion_count: int
    # L плана, из которого получен чанк
    last_index: int | None = None

    @property
    def times(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.states)


@dataclass(frozen=True)
class ChunkError:
    index: int
    mse: float
    mae: float
    count: int


@dataclass(frozen=True)
class ChunkErrorReport:
    """Ошибки по чанкам и по полному решению."""
    chunks: tuple[ChunkError, ...]
    full_mse: float
    full_mae: float
    count: int

    def weighted_mse(self) -> float:
        """Взвешенное по числу состояний среднее MSE чанков (равно full_mse)."""
        total = sum(c.count for c in self.chunks)
        return sum(c.mse * c.count for c in self.chunks) / total


def plan_chunks(L: int, P: int) -> ChunkPlan:
    """Чанк k = (k, k+P, ..., ⌊(L−k)/P⌋·P + k) для k = 0..P−1."""
    if L < 0:
        raise ValueError("L должно быть неотрицательным")
    if P < 1:
        raise ValueError("P должно быть не меньше 1")
    chunks = tuple(tuple(range(k, L + 1, P)) for k in range(P))
    return ChunkPlan(L=L, P=P, chunks=chunks)


def _one_step(problem: HeatProblem | BurgersProblem):
    if isinstance(problem, HeatProblem):
        return lambda field: adi_step_2d(field, problem.boundary, problem.lam)
    return lambda field: burgers_step_field(field, problem)


def seed_states(
    problem: HeatProblem | BurgersProblem,
    P: int,
    seed_propagator: Propagator | None = None,
) -> list[Field]:
    """
    Затравки X(0..P−1) последовательным счётом.

    Если задан seed_propagator (P=1), затравки считаются им — это приближение.
    """
    if P < 1:
        raise ValueError("P должно быть не меньше 1")
    if seed_propagator is not None:
        if seed_propagator.pred_step != 1:
            raise ValueError("Пропагатор затравок должен делать один шаг (P=1)")
        logger.warning("Затравки чанков считаются пропагатором: результат приближённый")
        step = seed_propagator.advance
    else:
        step = _one_step(problem)
    current = problem.initial_field()
    seeds = [current]
    for _ in range(P - 1):
        current = step(current)
        seeds.append(current)
    return seeds


def _run_one(chunk: Sequence[int], index: int, seed: Field, propagator: Propagator, last_index: int) -> ChunkRun:
    states = []
    current = seed
    recursions = 0
    for position, t in enumerate(chunk):
        if position > 0:
            current = advance(propagator, current)
            recursions += 1
        states.append((t, current))
    return ChunkRun(index=index, seed=seed, states=tuple(states), recursion_count=recursions, last_index=last_index)


def run_chunks(
    plan: ChunkPlan,
    seeds: Sequence[Field],
    propagator: Propagator,
    workers: int = 1,
    only: Iterable[int] | None = None,
) -> list[ChunkRun]:
    """
    Прогнать чанки независимо, от seeds[k] с повторным advance.

    Порядок выполнения не влияет на результат. only — подмножество чанков.

    Raises:
        ChunkExecutionError: с номером упавшего чанка
    """
    if len(seeds) != plan.P:
        raise ValueError(f"Нужно {plan.P} затравок, получено {len(seeds)}")
    if propagator.pred_step != plan.P:
        raise ValueError(f"P пропагатора {propagator.pred_step} не совпадает с P плана {plan.P}")
    selected = sorted(set(only)) if only is not None else list(range(plan.P))
    unknown = [k for k in selected if not 0 <= k < plan.P]
    if unknown:
        raise ValueError(f"Нет чанков с номерами {unknown}: допустимо 0..{plan.P - 1}")
    selected = [k for k in selected if plan.chunks[k]]

    def task(k: int) -> ChunkRun:
        try:
            return _run_one(plan.chunks[k], k, seeds[k], propagator, plan.L)
        except Exception as e:
            raise ChunkExecutionError(k, e) from e

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(task, selected))
    else:
        runs = [task(k) for k in selected]
    logger.info(f"Чанки: {len(runs)} из {plan.P}, L={plan.L}, потоков {workers}")
    return runs


def recombine(runs: Iterable[ChunkRun], L: int | None = None) -> Trajectory:
    """
    Собрать полную траекторию 0..L.

    L берётся из аргумента, иначе из чанков (last_index), иначе по наибольшему индексу.

    Raises:
        MalformedRunError: пропуски или повторы индексов
    """
    items: dict[int, Field] = {}
    duplicates = []
    planned = set()
    for run in runs:
        if run.last_index is not None:
            planned.add(run.last_index)
        for t, state in run.states:
            if t in items:
                duplicates.append(t)
            items[t] = state
    if L is None and len(planned) > 1:
        raise ValueError(f"Чанки получены из разных планов: L = {sorted(planned)}")
    if L is None and planned:
        L = planned.pop()
    if L is None:
        if not items:
            raise MalformedRunError([], [])
        L = max(items)
    extra = sorted(t for t in items if t > L)
    if extra:
        raise MalformedRunError([], [], out_of_range=extra)
    expected = range(L + 1)
    missing = [t for t in expected if t not in items]
    if missing or duplicates:
        raise MalformedRunError(missing, sorted(set(duplicates)))
    return Trajectory(sorted(items.items()))


def chunk_error_report(predicted_runs: Iterable[ChunkRun], reference: Trajectory) -> ChunkErrorReport:
    """
    MSE/MAE по каждому чанку и по объединению.

    Ошибка чанка — среднее по его состояниям от поэлементных MSE/MAE состояний.
    """
    per_chunk = []
    all_mse, all_mae = [], []
    for run in sorted(predicted_runs, key=lambda r: r.index):
        chunk_mse, chunk_mae = [], []
        for t, state in run.states:
            try:
                ref = reference.state_at(t)
            except KeyError:
                raise IndexMismatchError(f"В эталоне нет шага {t} (чанк {run.index})") from None
            chunk_mse.append(mse(state, ref))
            chunk_mae.append(mae(state, ref))
        per_chunk.append(ChunkError(run.index, float(np.mean(chunk_mse)), float(np.mean(chunk_mae)), len(chunk_mse)))
        all_mse.extend(chunk_mse)
        all_mae.extend(chunk_mae)
    if not all_mse:
        raise ValueError("Нет предсказанных состояний")
    return ChunkErrorReport(
        chunks=tuple(per_chunk),
        full_mse=float(np.mean(all_mse)),
        full_mae=float(np.mean(all_mae)),
        count=len(all_mse),
    )


def compare_reports(candidate: ChunkErrorReport, baseline: ChunkErrorReport) -> dict[str, float]:
    """Отношения MSE кандидата к базовому методу: по чанкам (C<k>) и полное (full)."""
    ratios = {}
    base_by_index = {c.index: c for c in baseline.chunks}
    for chunk in candidate.chunks:
        base = base_by_index.get(chunk.index)
        if base is None:
            raise IndexMismatchError(f"У базового отчёта нет чанка {chunk.index}")
        ratios[f"C{chunk.index}"] = chunk.mse / base.mse if base.mse > 0 else float("inf")
    ratios["full"] = candidate.full_mse / baseline.full_mse if baseline.full_mse > 0 else float("inf")
    return ratios


@dataclass(frozen=True)
class WinCounts:
    """Сколько образцов кандидат решил точнее базового метода."""
    per_chunk: dict[int, int]
    full: int
    samples: int


def win_counts(candidates: Sequence[ChunkErrorReport], baselines: Sequence[ChunkErrorReport]) -> WinCounts:
    """Частота побед по MSE: отдельно для каждого чанка и для полного решения."""
    if len(candidates) != len(baselines):
        raise ValueError("Число отчётов кандидата и базового метода различается")
    per_chunk: dict[int, int] = {}
    full = 0
    for cand, base in zip(candidates, baselines):
        base_by_index = {c.index: c.mse for c in base.chunks}
        for chunk in cand.chunks:
            won = chunk.mse < base_by_index[chunk.index]
            per_chunk[chunk.index] = per_chunk.get(chunk.index, 0) + int(won)
        full += int(cand.full_mse < base.full_mse)
    return WinCounts(per_chunk=per_chunk, full=full, samples=len(candidates))


def report_frame(report: ChunkErrorReport) -> pd.DataFrame:
    """Отчёт таблицей: строка на чанк и итоговая строка full."""
    rows = [
        {"chunk": str(c.index), "states": c.count, "mse": c.mse, "mae": c.mae}
        for c in report.chunks
    ]
    rows.append({"chunk": "full", "states": report.count, "mse": report.full_mse, "mae": report.full_mae})
    return pd.DataFrame(rows, columns=["chunk", "states", "mse", "mae"])
