"""
Траектории решения и разбиение на чанки.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from app.core.fields import Field, FieldError


class Trajectory:
    """Упорядоченная последовательность (t, X(t)) с общей формой состояний."""

    __slots__ = ("_times", "_states")

    def __init__(self, items: Iterable[tuple[int, Field]]):
        items = list(items)
        if not items:
            raise FieldError("Траектория не может быть пустой")
        times = tuple(int(t) for t, _ in items)
        states = tuple(state for _, state in items)
        if times[0] < 0:
            raise FieldError("Индексы времени должны быть неотрицательными")
        for prev, cur in zip(times, times[1:]):
            if cur <= prev:
                raise FieldError(f"Индексы времени должны строго возрастать: {prev} -> {cur}")
        shape = states[0].shape
        for state in states:
            if state.shape != shape:
                raise FieldError(f"Состояния разной формы: {shape} и {state.shape}")
        self._times = times
        self._states = states

    @property
    def times(self) -> tuple[int, ...]:
        return self._times

    @property
    def states(self) -> tuple[Field, ...]:
        return self._states

    @property
    def shape(self) -> tuple[int, int]:
        return self._states[0].shape

    @property
    def final(self) -> Field:
        return self._states[-1]

    def state_at(self, t: int) -> Field:
        try:
            return self._states[self._times.index(t)]
        except ValueError:
            raise KeyError(f"В траектории нет шага {t}") from None

    def as_array(self) -> np.ndarray:
        """Массив формы (шаги, N, M)."""
        return np.stack([state.values for state in self._states])

    def __len__(self) -> int:
        return len(self._times)

    def __iter__(self) -> Iterator[tuple[int, Field]]:
        return iter(zip(self._times, self._states))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trajectory):
            return NotImplemented
        return self._times == other._times and self._states == other._states

    def __repr__(self) -> str:
        return f"<Trajectory {len(self)} states {self._times[0]}..{self._times[-1]}>"


@dataclass(frozen=True)
class ChunkPlan:
    """
    Разбиение индексов 0..L на P чередующихся чанков.

    Чанк k: (k, k+P, k+2P, ..., ⌊(L−k)/P⌋·P + k).
    """
    L: int
    P: int
    chunks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.chunks) != self.P:
            raise FieldError(f"Ожидалось {self.P} чанков, получено {len(self.chunks)}")

    @property
    def max_recursions(self) -> int:
        return self.L // self.P

    def indices(self) -> list[int]:
        return sorted(t for chunk in self.chunks for t in chunk)
