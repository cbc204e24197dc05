"""
Сеточные поля и граничные условия Дирихле.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

logger = logging.getLogger(__name__)

# Порядок записи краёв: верх, низ, лево, право (углы достаются последнему)
EDGE_ORDER = ("top", "bottom", "left", "right")

DTYPE = np.dtype("<f8")


class FieldError(ValueError):
    """Некорректное поле: форма или значения."""


class ShapeMismatchError(FieldError):
    """Формы полей не совпадают."""
    def __init__(self, expected: tuple[int, ...], actual: tuple[int, ...]):
        super().__init__(f"Ожидалась форма {expected}, получена {actual}")
        self.expected = expected
        self.actual = actual


class Field:
    """
    Плотная сеточная функция (N строк × M столбцов, row-major).

    Точка (i, j) соответствует узлу x = jΔx, y = iΔy.
    1D-задачи хранятся как N×1. Значения только для чтения.
    """

    __slots__ = ("_values",)

    def __init__(self, values):
        array = np.array(values, dtype=np.float64, copy=True)
        if array.ndim == 1:
            array = array.reshape(-1, 1)
        if array.ndim != 2 or array.size == 0:
            raise FieldError(f"Поле должно быть двумерным и непустым, форма {array.shape}")
        if not np.all(np.isfinite(array)):
            raise FieldError("Поле содержит нечисловые значения (NaN/inf)")
        array.setflags(write=False)
        self._values = array

    @classmethod
    def wrap(cls, array: np.ndarray) -> "Field":
        """Обернуть готовый массив без копирования (массив не должен меняться)."""
        field = cls.__new__(cls)
        if array.ndim != 2:
            raise FieldError(f"Поле должно быть двумерным, форма {array.shape}")
        if not np.all(np.isfinite(array)):
            raise FieldError("Поле содержит нечисловые значения (NaN/inf)")
        array = np.asarray(array, dtype=np.float64)
        array.setflags(write=False)
        field._values = array
        return field

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def shape(self) -> tuple[int, int]:
        return self._values.shape

    def interior(self) -> np.ndarray:
        """Внутренние узлы (без краёв)."""
        return self._values[1:-1, 1:-1]

    def to_bytes(self) -> bytes:
        """Двоичное представление: float64 little-endian, row-major, без выравнивания."""
        return self._values.astype(DTYPE, copy=False).tobytes(order="C")

    @classmethod
    def from_bytes(cls, data: bytes, shape: tuple[int, int]) -> "Field":
        rows, cols = shape
        expected = rows * cols * DTYPE.itemsize
        if len(data) != expected:
            raise FieldError(f"Ожидалось {expected} байт для формы {shape}, получено {len(data)}")
        array = np.frombuffer(data, dtype=DTYPE).reshape(rows, cols).astype(np.float64)
        return cls.wrap(array)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._values, other._values)

    def __hash__(self) -> int:
        return hash((self.shape, self.to_bytes()))

    def __repr__(self) -> str:
        return f"<Field {self.shape[0]}x{self.shape[1]}>"


@dataclass(frozen=True)
class BoundarySpec:
    """
    Постоянные во времени условия Дирихле на краях.

    bc1 — верх, bc2 — низ, bc3 — лево, bc4 — право.
    Для 1D-задач концы могут задаваться функциями шага f0(l), fm1(l).
    """
    bc1: float
    bc2: float
    bc3: float
    bc4: float
    f0: Callable[[int], float] | None = None
    fm1: Callable[[int], float] | None = None

    def __post_init__(self):
        for name in ("bc1", "bc2", "bc3", "bc4"):
            if not math.isfinite(getattr(self, name)):
                raise FieldError(f"Граничное значение {name} должно быть конечным")

    @classmethod
    def uniform(cls, value: float) -> "BoundarySpec":
        return cls(value, value, value, value)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.bc1, self.bc2, self.bc3, self.bc4)

    def left_at(self, step: int) -> float:
        """Левый конец 1D-задачи на шаге step."""
        return self.f0(step) if self.f0 is not None else self.bc3

    def right_at(self, step: int) -> float:
        """Правый конец 1D-задачи на шаге step."""
        return self.fm1(step) if self.fm1 is not None else self.bc4


def make_uniform_field(shape: tuple[int, int], value: float) -> Field:
    """Поле заданной формы, заполненное одним значением."""
    if len(shape) != 2 or min(shape) < 1:
        raise FieldError(f"Некорректная форма {shape}")
    if not math.isfinite(value):
        raise FieldError(f"Значение {value} не является конечным")
    array = np.full(shape, float(value), dtype=np.float64)
    return Field.wrap(array)


def write_edges(array: np.ndarray, boundary: BoundarySpec) -> np.ndarray:
    """Записать края на месте в порядке EDGE_ORDER (работает и для пакетов полей)."""
    array[..., 0, :] = boundary.bc1
    array[..., -1, :] = boundary.bc2
    array[..., :, 0] = boundary.bc3
    array[..., :, -1] = boundary.bc4
    return array


def apply_dirichlet(field: Field, boundary: BoundarySpec) -> Field:
    """
    Наложить условия Дирихле на края поля.

    Внутренние узлы не меняются. Углы получают значение края,
    записанного последним (верх, низ, лево, право).
    """
    rows, cols = field.shape
    if rows < 3 or cols < 3:
        raise FieldError(
            f"Граничные условия 2D требуют поле не меньше 3x3, форма {field.shape}"
        )
    array = write_edges(field.values.copy(), boundary)
    return Field.wrap(array)
