"""
Постановки задач: теплопроводность, Бюргерс, случайные перестановки параметров.
"""
import math
from dataclasses import dataclass

import numpy as np

from app.core.fields import BoundarySpec, Field, FieldError, apply_dirichlet, make_uniform_field


@dataclass(frozen=True)
class HeatProblem:
    """
    Нестационарная теплопроводность на квадратной сетке (Δx = Δy).

    lam — собирательный коэффициент λ = kΔt/(Δx)².
    ic — равномерная начальная температура или полное начальное поле.
    """
    shape: tuple[int, int]
    boundary: BoundarySpec
    ic: float | Field
    lam: float

    def __post_init__(self):
        rows, cols = self.shape
        if rows < 3 or cols < 3:
            raise FieldError(f"Сетка должна быть не меньше 3x3, получено {self.shape}")
        if not math.isfinite(self.lam) or self.lam < 0:
            raise FieldError(f"λ должна быть неотрицательной, получено {self.lam}")
        if isinstance(self.ic, Field):
            if self.ic.shape != tuple(self.shape):
                raise FieldError(f"Форма начального поля {self.ic.shape} не равна {self.shape}")
        elif not math.isfinite(self.ic):
            raise FieldError("Начальная температура должна быть конечной")

    @property
    def interior_shape(self) -> tuple[int, int]:
        return (self.shape[0] - 2, self.shape[1] - 2)

    @property
    def interior_size(self) -> int:
        rows, cols = self.interior_shape
        return rows * cols

    def initial_field(self) -> Field:
        """Начальное поле с наложенными краями."""
        if isinstance(self.ic, Field):
            base = self.ic
        else:
            base = make_uniform_field(self.shape, self.ic)
        return apply_dirichlet(base, self.boundary)

    def with_ic(self, ic: float | Field) -> "HeatProblem":
        return HeatProblem(self.shape, self.boundary, ic, self.lam)

    def describe(self) -> dict:
        """Параметры задачи для манифестов (только числовое НУ)."""
        return {
            "kind": "heat",
            "shape": list(self.shape),
            "bc": list(self.boundary.as_tuple()),
            "ic": self.ic if not isinstance(self.ic, Field) else None,
            "lam": self.lam,
        }


@dataclass(frozen=True)
class BurgersProblem:
    """Невязкое уравнение Бюргерса: начальная скорость (N×1), шаги dt и dx."""
    u0: Field
    dt: float
    dx: float

    def __post_init__(self):
        if self.u0.shape[1] != 1:
            raise FieldError(f"Поле Бюргерса должно иметь форму N×1, получено {self.u0.shape}")
        if not (self.dt > 0 and self.dx > 0):
            raise FieldError("dt и dx должны быть положительными")

    @property
    def shape(self) -> tuple[int, int]:
        return self.u0.shape

    @property
    def cfl(self) -> float:
        return float(np.max(np.abs(self.u0.values))) * self.dt / self.dx

    def initial_field(self) -> Field:
        return self.u0

    def describe(self) -> dict:
        return {
            "kind": "burgers",
            "shape": list(self.shape),
            "u0": self.u0.values[:, 0].tolist(),
            "dt": self.dt,
            "dx": self.dx,
        }


@dataclass(frozen=True)
class PermutationSample:
    """Случайная перестановка (BC1, BC2, BC3, BC4, IC, λ)."""
    bc1: float
    bc2: float
    bc3: float
    bc4: float
    ic: float
    lam: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.bc1, self.bc2, self.bc3, self.bc4, self.ic, self.lam)

    def to_problem(self, shape: tuple[int, int]) -> HeatProblem:
        return HeatProblem(
            shape=shape,
            boundary=BoundarySpec(self.bc1, self.bc2, self.bc3, self.bc4),
            ic=self.ic,
            lam=self.lam,
        )
