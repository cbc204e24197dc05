"""
Доменные типы: поля, задачи, траектории, датасеты.
"""
from app.core.fields import (
    BoundarySpec,
    Field,
    FieldError,
    ShapeMismatchError,
    apply_dirichlet,
    make_uniform_field,
)
from app.core.problems import BurgersProblem, HeatProblem, PermutationSample
from app.core.trajectory import ChunkPlan, Trajectory
from app.core.dataset import Batch, Dataset, DatasetMeta, Sample

__all__ = [
    "BoundarySpec",
    "Field",
    "FieldError",
    "ShapeMismatchError",
    "apply_dirichlet",
    "make_uniform_field",
    "BurgersProblem",
    "HeatProblem",
    "PermutationSample",
    "ChunkPlan",
    "Trajectory",
    "Batch",
    "Dataset",
    "DatasetMeta",
    "Sample",
]
