"""
Сохранение и загрузка пропагаторов: манифест DNP1 + веса в формате Field.
"""
import logging
from pathlib import Path

import numpy as np

from app.core.fields import DTYPE, BoundarySpec, Field
from app.core.problems import BurgersProblem, HeatProblem
from app.services.datagen import Standardizer
from app.services.manifests import (
    MalformedHeaderError,
    PropagatorManifest,
    checksum,
    read_container,
    write_container,
)
from app.services.propagators import AffinePropagator, NumericalPropagator, Propagator, RidgePropagator

logger = logging.getLogger(__name__)


def _problem_from_dict(data: dict | None) -> HeatProblem | BurgersProblem:
    if not data:
        raise MalformedHeaderError("В манифесте нет параметров задачи")
    try:
        if data["kind"] == "heat":
            return HeatProblem(
                shape=tuple(data["shape"]),
                boundary=BoundarySpec(*data["bc"]),
                ic=data["ic"] if data["ic"] is not None else 0.0,
                lam=data["lam"],
            )
        if data["kind"] == "burgers":
            return BurgersProblem(Field(np.array(data["u0"]).reshape(-1, 1)), data["dt"], data["dx"])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedHeaderError(f"Параметры задачи не разобраны: {e}") from e
    raise MalformedHeaderError(f"Неизвестный класс задачи: {data.get('kind')}")


def save_propagator(propagator: Propagator, path: str | Path) -> None:
    """Записать пропагатор (веса — float64 LE, row-major)."""
    weights: list[np.ndarray] = []
    problem = None
    reg = mean = std = None
    if isinstance(propagator, NumericalPropagator):
        problem = propagator.problem.describe()
    elif isinstance(propagator, AffinePropagator):
        problem = propagator.problem.describe()
        weights = [propagator.matrix, propagator.offset.reshape(-1, 1)]
    elif isinstance(propagator, RidgePropagator):
        weights = [propagator.weights]
        reg = propagator.reg
        if propagator.standardizer is not None:
            mean, std = propagator.standardizer.mean, propagator.standardizer.std
    else:
        raise TypeError(f"Неизвестный пропагатор: {type(propagator).__name__}")

    payload = b"".join(np.ascontiguousarray(w, dtype=DTYPE).tobytes() for w in weights)
    manifest = PropagatorManifest(
        kind=propagator.kind,
        pred_step=propagator.pred_step,
        shape=propagator.shape,
        problem=problem,
        weight_shapes=[w.shape for w in weights],
        reg=reg,
        mean=mean,
        std=std,
        payload_bytes=len(payload),
        crc32=checksum(payload),
    )
    write_container(path, manifest, payload)
    logger.info(f"Пропагатор {propagator.kind} сохранён: {path}")


def load_propagator(path: str | Path) -> Propagator:
    """
    Прочитать пропагатор.

    Raises:
        MalformedHeaderError, TruncatedPayloadError, ChecksumMismatchError
    """
    manifest, payload = read_container(
        path,
        PropagatorManifest,
        lambda m: sum(r * c for r, c in m.weight_shapes) * DTYPE.itemsize,
    )
    weights = []
    offset = 0
    for rows, cols in manifest.weight_shapes:
        size = rows * cols * DTYPE.itemsize
        weights.append(Field.from_bytes(payload[offset:offset + size], (rows, cols)).values)
        offset += size

    if manifest.kind == "numerical":
        return NumericalPropagator(_problem_from_dict(manifest.problem), manifest.pred_step)
    if manifest.kind == "affine":
        if len(weights) != 2:
            raise MalformedHeaderError("Аффинный пропагатор должен содержать M и b", path)
        return AffinePropagator(
            weights[0].copy(), weights[1][:, 0].copy(), manifest.pred_step, _problem_from_dict(manifest.problem)
        )
    if len(weights) != 1:
        raise MalformedHeaderError("Гребневый пропагатор должен содержать одну матрицу весов", path)
    standardizer = Standardizer(manifest.mean, manifest.std) if manifest.std is not None else None
    return RidgePropagator(weights[0].copy(), manifest.pred_step, manifest.shape, manifest.reg or 0.0, standardizer)
