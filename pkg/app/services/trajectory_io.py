"""
Экспорт траекторий: CSV (time_index, i, j, value) и двоичный формат DNTR1.
"""
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from app.core.fields import DTYPE, Field
from app.core.trajectory import Trajectory
from app.services.manifests import TrajectoryManifest, checksum, read_container, write_container

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["time_index", "i", "j", "value"]


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    """Длинная таблица значений траектории."""
    stack = trajectory.as_array()
    steps, rows, cols = stack.shape
    t_idx, i_idx, j_idx = np.meshgrid(np.array(trajectory.times), np.arange(rows), np.arange(cols), indexing="ij")
    return pd.DataFrame({
        "time_index": t_idx.ravel(),
        "i": i_idx.ravel(),
        "j": j_idx.ravel(),
        "value": stack.ravel(),
    }, columns=CSV_COLUMNS)


def export_trajectory(trajectory: Trajectory, path: str | Path, fmt: str = "bin") -> None:
    """Записать траекторию в CSV или двоичный файл."""
    if fmt == "csv":
        # %.17g и round_trip при чтении дают те же биты
        trajectory_frame(trajectory).to_csv(path, index=False, float_format="%.17g")
    elif fmt == "bin":
        payload = b"".join(state.to_bytes() for state in trajectory.states)
        manifest = TrajectoryManifest(
            shape=trajectory.shape,
            time_indices=list(trajectory.times),
            payload_bytes=len(payload),
            crc32=checksum(payload),
        )
        write_container(path, manifest, payload)
    else:
        raise ValueError(f"Неизвестный формат {fmt}, ожидается csv или bin")
    logger.info(f"Траектория ({len(trajectory)} состояний) записана: {path}")


def read_trajectory(path: str | Path) -> Trajectory:
    """Прочитать двоичную траекторию."""
    manifest, payload = read_container(
        path,
        TrajectoryManifest,
        lambda m: len(m.time_indices) * m.shape[0] * m.shape[1] * DTYPE.itemsize,
    )
    size = manifest.shape[0] * manifest.shape[1] * DTYPE.itemsize
    states = [
        (t, Field.from_bytes(payload[k * size:(k + 1) * size], manifest.shape))
        for k, t in enumerate(manifest.time_indices)
    ]
    return Trajectory(states)


def read_trajectory_csv(path: str | Path) -> Trajectory:
    frame = pd.read_csv(path, float_precision="round_trip")
    rows, cols = int(frame["i"].max()) + 1, int(frame["j"].max()) + 1
    states = []
    for t, group in frame.groupby("time_index", sort=True):
        values = np.zeros((rows, cols))
        values[group["i"].to_numpy(), group["j"].to_numpy()] = group["value"].to_numpy()
        states.append((int(t), Field.wrap(values)))
    return Trajectory(states)
