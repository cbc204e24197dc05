"""
JSON-манифесты двоичных файлов (датасет, пропагатор, траектория).

Файл = одна строка компактного JSON, '\\n', затем полезная нагрузка.
"""
import zlib
from pathlib import Path
from typing import Callable, Literal, TypeVar

from pydantic import BaseModel, ConfigDict, Field as PydanticField, ValidationError

DATASET_VERSION = "DNT1"
PROPAGATOR_VERSION = "DNP1"
TRAJECTORY_VERSION = "DNTR1"


class DatasetFormatError(Exception):
    """Ошибка формата файла."""
    def __init__(self, message: str, path: str | Path | None = None):
        super().__init__(message)
        self.path = str(path) if path is not None else None


class MalformedHeaderError(DatasetFormatError):
    """Манифест не читается или не согласован с нагрузкой."""


class TruncatedPayloadError(DatasetFormatError):
    """Нагрузка короче заявленной."""


class ChecksumMismatchError(DatasetFormatError):
    """CRC-32 нагрузки не совпадает с манифестом."""


class _Manifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    payload_bytes: int = PydanticField(ge=0)
    crc32: int = PydanticField(ge=0)


class PermutationRecord(BaseModel):
    bc1: float
    bc2: float
    bc3: float
    bc4: float
    ic: float
    lam: float


class DatasetManifest(_Manifest):
    version: Literal["DNT1"] = DATASET_VERSION
    grid_shape: tuple[int, int]
    pred_step: int = PydanticField(ge=1)
    batches: int = PydanticField(ge=0)
    batch_size: int = PydanticField(ge=1)
    bc_ic_range: tuple[float, float]
    lambda_range: tuple[float, float]
    t_range: tuple[int, int]
    seed: int
    mean: float | None = None
    std: float | None = None
    permutations: list[list[PermutationRecord | None]] | None = None


class PropagatorManifest(_Manifest):
    version: Literal["DNP1"] = PROPAGATOR_VERSION
    kind: Literal["numerical", "affine", "ridge"]
    pred_step: int = PydanticField(ge=1)
    shape: tuple[int, int]
    problem: dict | None = None
    weight_shapes: list[tuple[int, int]] = []
    reg: float | None = None
    mean: float | None = None
    std: float | None = None


class TrajectoryManifest(_Manifest):
    version: Literal["DNTR1"] = TRAJECTORY_VERSION
    shape: tuple[int, int]
    time_indices: list[int]


M = TypeVar("M", bound=_Manifest)


def checksum(payload: bytes) -> int:
    return zlib.crc32(payload) & 0xFFFFFFFF


def write_container(path: str | Path, manifest: _Manifest, payload: bytes) -> None:
    """Записать манифест и нагрузку одним файлом."""
    header = manifest.model_dump_json().encode("utf-8")
    Path(path).write_bytes(header + b"\n" + payload)


def read_container(path: str | Path, model: type[M], expected_payload: Callable[[M], int] | None = None) -> tuple[M, bytes]:
    """
    Прочитать файл и проверить целостность.

    Raises:
        MalformedHeaderError: манифест не разобран или размер не сходится с содержимым
        TruncatedPayloadError: нагрузка короче заявленной
        ChecksumMismatchError: CRC-32 не совпал
    """
    raw = Path(path).read_bytes()
    header, sep, payload = raw.partition(b"\n")
    if not sep:
        raise MalformedHeaderError("Не найден конец манифеста", path)
    try:
        manifest = model.model_validate_json(header)
    except (ValidationError, ValueError) as e:
        raise MalformedHeaderError(f"Манифест не разобран: {e}", path) from e

    if expected_payload is not None:
        expected = expected_payload(manifest)
        if expected != manifest.payload_bytes:
            raise MalformedHeaderError(
                f"Манифест заявляет {manifest.payload_bytes} байт, а по счётчикам нужно {expected}",
                path,
            )
    if len(payload) < manifest.payload_bytes:
        raise TruncatedPayloadError(
            f"Нагрузка обрезана: {len(payload)} из {manifest.payload_bytes} байт", path
        )
    if len(payload) > manifest.payload_bytes:
        raise MalformedHeaderError(
            f"Лишние данные после нагрузки: {len(payload) - manifest.payload_bytes} байт", path
        )
    if checksum(payload) != manifest.crc32:
        raise ChecksumMismatchError("Контрольная сумма нагрузки не совпадает", path)
    return manifest, payload
