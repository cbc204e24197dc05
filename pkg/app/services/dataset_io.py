"""
Файл датасета: манифест DNT1 + нагрузка.

Нагрузка: для каждого батча t0 (uint64 LE), затем образцы по порядку,
каждый — входное поле и целевое поле в двоичном формате Field.
"""
import logging
import struct
from pathlib import Path

from app.core.dataset import Batch, Dataset, DatasetMeta, Sample
from app.core.fields import DTYPE, Field
from app.core.problems import PermutationSample
from app.services.manifests import (
    DatasetManifest,
    MalformedHeaderError,
    PermutationRecord,
    checksum,
    read_container,
    write_container,
)

logger = logging.getLogger(__name__)

T0_FORMAT = "<Q"


def _payload_size(manifest: DatasetManifest) -> int:
    rows, cols = manifest.grid_shape
    field_bytes = rows * cols * DTYPE.itemsize
    return manifest.batches * (struct.calcsize(T0_FORMAT) + manifest.batch_size * 2 * field_bytes)


def _permutation_record(permutation: PermutationSample | None) -> PermutationRecord | None:
    if permutation is None:
        return None
    return PermutationRecord(**dict(zip(("bc1", "bc2", "bc3", "bc4", "ic", "lam"), permutation.as_tuple())))


def write_dataset(dataset: Dataset, path: str | Path) -> None:
    """Записать датасет (побайтно детерминированно)."""
    sizes = {len(batch.samples) for batch in dataset.batches}
    if len(sizes) > 1:
        raise ValueError(f"Батчи разного размера: {sorted(sizes)}")

    chunks = []
    for batch in dataset.batches:
        chunks.append(struct.pack(T0_FORMAT, batch.t0))
        for sample in batch.samples:
            chunks.append(sample.input.to_bytes())
            chunks.append(sample.target.to_bytes())
    payload = b"".join(chunks)

    meta = dataset.meta
    permutations = [[_permutation_record(s.permutation) for s in batch.samples] for batch in dataset.batches]
    manifest = DatasetManifest(
        grid_shape=meta.grid_shape,
        pred_step=meta.pred_step,
        batches=len(dataset.batches),
        batch_size=dataset.batch_size or 1,
        bc_ic_range=meta.bc_ic_range,
        lambda_range=meta.lambda_range,
        t_range=meta.t_range,
        seed=meta.seed,
        mean=dataset.mean,
        std=dataset.std,
        permutations=permutations,
        payload_bytes=len(payload),
        crc32=checksum(payload),
    )
    write_container(path, manifest, payload)
    logger.info(f"Датасет записан: {path} ({dataset.sample_count} пар, {len(payload)} байт)")


def read_dataset(path: str | Path) -> Dataset:
    """
    Прочитать датасет.

    Raises:
        MalformedHeaderError, TruncatedPayloadError, ChecksumMismatchError
    """
    manifest, payload = read_container(path, DatasetManifest, _payload_size)
    if manifest.permutations is not None and (
        len(manifest.permutations) != manifest.batches
        or any(len(row) != manifest.batch_size for row in manifest.permutations)
    ):
        raise MalformedHeaderError("Список перестановок не совпадает с числом образцов", path)
    rows, cols = manifest.grid_shape
    field_bytes = rows * cols * DTYPE.itemsize
    t0_bytes = struct.calcsize(T0_FORMAT)

    batches = []
    offset = 0
    for i in range(manifest.batches):
        (t0,) = struct.unpack_from(T0_FORMAT, payload, offset)
        offset += t0_bytes
        samples = []
        for j in range(manifest.batch_size):
            source = Field.from_bytes(payload[offset:offset + field_bytes], (rows, cols))
            offset += field_bytes
            target = Field.from_bytes(payload[offset:offset + field_bytes], (rows, cols))
            offset += field_bytes
            record = manifest.permutations[i][j] if manifest.permutations else None
            permutation = PermutationSample(**record.model_dump()) if record is not None else None
            samples.append(Sample(source, target, permutation))
        batches.append(Batch(t0=t0, t1=t0 + manifest.pred_step, samples=tuple(samples)))

    meta = DatasetMeta(
        grid_shape=(rows, cols),
        pred_step=manifest.pred_step,
        bc_ic_range=tuple(manifest.bc_ic_range),
        lambda_range=tuple(manifest.lambda_range),
        t_range=tuple(manifest.t_range),
        seed=manifest.seed,
    )
    return Dataset(tuple(batches), meta, manifest.mean, manifest.std)
