import json

import pytest

from app.services.datagen import GenConfig, generate_dataset
from app.services.dataset_io import read_dataset, write_dataset
from app.services.manifests import ChecksumMismatchError, MalformedHeaderError, TruncatedPayloadError


@pytest.fixture
def dataset():
    return generate_dataset(GenConfig(grid_shape=(5, 6), pred_step=3, batches=2, batch_size=3, t_range=(0, 10), seed=7))


@pytest.fixture
def dataset_file(tmp_path, dataset):
    path = tmp_path / "train.dnt"
    write_dataset(dataset, path)
    return path


def _split(path):
    raw = path.read_bytes()
    header, _, payload = raw.partition(b"\n")
    return json.loads(header), payload


def test_round_trip(dataset, dataset_file):
    assert read_dataset(dataset_file) == dataset


def test_manifest_contents(dataset_file):
    manifest, payload = _split(dataset_file)
    assert manifest["version"] == "DNT1"
    assert manifest["grid_shape"] == [5, 6]
    assert manifest["batches"] == 2
    assert manifest["batch_size"] == 3
    assert manifest["payload_bytes"] == len(payload) == 2 * (8 + 3 * 2 * 5 * 6 * 8)
    assert len(manifest["permutations"]) == 2


def test_write_is_deterministic(tmp_path, dataset):
    first, second = tmp_path / "a.dnt", tmp_path / "b.dnt"
    write_dataset(dataset, first)
    write_dataset(generate_dataset(GenConfig(grid_shape=(5, 6), pred_step=3, batches=2, batch_size=3, t_range=(0, 10), seed=7)), second)
    assert first.read_bytes() == second.read_bytes()


def test_truncated_payload(dataset_file):
    raw = dataset_file.read_bytes()
    dataset_file.write_bytes(raw[:-17])
    with pytest.raises(TruncatedPayloadError):
        read_dataset(dataset_file)


def test_flipped_byte(dataset_file):
    raw = bytearray(dataset_file.read_bytes())
    raw[-5] ^= 0xFF
    dataset_file.write_bytes(bytes(raw))
    with pytest.raises(ChecksumMismatchError):
        read_dataset(dataset_file)


def test_garbage_header(dataset_file):
    _, payload = _split(dataset_file)
    dataset_file.write_bytes(b"not json\n" + payload)
    with pytest.raises(MalformedHeaderError):
        read_dataset(dataset_file)


def test_wrong_version(dataset_file):
    manifest, payload = _split(dataset_file)
    manifest["version"] = "DNT2"
    dataset_file.write_bytes(json.dumps(manifest).encode() + b"\n" + payload)
    with pytest.raises(MalformedHeaderError):
        read_dataset(dataset_file)


def test_counts_disagree_with_payload(dataset_file):
    manifest, payload = _split(dataset_file)
    manifest["batch_size"] = 4
    dataset_file.write_bytes(json.dumps(manifest).encode() + b"\n" + payload)
    with pytest.raises(MalformedHeaderError):
        read_dataset(dataset_file)


def test_trailing_bytes(dataset_file):
    dataset_file.write_bytes(dataset_file.read_bytes() + b"\x00")
    with pytest.raises(MalformedHeaderError):
        read_dataset(dataset_file)


def test_missing_newline(tmp_path):
    path = tmp_path / "broken.dnt"
    path.write_bytes(b'{"version": "DNT1"}')
    with pytest.raises(MalformedHeaderError):
        read_dataset(path)
