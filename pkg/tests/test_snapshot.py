import numpy as np
import pytest

from vpsplit import (
    DimensionError,
    DistributionField,
    GridSpec,
    SnapshotFormatError,
    load_snapshot,
    save_snapshot,
    snapshot_info,
)


@pytest.fixture
def sample_field():
    spec = GridSpec(L=2.0 * np.pi, vmax=4.0, nx=8, nv=6)
    values = np.random.default_rng(17).normal(size=(8, 6))
    return DistributionField(spec, values)


def test_round_trip_is_bitwise(tmp_path, sample_field):
    path = tmp_path / "state.snap"
    save_snapshot(path, sample_field, time=0.75)
    loaded, time = load_snapshot(path)
    assert time == 0.75
    assert loaded.spec == sample_field.spec
    assert np.array_equal(loaded.values, sample_field.values)
    # byte-identical on re-save
    first = path.read_bytes()
    save_snapshot(path, loaded, time=time)
    assert path.read_bytes() == first


def test_header_fields(tmp_path, sample_field):
    path = tmp_path / "state.snap"
    save_snapshot(path, sample_field, time=1.25)
    info = snapshot_info(path)
    assert info == {
        "version": 1,
        "nx": 8,
        "nv": 6,
        "L": sample_field.spec.L,
        "vmax": 4.0,
        "time": 1.25,
    }


def test_corrupted_magic_rejected(tmp_path, sample_field):
    path = tmp_path / "state.snap"
    save_snapshot(path, sample_field)
    raw = bytearray(path.read_bytes())
    raw[0] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(SnapshotFormatError):
        load_snapshot(path)


def test_unsupported_version_rejected(tmp_path, sample_field):
    path = tmp_path / "state.snap"
    save_snapshot(path, sample_field)
    raw = bytearray(path.read_bytes())
    raw[8] = 99
    path.write_bytes(bytes(raw))
    with pytest.raises(SnapshotFormatError):
        snapshot_info(path)


def test_truncated_payload_rejected(tmp_path, sample_field):
    path = tmp_path / "state.snap"
    save_snapshot(path, sample_field)
    raw = path.read_bytes()
    path.write_bytes(raw[:-8])
    with pytest.raises(SnapshotFormatError):
        load_snapshot(path)
    path.write_bytes(raw + b"\x00" * 8)
    with pytest.raises(SnapshotFormatError):
        load_snapshot(path)
    path.write_bytes(raw[:20])
    with pytest.raises(SnapshotFormatError):
        load_snapshot(path)


def test_grid_mismatch_rejected(tmp_path, sample_field):
    path = tmp_path / "state.snap"
    save_snapshot(path, sample_field)
    other = GridSpec(L=sample_field.spec.L, vmax=4.0, nx=8, nv=7)
    with pytest.raises(DimensionError):
        load_snapshot(path, expected=other)


def test_missing_file(tmp_path):
    with pytest.raises(SnapshotFormatError):
        load_snapshot(tmp_path / "absent.snap")
