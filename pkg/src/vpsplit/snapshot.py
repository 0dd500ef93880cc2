"""Bit-exact binary snapshots of distribution fields.

Layout (little-endian throughout):

    bytes  0..7    magic  b"VLSVSNAP"
    bytes  8..11   uint32 version (currently 1)
    bytes 12..19   uint64 nx
    bytes 20..27   uint64 nv
    bytes 28..35   float64 L
    bytes 36..43   float64 vmax
    bytes 44..51   float64 time
    bytes 52..     nx*nv float64 payload, row-major with x as the slow index

Round trips are bitwise so cached reference solutions are reproducible.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, DimensionError, SnapshotFormatError
from .grid import DistributionField, GridSpec

__all__ = ["MAGIC", "VERSION", "save_snapshot", "load_snapshot", "snapshot_info"]

MAGIC = b"VLSVSNAP"
VERSION = 1
_HEADER = struct.Struct("<8sIQQddd")


def save_snapshot(path: str | Path, f: DistributionField, time: float = 0.0) -> None:
    """Write the field and its grid header; overwrites an existing file."""
    spec = f.spec
    header = _HEADER.pack(MAGIC, VERSION, spec.nx, spec.nv, spec.L, spec.vmax, float(time))
    payload = np.ascontiguousarray(f.values, dtype="<f8").tobytes()
    Path(path).write_bytes(header + payload)


def _read_header(raw: bytes, path) -> tuple[GridSpec, float]:
    if len(raw) < _HEADER.size:
        raise SnapshotFormatError(f"{path}: file shorter than the {_HEADER.size}-byte header")
    magic, version, nx, nv, length, vmax, time = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SnapshotFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise SnapshotFormatError(f"{path}: unsupported version {version}")
    try:
        spec = GridSpec(L=length, vmax=vmax, nx=nx, nv=nv)
    except ConfigurationError as exc:
        raise SnapshotFormatError(f"{path}: invalid grid header: {exc}") from exc
    return spec, time


def load_snapshot(path: str | Path,
                  expected: GridSpec | None = None) -> tuple[DistributionField, float]:
    """Read a snapshot; returns the field and the stored time.

    With `expected` given, a grid mismatch raises DimensionError rather
    than silently returning a field on a different grid.
    """
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SnapshotFormatError(f"cannot read snapshot {path}: {exc}") from exc
    spec, time = _read_header(raw, path)
    expected_len = _HEADER.size + 8 * spec.nx * spec.nv
    if len(raw) != expected_len:
        raise SnapshotFormatError(
            f"{path}: payload is {len(raw) - _HEADER.size} bytes, "
            f"expected {expected_len - _HEADER.size}"
        )
    if expected is not None and spec != expected:
        raise DimensionError(f"{path}: snapshot grid {spec} does not match expected {expected}")
    values = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(spec.nx, spec.nv)
    return DistributionField(spec, values), time


def snapshot_info(path: str | Path) -> dict:
    """Header fields of a snapshot, validating magic, version, and length."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SnapshotFormatError(f"cannot read snapshot {path}: {exc}") from exc
    spec, time = _read_header(raw, path)
    expected_len = _HEADER.size + 8 * spec.nx * spec.nv
    if len(raw) != expected_len:
        raise SnapshotFormatError(
            f"{path}: payload is {len(raw) - _HEADER.size} bytes, "
            f"expected {expected_len - _HEADER.size}"
        )
    return {
        "version": VERSION,
        "nx": spec.nx,
        "nv": spec.nv,
        "L": spec.L,
        "vmax": spec.vmax,
        "time": time,
    }
