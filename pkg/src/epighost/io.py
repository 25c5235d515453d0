"""EPIK k-space files, PGM/raw image export, JSON reports and profile CSVs.

EPIK layout (all little-endian)::

    0   4s   magic  b"EPIK"
    4   u8   version (1)
    5   u8   domain tag (0 KXKY, 1 XKY, 2 XY)
    6   u8   reversal flag
    7   u8   reserved (0)
    8   u32  n_cols
    12  u32  n_rows
    16  f32  payload: n_rows * n_cols (real, imag) pairs, row-major

Acquisition metadata, when present, lives in a JSON sidecar at ``path + ".json"``.
Every writer goes through a temporary file and an atomic rename.
"""

from __future__ import annotations

import contextlib
import json
import math
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .core import AcquisitionMeta, Domain, KSpaceData
from .errors import (
    BadMagicError,
    DimensionError,
    FormatError,
    NumericError,
    TruncatedError,
    VersionError,
)

MAGIC = b"EPIK"
VERSION = 1
HEADER = struct.Struct("<4sBBBBII")
MAX_SAMPLES = 1 << 28


@contextlib.contextmanager
def atomic_open(path, mode="wb"):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def encode_epik(k: KSpaceData) -> bytes:
    m, n = k.shape
    header = HEADER.pack(MAGIC, VERSION, int(k.domain), int(bool(k.reversal_applied)), 0, n, m)
    payload = np.empty((m, n, 2), dtype="<f4")
    payload[..., 0] = k.data.real
    payload[..., 1] = k.data.imag
    if not np.all(np.isfinite(payload)):
        raise NumericError("samples overflow 32-bit float range")
    return header + payload.tobytes()


def decode_epik(buf: bytes, meta: AcquisitionMeta | None = None) -> KSpaceData:
    if len(buf) < HEADER.size:
        if not MAGIC.startswith(bytes(buf[:4])):
            raise BadMagicError(f"bad magic {bytes(buf[:4])!r}")
        raise TruncatedError(f"header needs {HEADER.size} bytes, got {len(buf)}")
    magic, version, domain, reversal, _reserved, n, m = HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}")
    if version != VERSION:
        raise VersionError(f"unsupported EPIK version {version}")
    if domain not in (0, 1, 2):
        raise FormatError(f"unknown domain tag {domain}")
    if reversal not in (0, 1):
        raise FormatError(f"invalid reversal flag {reversal}")
    if n * m > MAX_SAMPLES:
        raise DimensionError(f"{n}x{m} samples exceeds the {MAX_SAMPLES} sample limit")
    expected = 8 * n * m
    payload = buf[HEADER.size :]
    if len(payload) < expected:
        raise TruncatedError(f"payload has {len(payload)} bytes, expected {expected}")
    if len(payload) > expected:
        raise FormatError(f"{len(payload) - expected} trailing bytes after payload")
    if n < 2 or m < 2 or n % 2 or m % 2:
        raise DimensionError(f"dimensions {n}x{m} must be even and >= 2")
    raw = np.frombuffer(payload, dtype="<f4").reshape(m, n, 2).astype(np.float64)
    return KSpaceData(raw[..., 0] + 1j * raw[..., 1], Domain(domain), bool(reversal), meta)


def sidecar_path(path) -> Path:
    return Path(str(path) + ".json")


def write_epik(k: KSpaceData, path) -> None:
    with atomic_open(path) as fh:
        fh.write(encode_epik(k))
    if k.meta is not None:
        with atomic_open(sidecar_path(path), "w") as fh:
            fh.write(dumps_json(k.meta.to_dict()))


def read_epik(path) -> KSpaceData:
    meta = None
    side = sidecar_path(path)
    if side.exists():
        try:
            meta = AcquisitionMeta.from_dict(json.loads(side.read_text()))
        except (ValueError, TypeError) as exc:
            raise FormatError(f"bad metadata sidecar {side}: {exc}") from exc
    return decode_epik(Path(path).read_bytes(), meta)


def to_pgm_bytes(img) -> bytes:
    """8-bit binary PGM, linearly scaled so the maximum maps to 255 (round half up)."""
    mag = np.abs(np.asarray(img, dtype=np.float64))
    if mag.ndim != 2:
        raise ValueError("expected a 2-D image")
    peak = mag.max()
    if peak > 0:
        pixels = np.floor(mag / peak * 255.0 + 0.5).clip(0, 255).astype(np.uint8)
    else:
        pixels = np.zeros(mag.shape, dtype=np.uint8)
    h, w = mag.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + pixels.tobytes()


def read_pgm(path) -> np.ndarray:
    buf = Path(path).read_bytes()
    tokens, pos = [], 0
    while len(tokens) < 4:
        while pos < len(buf) and buf[pos : pos + 1].isspace():
            pos += 1
        if buf[pos : pos + 1] == b"#":
            pos = buf.index(b"\n", pos)
            continue
        start = pos
        while pos < len(buf) and not buf[pos : pos + 1].isspace():
            pos += 1
        tokens.append(buf[start:pos])
    if tokens[0] != b"P5":
        raise FormatError(f"{path} is not a binary PGM")
    w, h, maxval = (int(t) for t in tokens[1:])
    if maxval > 255:
        raise FormatError("only 8-bit PGM is supported")
    data = buf[pos + 1 : pos + 1 + w * h]
    if len(data) != w * h:
        raise TruncatedError(f"{path}: truncated PGM payload")
    return np.frombuffer(data, dtype=np.uint8).reshape(h, w).astype(np.float64)


def export_image(img, path, fmt: str = "pgm") -> None:
    """Write a magnitude image as ``pgm`` (8-bit P5) or ``raw`` (little-endian float64)."""
    if fmt == "pgm":
        data = to_pgm_bytes(img)
    elif fmt == "raw":
        data = np.abs(np.asarray(img, dtype=np.complex128)).astype("<f8").tobytes()
    else:
        raise ValueError(f"unknown image format {fmt!r}")
    with atomic_open(path) as fh:
        fh.write(data)


def read_raw_image(path) -> np.ndarray:
    """Raw float64 dumps carry no header, so only square images are accepted."""
    flat = np.fromfile(path, dtype="<f8")
    side = math.isqrt(flat.size)
    if side * side != flat.size or flat.size == 0:
        raise FormatError(f"{path}: raw image with {flat.size} samples is not square")
    return flat.reshape(side, side)


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 significant digits,
    non-finite floats as null."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{pad}{json.dumps(str(k))}: {dumps_json(v, indent, _level + 1)}" for k, v in obj.items())
        return "{\n" + ",\n".join(items) + f"\n{end}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + ", ".join(dumps_json(v, indent, _level + 1) for v in obj) + "]"
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_json(obj, path) -> None:
    with atomic_open(path, "w") as fh:
        fh.write(dumps_json(obj) + "\n")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except ValueError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def write_profiles_csv(profiles, path) -> None:
    lines = (",".join(_num(v) for v in row) for row in np.asarray(profiles))
    with atomic_open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
