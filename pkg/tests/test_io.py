import json
import struct

import numpy as np
import pytest

from epighost import io
from epighost.core import META_0P068T, Domain, KSpaceData
from epighost.errors import BadMagicError, DimensionError, FormatError, NumericError, TruncatedError, VersionError


@pytest.fixture
def kspace():
    rng = np.random.default_rng(7)
    return KSpaceData(rng.standard_normal((64, 64)) + 1j * rng.standard_normal((64, 64)), Domain.XKY, True)


def test_round_trip_is_float32_exact(tmp_path, kspace):
    path = tmp_path / "k.epik"
    io.write_epik(kspace, path)
    back = io.read_epik(path)
    assert back.domain is Domain.XKY and back.reversal_applied and back.meta is None
    assert np.array_equal(back.data.real, kspace.data.real.astype(np.float32))
    assert np.array_equal(back.data.imag, kspace.data.imag.astype(np.float32))
    io.write_epik(back, tmp_path / "again.epik")
    assert (tmp_path / "again.epik").read_bytes() == path.read_bytes()


def test_header_layout(kspace):
    buf = io.encode_epik(kspace)
    assert len(buf) == 16 + 8 * 64 * 64
    assert buf[:4] == b"EPIK"
    assert struct.unpack("<BBBBII", buf[4:16]) == (1, 1, 1, 0, 64, 64)
    first = struct.unpack("<ff", buf[16:24])
    assert first == (np.float32(kspace.data[0, 0].real), np.float32(kspace.data[0, 0].imag))


def test_non_square_dimensions_order():
    k = KSpaceData(np.arange(8 * 4).reshape(4, 8))
    buf = io.encode_epik(k)
    n_cols, n_rows = struct.unpack("<II", buf[8:16])
    assert (n_cols, n_rows) == (8, 4)
    assert np.array_equal(io.decode_epik(buf).data, k.data)


def test_sidecar_metadata(tmp_path):
    k = KSpaceData(np.ones((4, 4)), meta=META_0P068T)
    path = tmp_path / "m.epik"
    io.write_epik(k, path)
    assert json.loads((tmp_path / "m.epik.json").read_text())["averages"] == 4
    assert io.read_epik(path).meta == META_0P068T


@pytest.mark.parametrize(
    "mutate,exc",
    [
        (lambda b: b[:-1], TruncatedError),
        (lambda b: b[:10], TruncatedError),
        (lambda b: b"EPIX" + b[4:], BadMagicError),
        (lambda b: b"XY", BadMagicError),
        (lambda b: b[:4] + b"\x02" + b[5:], VersionError),
        (lambda b: b[:8] + struct.pack("<II", 1 << 16, 1 << 16) + b[16:], DimensionError),
        (lambda b: b[:8] + struct.pack("<II", 3, 2) + b[16 : 16 + 48], DimensionError),
        (lambda b: b[:5] + b"\x07" + b[6:], FormatError),
        (lambda b: b + b"\x00", FormatError),
    ],
)
def test_rejects_malformed(kspace, mutate, exc):
    with pytest.raises(exc):
        io.decode_epik(mutate(io.encode_epik(kspace)))


def test_error_codes_are_distinct():
    codes = {c.code for c in (BadMagicError, VersionError, TruncatedError, DimensionError)}
    assert len(codes) == 4
    assert all(issubclass(c, FormatError) and c.exit_code == 2 for c in (BadMagicError, TruncatedError))


def test_nan_payload_is_numeric_error(kspace):
    buf = bytearray(io.encode_epik(kspace))
    buf[16:20] = struct.pack("<f", float("nan"))
    with pytest.raises(NumericError):
        io.decode_epik(bytes(buf))


def test_float32_overflow_rejected():
    with pytest.raises(NumericError), np.errstate(over="ignore"):
        io.encode_epik(KSpaceData(np.full((2, 2), 1e300)))


def test_failed_write_leaves_nothing(tmp_path):
    path = tmp_path / "x.bin"
    with pytest.raises(RuntimeError):
        with io.atomic_open(path) as fh:
            fh.write(b"partial")
            raise RuntimeError("boom")
    assert list(tmp_path.iterdir()) == []


def test_pgm_export(tmp_path):
    assert io.to_pgm_bytes(np.zeros((2, 3))) == b"P5\n3 2\n255\n" + bytes(6)
    img = np.zeros((4, 4))
    img[1, 2] = 7.5
    img[0, 0] = 7.5 * 0.5 / 255  # exactly half a level: rounds up
    pixels = io.to_pgm_bytes(img)[len(b"P5\n4 4\n255\n") :]
    assert pixels[1 * 4 + 2] == 255 and pixels[0] == 1 and sum(pixels) == 256
    io.export_image(img, tmp_path / "a.pgm")
    io.export_image(img, tmp_path / "b.pgm")
    assert (tmp_path / "a.pgm").read_bytes() == (tmp_path / "b.pgm").read_bytes()
    np.testing.assert_array_equal(io.read_pgm(tmp_path / "a.pgm"), np.frombuffer(pixels, np.uint8).reshape(4, 4))


def test_raw_export(tmp_path):
    img = np.random.default_rng(0).random((8, 8))
    io.export_image(img, tmp_path / "r.f64", "raw")
    assert np.array_equal(io.read_raw_image(tmp_path / "r.f64"), img)
    (tmp_path / "bad.f64").write_bytes(bytes(8 * 3))
    with pytest.raises(FormatError):
        io.read_raw_image(tmp_path / "bad.f64")


def test_json_is_deterministic_with_17_digits():
    obj = {"b": 0.1, "a": [1, 2.5, None], "c": {"x": float("inf"), "y": True}, "d": "s"}
    text = io.dumps_json(obj)
    assert text.index('"b"') < text.index('"a"')
    assert "0.10000000000000001" in text
    back = json.loads(text)
    assert back == {"b": 0.1, "a": [1, 2.5, None], "c": {"x": None, "y": True}, "d": "s"}
    assert io.dumps_json(obj) == text


def test_profiles_csv(tmp_path):
    io.write_profiles_csv(np.array([[1.0, 2.0], [3.0, 0.25]]), tmp_path / "p.csv")
    assert (tmp_path / "p.csv").read_text() == "1,2\n3,0.25\n"
