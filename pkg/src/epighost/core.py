"""Complex k-space containers and centered Fourier transforms.

Arrays are stored as ``(n_rows, n_cols)`` = ``(M, N)``: one row per ky line,
one column per kx (or x) sample. Every 1-D transform is centered, i.e. DC sits
at index ``N // 2`` before and after, and inverse transforms carry the ``1/N``
factor.

Row parity is 1-indexed: row 1 is odd, row 2 is even. In 0-indexed numpy terms
``data[0::2]`` are the odd rows and ``data[1::2]`` the even rows.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError


class Domain(enum.IntEnum):
    KXKY = 0
    XKY = 1
    XY = 2


class Parity(enum.Enum):
    ODD = "odd"
    EVEN = "even"

    @property
    def offset(self) -> int:
        """0-indexed first row of this parity."""
        return 0 if self is Parity.ODD else 1


def parity_of(row: int) -> Parity:
    """Parity of a 1-indexed row number."""
    return Parity.ODD if row % 2 == 1 else Parity.EVEN


@dataclass(frozen=True)
class AcquisitionMeta:
    field_strength: float | None = None
    fov_mm: tuple[float, float] = (250.0, 250.0)
    slice_thickness_mm: float = 5.0
    te_ms: float = 86.0
    tr_ms: float = 3000.0
    averages: int = 1
    b_value_s_per_mm2: float | None = None

    def __post_init__(self):
        positive = [self.slice_thickness_mm, self.te_ms, self.tr_ms, self.averages, *self.fov_mm]
        if self.field_strength is not None:
            positive.append(self.field_strength)
        if any(not v > 0 for v in positive):
            raise ValueError(f"acquisition parameters must be strictly positive: {self}")
        # b = 0 is a legitimate diffusion setting
        if self.b_value_s_per_mm2 is not None and self.b_value_s_per_mm2 < 0:
            raise ValueError("b-value must be non-negative")
        object.__setattr__(self, "fov_mm", tuple(float(v) for v in self.fov_mm))

    def to_dict(self) -> dict:
        return {
            "field_strength": self.field_strength,
            "fov_mm": list(self.fov_mm),
            "slice_thickness_mm": self.slice_thickness_mm,
            "te_ms": self.te_ms,
            "tr_ms": self.tr_ms,
            "averages": self.averages,
            "b_value_s_per_mm2": self.b_value_s_per_mm2,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AcquisitionMeta":
        d = dict(d)
        if "fov_mm" in d:
            d["fov_mm"] = tuple(d["fov_mm"])
        return cls(**d)


# Acquisition protocols of the two low-field prototypes (64x64 matrix).
META_0P5T = AcquisitionMeta(0.5, (250.0, 250.0), 5.0, 86.0, 3000.0, 1)
META_0P068T = AcquisitionMeta(0.068, (350.0, 350.0), 20.0, 171.0, 6000.0, 4)


def check_matrix(a) -> np.ndarray:
    """Coerce to a complex128 2-D array and enforce the grid invariants."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    m, n = a.shape
    if m < 2 or n < 2 or m % 2 or n % 2:
        raise ValueError(f"matrix dimensions must be even and >= 2, got {m}x{n}")
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix contains NaN or Inf samples")
    return a


@dataclass(frozen=True)
class KSpaceData:
    data: np.ndarray
    domain: Domain = Domain.KXKY
    reversal_applied: bool = False
    meta: AcquisitionMeta | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "data", check_matrix(self.data))
        object.__setattr__(self, "domain", Domain(self.domain))

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    @property
    def n_cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def replace(self, **changes) -> "KSpaceData":
        return dataclasses.replace(self, **changes)


def _require(k: KSpaceData, domain: Domain) -> None:
    if k.domain is not domain:
        raise ValueError(f"expected {domain.name} data, got {k.domain.name}")


def centered_ifft(a: np.ndarray, axis: int) -> np.ndarray:
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(a, axes=axis), axis=axis), axes=axis)


def centered_fft(a: np.ndarray, axis: int) -> np.ndarray:
    return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(a, axes=axis), axis=axis), axes=axis)


def ifft_kx_to_x(k: KSpaceData) -> KSpaceData:
    _require(k, Domain.KXKY)
    return k.replace(data=centered_ifft(k.data, axis=1), domain=Domain.XKY)


def fft_x_to_kx(k: KSpaceData) -> KSpaceData:
    _require(k, Domain.XKY)
    return k.replace(data=centered_fft(k.data, axis=1), domain=Domain.KXKY)


def ifft_ky_to_y(k: KSpaceData) -> KSpaceData:
    _require(k, Domain.XKY)
    return k.replace(data=centered_ifft(k.data, axis=0), domain=Domain.XY)


def fft_y_to_ky(k: KSpaceData) -> KSpaceData:
    _require(k, Domain.XY)
    return k.replace(data=centered_fft(k.data, axis=0), domain=Domain.XKY)


def image_to_kspace(img, meta: AcquisitionMeta | None = None) -> KSpaceData:
    """Centered 2-D forward transform of an image; returns KXKY data."""
    k = KSpaceData(img, Domain.XY, reversal_applied=True, meta=meta)
    return fft_x_to_kx(fft_y_to_ky(k))


def reconstruct(k: KSpaceData) -> np.ndarray:
    """Complex image from k-space (kx first, then ky)."""
    if k.domain is Domain.KXKY:
        k = ifft_kx_to_x(k)
    if k.domain is Domain.XKY:
        k = ifft_ky_to_y(k)
    return k.data


def reverse_alternate_rows(k: KSpaceData, which: Parity = Parity.EVEN) -> KSpaceData:
    """Undo the alternating readout direction by flipping rows of one parity along kx."""
    _require(k, Domain.KXKY)
    if k.reversal_applied:
        raise ValueError("alternate-row reversal has already been applied")
    data = k.data.copy()
    data[which.offset :: 2] = data[which.offset :: 2, ::-1]
    return k.replace(data=data, reversal_applied=True)


@dataclass(frozen=True)
class RowSet:
    """Rows of one parity and their 0-indexed positions in the parent matrix."""

    indices: np.ndarray
    rows: np.ndarray


def split_parity(k: KSpaceData) -> tuple[RowSet, RowSet]:
    """Return ``(odd, even)`` row sets using 1-indexed parity."""
    idx = np.arange(k.n_rows)
    odd = RowSet(idx[0::2], k.data[0::2].copy())
    even = RowSet(idx[1::2], k.data[1::2].copy())
    return odd, even


def merge_parity(odd: RowSet, even: RowSet, like: KSpaceData) -> KSpaceData:
    """Reassemble rows at their original positions; ``like`` supplies domain and metadata."""
    idx = np.concatenate([odd.indices, even.indices])
    if len(idx) != like.n_rows or not np.array_equal(np.sort(idx), np.arange(like.n_rows)):
        raise ValueError("row index sets must be disjoint and cover every row exactly once")
    data = np.empty(like.shape, dtype=np.complex128)
    data[odd.indices] = odd.rows
    data[even.indices] = even.rows
    return like.replace(data=data)


def phase(m) -> np.ndarray:
    """Four-quadrant phase in (-pi, pi]; phase(0) = 0."""
    m = np.asarray(m, dtype=np.complex128)
    p = np.arctan2(m.imag, m.real)
    # atan2(-0.0, x<0) gives -pi; fold onto the closed end of the range.
    # Signed zeros would otherwise give phase(-0-0j) = -pi.
    p = np.where(p == -np.pi, np.pi, p)
    return np.where(m == 0, 0.0, p)


def magnitude(m) -> np.ndarray:
    return np.abs(np.asarray(m, dtype=np.complex128))
