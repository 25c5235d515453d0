"""Synthetic EPI acquisitions with controlled odd/even line inconsistencies.

Errors are injected on the even lines only: a phase ``theta + poly(u)`` in
hybrid (x, ky) space, with ``u = 2x/N - 1``, followed by an integer circular
shift along kx, followed by complex Gaussian noise. The reference scan has its
phase-encode blips off, so every echo re-samples the central ky line; it gets
the same even-line errors and independent noise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import (
    AcquisitionMeta,
    Domain,
    KSpaceData,
    fft_x_to_kx,
    ifft_kx_to_x,
    image_to_kspace,
    reconstruct,
)


class PhantomShape(enum.Enum):
    DISK = "disk"
    TWO_DISKS = "two-disks"
    RECT = "rect"


@dataclass(frozen=True)
class PhantomSpec:
    shape: PhantomShape = PhantomShape.DISK
    n_cols: int = 64
    n_rows: int = 64
    radius: float = 12.0
    extents: tuple[int, int] = (20, 24)  # RECT (height, width)
    intensity: float = 1.0
    center: tuple[float, float] | None = None  # (row, col); default image center
    separation: float | None = None  # TWO_DISKS center distance along x; default 2.5 * radius

    def __post_init__(self):
        object.__setattr__(self, "shape", PhantomShape(self.shape))
        if self.n_rows % 2 or self.n_cols % 2 or self.n_rows < 2 or self.n_cols < 2:
            raise ValueError("phantom grid dimensions must be even and >= 2")
        if not self.intensity > 0:
            raise ValueError("phantom intensity must be positive")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        support = np.nonzero(_raster(self))
        if support[0].size == 0:
            raise ValueError("phantom has empty support")
        lo, hi = self.n_rows // 4, self.n_rows // 4 + self.n_rows // 2
        if support[0].min() < lo or support[0].max() >= hi:
            raise ValueError(
                f"phantom rows {support[0].min()}..{support[0].max()} leave the central band [{lo}, {hi})"
            )

    @property
    def center_rc(self) -> tuple[float, float]:
        return self.center if self.center is not None else (self.n_rows // 2, self.n_cols // 2)


def _disk(rr, cc, center, radius):
    return (rr - center[0]) ** 2 + (cc - center[1]) ** 2 <= radius**2


def _raster(spec: PhantomSpec) -> np.ndarray:
    rr, cc = np.mgrid[: spec.n_rows, : spec.n_cols]
    cy, cx = spec.center_rc
    if spec.shape is PhantomShape.DISK:
        mask = _disk(rr, cc, (cy, cx), spec.radius)
    elif spec.shape is PhantomShape.TWO_DISKS:
        half = (spec.separation if spec.separation is not None else 2.5 * spec.radius) / 2
        mask = _disk(rr, cc, (cy, cx - half), spec.radius) | _disk(rr, cc, (cy, cx + half), spec.radius)
    else:
        h, w = spec.extents
        r0, c0 = int(round(cy)) - h // 2, int(round(cx)) - w // 2
        mask = (rr >= r0) & (rr < r0 + h) & (cc >= c0) & (cc < c0 + w)
    return mask.astype(np.float64)


def make_phantom(spec: PhantomSpec = PhantomSpec()) -> np.ndarray:
    return spec.intensity * _raster(spec)


@dataclass(frozen=True)
class ErrorModel:
    const_phase_even: float = 0.0
    xphase_poly_even: tuple[float, ...] = ()
    peak_shift_even: int = 0
    noise_sigma: float = 0.0
    seed: int = 0
    averages: int = 1

    def __post_init__(self):
        object.__setattr__(self, "xphase_poly_even", tuple(float(c) for c in self.xphase_poly_even))
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")
        if int(self.peak_shift_even) != self.peak_shift_even:
            raise ValueError("peak_shift_even must be an integer")
        if self.averages < 1:
            raise ValueError("averages must be >= 1")

    def even_phase(self, n_cols: int) -> np.ndarray:
        """Phase error theta + poly(u) over the readout, u = 2x/N - 1."""
        u = 2.0 * np.arange(n_cols) / n_cols - 1.0
        poly = np.polynomial.polynomial.polyval(u, self.xphase_poly_even) if self.xphase_poly_even else 0.0
        return self.const_phase_even + poly * np.ones(n_cols)


@dataclass(frozen=True)
class SimOutput:
    k_formal: KSpaceData
    k_ref: KSpaceData
    ground_truth_image: np.ndarray
    ground_truth_kspace: KSpaceData
    error_model: ErrorModel = field(default_factory=ErrorModel)


def inject_phase_error(k: KSpaceData, phase_x) -> KSpaceData:
    """Multiply even lines by exp(i * phase_x) in hybrid space."""
    hybrid = ifft_kx_to_x(k)
    data = hybrid.data.copy()
    data[1::2] *= np.exp(1j * np.asarray(phase_x))
    return fft_x_to_kx(hybrid.replace(data=data))


def inject_shift_error(k: KSpaceData, shift: int) -> KSpaceData:
    """Circularly shift even lines by ``shift`` kx samples."""
    if shift == 0:
        return k
    data = k.data.copy()
    data[1::2] = np.roll(data[1::2], int(shift), axis=1)
    return k.replace(data=data)


def _noise(rng: np.random.Generator, shape, sigma: float, averages: int) -> np.ndarray:
    # per-sample complex std = sigma (each quadrature sigma / sqrt 2), then averaged
    acc = np.zeros(shape, dtype=np.complex128)
    for _ in range(averages):
        acc += rng.normal(0.0, sigma / np.sqrt(2), shape) + 1j * rng.normal(0.0, sigma / np.sqrt(2), shape)
    return acc / averages


def simulate_epi(img, err: ErrorModel = ErrorModel(), meta: AcquisitionMeta | None = None) -> SimOutput:
    img = np.asarray(img, dtype=np.float64)
    truth = image_to_kspace(img, meta=meta)
    m, n = truth.shape
    if abs(err.peak_shift_even) >= n / 4:
        raise ValueError(f"|peak shift| must be below N/4 = {n / 4}")

    phase_x = err.even_phase(n)

    def corrupt(k: KSpaceData) -> KSpaceData:
        if np.any(phase_x != 0):
            k = inject_phase_error(k, phase_x)
        return inject_shift_error(k, err.peak_shift_even)

    k_formal = corrupt(truth)
    ref = truth.replace(data=np.repeat(truth.data[m // 2 : m // 2 + 1], m, axis=0))
    k_ref = corrupt(ref)

    if err.noise_sigma > 0:
        rng = np.random.default_rng(err.seed)
        sigma = err.noise_sigma * np.abs(truth.data).max()
        k_formal = k_formal.replace(data=k_formal.data + _noise(rng, (m, n), sigma, err.averages))
        k_ref = k_ref.replace(data=k_ref.data + _noise(rng, (m, n), sigma, err.averages))

    return SimOutput(
        k_formal=k_formal,
        k_ref=k_ref,
        ground_truth_image=img.copy(),
        ground_truth_kspace=truth,
        error_model=err,
    )


def readout_order(k: KSpaceData) -> KSpaceData:
    """Re-introduce the alternating readout direction (even lines flipped along kx)."""
    if k.domain is not Domain.KXKY or not k.reversal_applied:
        raise ValueError("expected reversal-corrected KXKY data")
    data = k.data.copy()
    data[1::2] = data[1::2, ::-1]
    return k.replace(data=data, reversal_applied=False)


def ghost_energy_fraction(img, phantom: PhantomSpec) -> float:
    """Share of image energy inside the phantom support shifted by M/2 rows."""
    energy = np.abs(np.asarray(img)) ** 2
    ghost_mask = np.roll(_raster(phantom) > 0, phantom.n_rows // 2, axis=0)
    return float(energy[ghost_mask].sum() / energy.sum())


def reconstruct_magnitude(k: KSpaceData) -> np.ndarray:
    return np.abs(reconstruct(k))
