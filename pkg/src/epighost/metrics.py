"""Image-quality metrics: ghost-to-signal ratio, SNR, residual artifact level."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import UndefinedMetricError


class Corner(enum.Enum):
    TL = "tl"
    TR = "tr"
    BL = "bl"
    BR = "br"


@dataclass(frozen=True)
class ROISpec:
    """Signal ROI (central) and noise ROI (corner), in (row, col) pixels.

    Unset sizes scale with the image: signal M/4 x N/4, noise M/8 x N/8, which
    is 16x16 and 8x8 for a 64x64 image. The ghost ROI is the signal ROI moved
    by M/2 rows with wrap-around.
    """

    signal_center: tuple[int, int] | None = None
    signal_size: tuple[int, int] | None = None
    noise_corner: Corner = Corner.TL
    noise_size: tuple[int, int] | None = None

    def resolve(self, shape: tuple[int, int]) -> "ROISpec":
        m, n = shape
        if m % 2:
            raise ValueError("image height must be even for the half-FOV ghost shift")
        center = self.signal_center or (m // 2, n // 2)
        size = self.signal_size or (max(1, m // 4), max(1, n // 4))
        noise = self.noise_size or (max(1, m // 8), max(1, n // 8))
        roi = ROISpec(tuple(center), tuple(size), Corner(self.noise_corner), tuple(noise))
        r0, c0 = roi._signal_origin()
        h, w = size
        if r0 < 0 or c0 < 0 or r0 + h > m or c0 + w > n or h < 1 or w < 1:
            raise ValueError(f"signal ROI {size} at {center} does not fit a {m}x{n} image")
        if h > m // 2:
            raise ValueError("signal ROI taller than M/2 overlaps its own ghost")
        if not (1 <= noise[0] <= m and 1 <= noise[1] <= n):
            raise ValueError(f"noise ROI {noise} does not fit a {m}x{n} image")
        return roi

    def _signal_origin(self) -> tuple[int, int]:
        (cr, cc), (h, w) = self.signal_center, self.signal_size
        return cr - h // 2, cc - w // 2

    def signal_slices(self) -> tuple[slice, slice]:
        r0, c0 = self._signal_origin()
        h, w = self.signal_size
        return slice(r0, r0 + h), slice(c0, c0 + w)

    def ghost_rows(self, n_rows: int) -> np.ndarray:
        rows = self.signal_slices()[0]
        return (np.arange(rows.start, rows.stop) + n_rows // 2) % n_rows

    def noise_slices(self, shape: tuple[int, int]) -> tuple[slice, slice]:
        m, n = shape
        h, w = self.noise_size
        top = self.noise_corner in (Corner.TL, Corner.TR)
        left = self.noise_corner in (Corner.TL, Corner.BL)
        rows = slice(0, h) if top else slice(m - h, m)
        cols = slice(0, w) if left else slice(n - w, n)
        return rows, cols

    def to_dict(self) -> dict:
        return {
            "signal_center": None if self.signal_center is None else list(self.signal_center),
            "signal_size": None if self.signal_size is None else list(self.signal_size),
            "noise_corner": Corner(self.noise_corner).value,
            "noise_size": None if self.noise_size is None else list(self.noise_size),
        }


@dataclass(frozen=True)
class QualityReport:
    gsr: float
    snr: float
    roi: ROISpec
    residual_percent: float | None = None

    @property
    def snr_defined(self) -> bool:
        return math.isfinite(self.snr)

    def to_dict(self) -> dict:
        return {"gsr": self.gsr, "snr": self.snr if self.snr_defined else None}


def _mean(a: np.ndarray) -> float:
    # correctly rounded, so equal-valued ROIs of different sizes give equal means
    return math.fsum(a.ravel()) / a.size


def _magnitude(img) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {img.shape}")
    return np.abs(img).astype(np.float64)


def ghost_to_signal_ratio(img, roi: ROISpec = ROISpec()) -> float:
    mag = _magnitude(img)
    roi = roi.resolve(mag.shape)
    rows, cols = roi.signal_slices()
    signal = _mean(mag[rows, cols])
    if signal == 0:
        raise UndefinedMetricError("signal ROI mean is zero; GSR undefined")
    ghost = _mean(mag[roi.ghost_rows(mag.shape[0])][:, cols])
    return float(ghost / signal)


def signal_to_noise_ratio(img, roi: ROISpec = ROISpec()) -> float:
    """Mean over the signal ROI / mean over the corner noise ROI.

    A noise-free image gives ``inf`` (see ``QualityReport.snr_defined``).
    """
    mag = _magnitude(img)
    roi = roi.resolve(mag.shape)
    signal = _mean(mag[roi.signal_slices()])
    noise = _mean(mag[roi.noise_slices(mag.shape)])
    if noise == 0:
        return math.inf
    return float(signal / noise)


def quality_report(img, roi: ROISpec = ROISpec()) -> QualityReport:
    return QualityReport(
        gsr=ghost_to_signal_ratio(img, roi),
        snr=signal_to_noise_ratio(img, roi),
        roi=roi,
    )


def residual_artifact_percent(corrected: QualityReport | float, original: QualityReport | float) -> float:
    """Corrected GSR as a percentage of the uncorrected GSR."""
    if isinstance(corrected, QualityReport) and isinstance(original, QualityReport):
        if corrected.roi != original.roi:
            raise ValueError("reports were computed with different ROIs")
    c = corrected.gsr if isinstance(corrected, QualityReport) else float(corrected)
    o = original.gsr if isinstance(original, QualityReport) else float(original)
    if o == 0:
        raise UndefinedMetricError("original GSR is zero; residual percentage undefined")
    return 100.0 * c / o


def magnitude_profiles(m, axis: str = "row") -> np.ndarray:
    """One magnitude vector per row (``axis="row"``) or per column (``"col"``)."""
    mag = np.abs(np.asarray(m))
    if axis == "row":
        return mag
    if axis == "col":
        return mag.T.copy()
    raise ValueError(f"axis must be 'row' or 'col', got {axis!r}")


def total_variation(profiles) -> np.ndarray:
    """Per-line sum of absolute first differences."""
    profiles = np.atleast_2d(profiles)
    return np.abs(np.diff(profiles, axis=-1)).sum(axis=-1)
