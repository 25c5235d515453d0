"""Reference-free peak alignment (method "PA").

The kx positions of the magnitude maxima of the two central lines are compared
and every even line is circularly shifted so that the central even peak lands
on the central odd peak. Works directly on (kx, ky) data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Domain, KSpaceData
from .errors import EstimationError
from .ref_correction import RefCorrectionConfig


@dataclass(frozen=True)
class PeakShiftEstimate:
    p_even: int
    p_odd: int

    @property
    def delta_p(self) -> int:
        return self.p_odd - self.p_even


def row_peak_index(row) -> int:
    """0-indexed argmax of |row|; ties go to the lowest index."""
    mag = np.abs(np.asarray(row))
    if mag.size == 0:
        raise ValueError("empty row")
    if not np.any(mag > 0):
        raise EstimationError("row is identically zero; peak position undefined")
    return int(np.argmax(mag))


def estimate_peak_shift(
    k: KSpaceData, cfg: RefCorrectionConfig = RefCorrectionConfig()
) -> PeakShiftEstimate:
    if k.domain is not Domain.KXKY:
        raise ValueError(f"expected KXKY data, got {k.domain.name}")
    if not k.reversal_applied:
        raise ValueError("alternate-row reversal must be applied first")
    even, odd = cfg.rows(k.n_rows)
    return PeakShiftEstimate(
        p_even=row_peak_index(k.data[even - 1]), p_odd=row_peak_index(k.data[odd - 1])
    )


def apply_peak_alignment(k: KSpaceData, est: PeakShiftEstimate) -> KSpaceData:
    """Shift every even row by ``delta_p`` so that ``out[n] = in[(n - delta_p) mod N]``."""
    if k.domain is not Domain.KXKY:
        raise ValueError(f"expected KXKY data, got {k.domain.name}")
    if est.delta_p == 0:
        return k
    data = k.data.copy()
    data[1::2] = np.roll(data[1::2], est.delta_p, axis=1)
    return k.replace(data=data)


def pa_correct(k: KSpaceData, cfg: RefCorrectionConfig = RefCorrectionConfig()) -> KSpaceData:
    return apply_peak_alignment(k, estimate_peak_shift(k, cfg))
