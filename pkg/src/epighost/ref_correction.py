"""Reference-scan phase correction (method "Ref").

The odd/even phase difference is measured on the two central lines of a
blip-off reference scan in hybrid (x, ky) space and added to the phase of every
even line of the imaging scan.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    Domain,
    KSpaceData,
    Parity,
    RowSet,
    fft_x_to_kx,
    ifft_kx_to_x,
    magnitude,
    merge_parity,
    parity_of,
    phase,
    split_parity,
)


class PhaseSign(enum.Enum):
    """``ODD_MINUS_EVEN``: dphi = phase(odd) - phase(even); ``NEGATED`` flips it."""

    ODD_MINUS_EVEN = "odd-minus-even"
    NEGATED = "negated"


@dataclass(frozen=True)
class RefCorrectionConfig:
    """Central row pair (1-indexed). ``None`` resolves to M/2 and M/2 + 1."""

    even_center_row: int | None = None
    odd_center_row: int | None = None
    sign: PhaseSign = PhaseSign.ODD_MINUS_EVEN

    def rows(self, n_rows: int) -> tuple[int, int]:
        even = n_rows // 2 if self.even_center_row is None else self.even_center_row
        odd = n_rows // 2 + 1 if self.odd_center_row is None else self.odd_center_row
        if not (1 <= even <= n_rows and 1 <= odd <= n_rows):
            raise ValueError(f"center rows ({even}, {odd}) outside [1, {n_rows}]")
        if abs(even - odd) != 1:
            raise ValueError(f"center rows ({even}, {odd}) are not adjacent")
        if parity_of(even) is not Parity.EVEN or parity_of(odd) is not Parity.ODD:
            raise ValueError(f"row {even} must be even and row {odd} odd (1-indexed)")
        return even, odd

    def to_dict(self) -> dict:
        return {
            "even_center_row": self.even_center_row,
            "odd_center_row": self.odd_center_row,
            "sign": self.sign.value,
        }


@dataclass(frozen=True)
class ReferencePhaseMap:
    dphi: np.ndarray
    source_rows: tuple[int, int]


def _check_reversed_kspace(k: KSpaceData) -> None:
    if k.domain is not Domain.KXKY:
        raise ValueError(f"expected KXKY data, got {k.domain.name}")
    if not k.reversal_applied:
        raise ValueError("alternate-row reversal must be applied first")


def estimate_parity_phase(
    k_ref: KSpaceData, cfg: RefCorrectionConfig = RefCorrectionConfig()
) -> ReferencePhaseMap:
    """Phase of the central odd line minus phase of the central even line, per x."""
    _check_reversed_kspace(k_ref)
    even, odd = cfg.rows(k_ref.n_rows)
    hybrid = ifft_kx_to_x(k_ref).data
    dphi = phase(hybrid[odd - 1]) - phase(hybrid[even - 1])
    if cfg.sign is PhaseSign.NEGATED:
        dphi = -dphi
    return ReferencePhaseMap(dphi=dphi, source_rows=(even, odd))


def apply_ref_correction(k_formal: KSpaceData, pm: ReferencePhaseMap) -> KSpaceData:
    _check_reversed_kspace(k_formal)
    if pm.dphi.shape != (k_formal.n_cols,):
        raise ValueError(
            f"phase map length {pm.dphi.shape} does not match {k_formal.n_cols} readout samples"
        )
    hybrid = ifft_kx_to_x(k_formal)
    odd, even = split_parity(hybrid)
    corrected = magnitude(even.rows) * np.exp(1j * (phase(even.rows) + pm.dphi))
    even = RowSet(even.indices, corrected)
    return fft_x_to_kx(merge_parity(odd, even, like=hybrid))


def ref_correct(
    k_formal: KSpaceData, k_ref: KSpaceData, cfg: RefCorrectionConfig = RefCorrectionConfig()
) -> KSpaceData:
    if k_ref.shape != k_formal.shape:
        raise ValueError(f"reference {k_ref.shape} and imaging {k_formal.shape} shapes differ")
    return apply_ref_correction(k_formal, estimate_parity_phase(k_ref, cfg))
