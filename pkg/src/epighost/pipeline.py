"""Correction pipelines: preliminary correction (Ref or PA) then optional IR.

Pipeline I is ``Method.REF`` with IR, pipeline II is ``Method.PA`` with IR.
The order is fixed; IR never runs before the preliminary step.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import Domain, KSpaceData, Parity, reconstruct, reverse_alternate_rows
from .errors import ConfigError, NumericError
from .ir_correction import IRConfig, apply_ir
from .metrics import QualityReport, ROISpec, quality_report, residual_artifact_percent
from .pa_correction import pa_correct
from .ref_correction import RefCorrectionConfig, ref_correct


class Method(enum.Enum):
    NONE = "none"
    REF = "ref"
    PA = "pa"


@dataclass(frozen=True)
class PipelineConfig:
    method: Method = Method.PA
    ir_enabled: bool = True
    ir: IRConfig = field(default_factory=IRConfig)
    ref_cfg: RefCorrectionConfig = field(default_factory=RefCorrectionConfig)
    roi: ROISpec = field(default_factory=ROISpec)

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))

    @property
    def label(self) -> str:
        base = {Method.NONE: "Original", Method.REF: "Ref", Method.PA: "PA"}[self.method]
        if not self.ir_enabled:
            return base
        return "IR" if self.method is Method.NONE else f"{base} + IR"

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "ir_enabled": self.ir_enabled,
            "ir": self.ir.to_dict(),
            "ref_cfg": self.ref_cfg.to_dict(),
        }


@dataclass(frozen=True)
class PipelineReport:
    original: QualityReport
    corrected: QualityReport
    config: PipelineConfig

    @property
    def residual_percent(self) -> float | None:
        if self.original.gsr == 0:
            return None
        return residual_artifact_percent(self.corrected, self.original)

    def to_dict(self) -> dict:
        return {
            "original": self.original.to_dict(),
            "corrected": self.corrected.to_dict(),
            "residual_percent": self.residual_percent,
            "roi": self.config.roi.to_dict(),
            "config": self.config.to_dict(),
        }


@dataclass(frozen=True)
class PipelineResult:
    kspace: KSpaceData
    image: np.ndarray
    report: PipelineReport


def ensure_reversed(k: KSpaceData) -> KSpaceData:
    if k.domain is not Domain.KXKY:
        raise ConfigError(f"pipeline input must be KXKY data, got {k.domain.name}")
    return k if k.reversal_applied else reverse_alternate_rows(k, Parity.EVEN)


def correct(k: KSpaceData, cfg: PipelineConfig, k_ref: KSpaceData | None = None) -> KSpaceData:
    """Corrected k-space only; ``k`` and ``k_ref`` are reversed first if needed."""
    k = ensure_reversed(k)
    if cfg.method is Method.REF:
        if k_ref is None:
            raise ConfigError("reference-scan correction needs a reference scan")
        k_ref = ensure_reversed(k_ref)
        if k_ref.shape != k.shape:
            raise ConfigError(f"reference {k_ref.shape} and imaging {k.shape} shapes differ")
        k = ref_correct(k, k_ref, cfg.ref_cfg)
    elif cfg.method is Method.PA:
        k = pa_correct(k, cfg.ref_cfg)
    if cfg.ir_enabled:
        k = apply_ir(k, cfg.ir)
    if not np.all(np.isfinite(k.data)):
        raise NumericError("correction produced non-finite samples")
    return k


def pa_then_ref(
    k: KSpaceData, k_ref: KSpaceData, cfg: RefCorrectionConfig = RefCorrectionConfig()
) -> KSpaceData:
    """Peak alignment followed by reference phase correction.

    The reference scan is peak-aligned too, otherwise its phase map would put
    the removed shift back as a linear phase.
    """
    k = pa_correct(ensure_reversed(k), cfg)
    k_ref = pa_correct(ensure_reversed(k_ref), cfg)
    return ref_correct(k, k_ref, cfg)


def run_pipeline(cfg: PipelineConfig, k: KSpaceData, k_ref: KSpaceData | None = None) -> PipelineResult:
    k = ensure_reversed(k)
    before = np.abs(reconstruct(k))
    corrected = correct(k, cfg, k_ref)
    after = np.abs(reconstruct(corrected))
    if not np.all(np.isfinite(after)):
        raise NumericError("reconstruction produced non-finite pixels")
    report = PipelineReport(
        original=quality_report(before, cfg.roi),
        corrected=quality_report(after, cfg.roi),
        config=cfg,
    )
    return PipelineResult(kspace=corrected, image=after, report=report)


def sweep_interp_factors(
    k: KSpaceData,
    factors,
    cfg: PipelineConfig = PipelineConfig(),
    k_ref: KSpaceData | None = None,
) -> dict:
    """GSR/SNR after preliminary correction + IR for each interpolation factor.

    Reports every factor; picking one is left to the caller.
    """
    baseline = run_pipeline(PipelineConfig(Method.NONE, False, roi=cfg.roi), k)
    prelim = run_pipeline(PipelineConfig(cfg.method, False, ref_cfg=cfg.ref_cfg, roi=cfg.roi), k, k_ref)
    rows = []
    for f in sorted(set(int(f) for f in factors)):
        ir = IRConfig(factor=f, mode=cfg.ir.mode, passes=cfg.ir.passes)
        res = run_pipeline(PipelineConfig(cfg.method, True, ir, cfg.ref_cfg, cfg.roi), k, k_ref)
        rows.append(
            {
                "factor": f,
                "interp_points": ir.interp_points(k.n_cols),
                **res.report.corrected.to_dict(),
                "residual_percent": res.report.residual_percent,
            }
        )
    return {
        "original": baseline.report.original.to_dict(),
        "preliminary": prelim.report.corrected.to_dict(),
        "sweep": rows,
        "roi": cfg.roi.to_dict(),
        "config": {"method": cfg.method.value, "ir_mode": cfg.ir.mode.value, "ir_passes": cfg.ir.passes},
    }
