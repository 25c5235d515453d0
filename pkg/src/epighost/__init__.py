"""Nyquist ghost correction for low-field echo-planar imaging."""

from .core import AcquisitionMeta, Domain, KSpaceData, Parity, reconstruct
from .ir_correction import IRConfig, IRMode, apply_ir
from .metrics import ROISpec, QualityReport, ghost_to_signal_ratio, signal_to_noise_ratio
from .pa_correction import apply_peak_alignment, estimate_peak_shift, pa_correct
from .pipeline import Method, PipelineConfig, run_pipeline
from .ref_correction import RefCorrectionConfig, apply_ref_correction, estimate_parity_phase, ref_correct
from .simulator import ErrorModel, PhantomSpec, make_phantom, simulate_epi

__all__ = [
    "AcquisitionMeta",
    "Domain",
    "KSpaceData",
    "Parity",
    "reconstruct",
    "IRConfig",
    "IRMode",
    "apply_ir",
    "ROISpec",
    "QualityReport",
    "ghost_to_signal_ratio",
    "signal_to_noise_ratio",
    "apply_peak_alignment",
    "estimate_peak_shift",
    "pa_correct",
    "Method",
    "PipelineConfig",
    "run_pipeline",
    "RefCorrectionConfig",
    "apply_ref_correction",
    "estimate_parity_phase",
    "ref_correct",
    "ErrorModel",
    "PhantomSpec",
    "make_phantom",
    "simulate_epi",
]

__version__ = "0.1.0"
