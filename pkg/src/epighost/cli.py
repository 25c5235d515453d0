"""Command-line interface.

Exit codes: 0 success, 2 format error, 3 config error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .core import META_0P5T, META_0P068T, Domain, reconstruct
from .errors import ConfigError, EpiGhostError, FormatError
from .ir_correction import IRConfig, IRMode
from .metrics import Corner, ROISpec, magnitude_profiles, quality_report, residual_artifact_percent
from .pipeline import Method, PipelineConfig, ensure_reversed, run_pipeline, sweep_interp_factors
from .simulator import ErrorModel, PhantomShape, PhantomSpec, make_phantom, simulate_epi

log = logging.getLogger("epighost")

PROTOCOLS = {"0.5T": META_0P5T, "0.068T": META_0P068T}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ConfigError.exit_code, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _hxw(text: str) -> tuple[int, int]:
    try:
        h, w = text.lower().split("x")
        return int(h), int(w)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected HxW, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="epighost", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="synthesize an EPI scan, its reference scan and ground truth")
    s.add_argument("--size", type=int, default=64)
    s.add_argument("--phantom", choices=[v.value for v in PhantomShape], default="disk")
    s.add_argument("--radius", type=float, default=12.0)
    s.add_argument("--phase-even", type=float, default=0.0, metavar="THETA")
    s.add_argument("--xphase-poly", type=_floats, default=[], metavar="C0,C1,...")
    s.add_argument("--shift-even", type=int, default=0, metavar="DELTA")
    s.add_argument("--noise-sigma", type=float, default=0.0)
    s.add_argument("--averages", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--protocol", choices=sorted(PROTOCOLS), default="0.5T")
    s.add_argument("--out", required=True)
    s.add_argument("--ref-out")
    s.add_argument("--truth-out")

    c = sub.add_parser("correct", help="run a correction pipeline on an EPIK k-space file")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--ref")
    c.add_argument("--method", choices=[m.value for m in Method], required=True)
    _ir_args(c)
    c.add_argument("--out", required=True)
    c.add_argument("--out-image", help="also write the corrected magnitude image (PGM)")
    c.add_argument("--report", help="also write the before/after quality report (JSON)")

    r = sub.add_parser("recon", help="reconstruct a magnitude image")
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--out-image", required=True)
    r.add_argument("--out-raw")

    m = sub.add_parser("metrics", help="GSR / SNR of an image")
    m.add_argument("--image", required=True, help="PGM, EPIK or raw float64 (square) image")
    _roi_args(m)
    m.add_argument("--baseline", help="report whose 'original' entry is the uncorrected reference")
    m.add_argument("--out", required=True)

    pr = sub.add_parser("profiles", help="row or column magnitude profiles as CSV")
    pr.add_argument("--in", dest="inp", required=True)
    pr.add_argument("--axis", choices=["row", "col"], required=True)
    pr.add_argument("--out", required=True)

    sw = sub.add_parser("sweep", help="GSR/SNR over interpolation factors")
    sw.add_argument("--in", dest="inp", required=True)
    sw.add_argument("--ref")
    sw.add_argument("--method", choices=["ref", "pa"], default=None)
    sw.add_argument("--interp-factors", type=_ints, default=[2, 4, 8, 16, 32, 64, 128])
    sw.add_argument("--ir-mode", choices=[v.value for v in IRMode], default=IRMode.CENTERED_AVERAGE.value)
    sw.add_argument("--ir-passes", type=int, default=1)
    _roi_args(sw)
    sw.add_argument("--out", required=True)
    return p


def _ir_args(p):
    p.add_argument("--ir", action="store_true", help="apply interpolation-and-resampling")
    p.add_argument("--interp-factor", type=int, default=64)
    p.add_argument("--ir-mode", choices=[v.value for v in IRMode], default=IRMode.CENTERED_AVERAGE.value)
    p.add_argument("--ir-passes", type=int, default=1)


def _roi_args(p):
    p.add_argument("--roi-size", type=_hxw, default=None, metavar="HxW")
    p.add_argument("--noise-size", type=_hxw, default=None, metavar="HxW")
    p.add_argument("--noise-corner", choices=[c.value for c in Corner], default="tl")


def _roi(args) -> ROISpec:
    return ROISpec(signal_size=args.roi_size, noise_corner=Corner(args.noise_corner), noise_size=args.noise_size)


def _load_image(path) -> np.ndarray:
    path = Path(path)
    head = path.read_bytes()[:4]
    if head == io.MAGIC:
        k = io.read_epik(path)
        return np.abs(k.data) if k.domain is Domain.XY else np.abs(reconstruct(ensure_reversed(k)))
    if head[:2] == b"P5":
        return io.read_pgm(path)
    return io.read_raw_image(path)


def cmd_simulate(args) -> None:
    n = args.size
    phantom = PhantomSpec(PhantomShape(args.phantom), n_cols=n, n_rows=n, radius=args.radius)
    err = ErrorModel(
        const_phase_even=args.phase_even,
        xphase_poly_even=tuple(args.xphase_poly),
        peak_shift_even=args.shift_even,
        noise_sigma=args.noise_sigma,
        seed=args.seed,
        averages=args.averages,
    )
    sim = simulate_epi(make_phantom(phantom), err, meta=PROTOCOLS[args.protocol])
    io.write_epik(sim.k_formal, args.out)
    if args.ref_out:
        io.write_epik(sim.k_ref, args.ref_out)
    if args.truth_out:
        io.write_epik(sim.ground_truth_kspace, args.truth_out)


def _pipeline_config(args, method: Method, roi: ROISpec = ROISpec()) -> PipelineConfig:
    ir = IRConfig(factor=args.interp_factor, mode=IRMode(args.ir_mode), passes=args.ir_passes)
    return PipelineConfig(method=method, ir_enabled=args.ir, ir=ir, roi=roi)


def cmd_correct(args) -> None:
    method = Method(args.method)
    if method is Method.REF and not args.ref:
        raise ConfigError("--method ref requires --ref")
    k = io.read_epik(args.inp)
    k_ref = io.read_epik(args.ref) if args.ref else None
    result = run_pipeline(_pipeline_config(args, method), k, k_ref)
    io.write_epik(result.kspace, args.out)
    if args.out_image:
        io.export_image(result.image, args.out_image, "pgm")
    if args.report:
        io.write_json(result.report.to_dict(), args.report)
    log.info("GSR %.4f -> %.4f", result.report.original.gsr, result.report.corrected.gsr)


def cmd_recon(args) -> None:
    k = io.read_epik(args.inp)
    img = np.abs(k.data) if k.domain is Domain.XY else np.abs(reconstruct(ensure_reversed(k)))
    io.export_image(img, args.out_image, "pgm")
    if args.out_raw:
        io.export_image(img, args.out_raw, "raw")


def cmd_metrics(args) -> None:
    roi = _roi(args)
    report = quality_report(_load_image(args.image), roi)
    out = {"original": report.to_dict(), "corrected": report.to_dict(), "residual_percent": None}
    if args.baseline:
        base = io.read_json(args.baseline)
        try:
            original = base["original"]
            out["original"] = {"gsr": float(original["gsr"]), "snr": original["snr"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{args.baseline}: not a quality report ({exc})") from exc
        out["residual_percent"] = residual_artifact_percent(report.gsr, out["original"]["gsr"])
    out["roi"] = roi.to_dict()
    out["config"] = {"image": str(args.image), "baseline": args.baseline}
    io.write_json(out, args.out)


def cmd_profiles(args) -> None:
    k = io.read_epik(args.inp)
    io.write_profiles_csv(magnitude_profiles(k.data, args.axis), args.out)


def cmd_sweep(args) -> None:
    method = Method(args.method) if args.method else (Method.REF if args.ref else Method.PA)
    if method is Method.REF and not args.ref:
        raise ConfigError("--method ref requires --ref")
    k = io.read_epik(args.inp)
    k_ref = io.read_epik(args.ref) if args.ref else None
    cfg = PipelineConfig(method, True, IRConfig(mode=IRMode(args.ir_mode), passes=args.ir_passes), roi=_roi(args))
    io.write_json(sweep_interp_factors(k, args.interp_factors, cfg, k_ref), args.out)


COMMANDS = {
    "simulate": cmd_simulate,
    "correct": cmd_correct,
    "recon": cmd_recon,
    "metrics": cmd_metrics,
    "profiles": cmd_profiles,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            COMMANDS[args.command](args)
    except EpiGhostError as exc:
        print(f"epighost {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"epighost {args.command}: {exc}", file=sys.stderr)
        return ConfigError.exit_code
    except ValueError as exc:
        print(f"epighost {args.command}: {exc}", file=sys.stderr)
        return ConfigError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
