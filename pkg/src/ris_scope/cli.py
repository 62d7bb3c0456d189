"""Command-line front end.

    ris-scope pattern --config cfg.json --out results/
    ris-scope reproduce VII

Exit status is 0 on success, 2 for configuration problems (the message
names the offending field) and 1 for runtime failures or out-of-tolerance
reproduction tables.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .config import (
    ConfigFieldError,
    LinkBlock,
    RunConfig,
    StftBlock,
    TrajectoryBlock,
    load_config,
    parse_scene,
)
from .core import ConfigurationError, direction_to_signed
from .link_budget import detection_scan, snr_db
from .microdoppler import TargetTrajectory, stft_spectrogram, synthesize_echo
from .phase_profile import build_profile
from .rcs import bistatic_rcs, forward_pattern, steering_metrics
from .reproduce import TABLES, reproduce
from .scattering import MODELS, PlaneWave, pattern_cut

COMMANDS = ("pattern", "metrics", "snr", "detect", "spectrogram")


def _signed_steering(cfg: RunConfig) -> tuple[float, float]:
    steer = cfg.steering.build()
    plane = cfg.sweep.phi_plane
    try:
        return direction_to_signed(steer.incident, plane), direction_to_signed(steer.desired, plane)
    except ConfigurationError as exc:
        raise ConfigFieldError("steering", f"directions must lie in the sweep plane ({exc})") from exc


def _targets(cfg: RunConfig, command: str) -> tuple[Path, str]:
    """Output directory and file stem; a configured stem gets the command appended."""
    out = Path(cfg.output.directory)
    stem = f"{cfg.output.stem}_{command}" if cfg.output.stem else command
    return out, stem


def cmd_pattern(cfg: RunConfig) -> str:
    geom = cfg.require_geometry()
    steer = cfg.steering.build()
    profile = build_profile(geom, steer, cfg.steering.bits)
    cut = cfg.sweep.build()
    pcut = forward_pattern(geom, steer, profile, cut, cfg.model)
    field = pattern_cut(geom, PlaneWave(steer.incident), profile, cut.phi_plane_deg,
                        thetas_deg=cut.angles(), model=cfg.model)
    out, stem = _targets(cfg, "pattern")
    if "csv" in cfg.output.formats:
        io.write_pattern_csv(out / f"{stem}.csv", field, pcut)
    # the 1-bit mirror lobe can edge out the designed one; report the design side
    theta_hat, peak = pcut.main_lobe(pcut.direction_of_design)
    if "json" in cfg.output.formats:
        io.write_json(out / f"{stem}.json", {
            "main_lobe_theta_deg": theta_hat, "main_lobe_rcs_dbsm": peak,
            "global_peak_theta_deg": pcut.peak[0], "global_peak_rcs_dbsm": pcut.peak[1],
            "config": cfg.to_dict()})
    return f"peak {peak:.2f} dBsm at {theta_hat:.2f} deg"


def cmd_metrics(cfg: RunConfig) -> str:
    geom = cfg.require_geometry()
    ti, td = _signed_steering(cfg)
    m = steering_metrics(geom, ti, td, cfg.steering.bits, cfg.sweep.build(), cfg.model)
    record = m.to_record(ti, td, cfg.steering.bits, geom.m_count, geom.n_count)
    out, stem = _targets(cfg, "metrics")
    if "json" in cfg.output.formats:
        io.write_json(out / f"{stem}.json", record)
    if "csv" in cfg.output.formats:
        io.write_csv(out / f"{stem}.csv", list(record), [list(record.values())])
    return (f"sigma_f {m.sigma_f_peak:.2f} dBsm, sigma_b {m.sigma_b_peak:.2f} dBsm, "
            f"squint {m.beam_squint:.2f} deg, PSLR {m.pslr:.2f} dB")


def _link_sigmas(cfg: RunConfig, geom) -> tuple[float, float]:
    link = cfg.link
    if link.sigma_f is not None and link.sigma_b is not None:
        return link.sigma_f, link.sigma_b
    ti, td = _signed_steering(cfg)
    profile = build_profile(geom, cfg.steering.build(), cfg.steering.bits)
    plane = cfg.sweep.phi_plane
    sf = float(bistatic_rcs(geom, profile, ti, td, plane, cfg.model))
    sb = float(bistatic_rcs(geom, profile, td, ti, plane, cfg.model))
    return (link.sigma_f if link.sigma_f is not None else sf,
            link.sigma_b if link.sigma_b is not None else sb)


def cmd_snr(cfg: RunConfig) -> str:
    if cfg.link is None:
        raise ConfigFieldError("link", "block is required for this command")
    geom = cfg.require_geometry()
    sf, sb = _link_sigmas(cfg, geom)
    budget = cfg.link.build(geom.wavelength, sf, sb)
    snr = snr_db(budget)
    out, stem = _targets(cfg, "snr")
    record = {"snr_db": snr, "sigma_f": sf, "sigma_b": sb, "wavelength": geom.wavelength,
              "p_tx": budget.p_tx, "g_a": budget.g_a, "sigma_t": budget.sigma_t,
              "r1": budget.r1, "r2": budget.r2, "n0": budget.n0}
    if "json" in cfg.output.formats:
        io.write_json(out / f"{stem}.json", record)
    if "csv" in cfg.output.formats:
        io.write_csv(out / f"{stem}.csv", list(record), [list(record.values())])
    return f"SNR {snr:.2f} dB"


def cmd_detect(cfg: RunConfig) -> str:
    scene = parse_scene(cfg.scene or {})
    geom = None if cfg.geometry is None else cfg.geometry.build()
    report = detection_scan(scene, geom, cfg.steering.bits, model=cfg.model)
    out, stem = _targets(cfg, "detect")
    io.write_detection(out / stem, report, cfg.output.formats)
    counts = " ".join(f"{k}={v}" for k, v in sorted(report.counts.items()))
    return f"detections {report.total}/{len(scene.targets)} ({counts})"


def build_trajectory(block: TrajectoryBlock) -> TargetTrajectory:
    common = {"duration": block.duration, "sample_rate": block.sample_rate,
              "rcs_dbsm": block.rcs_dbsm}
    p = dict(block.params)
    try:
        if block.kind == "static":
            return TargetTrajectory.static(p.pop("position", (0.5, 2.0)), **common, **p)
        if block.kind == "radial":
            return TargetTrajectory.radial(p.pop("theta_deg", 30.0), p.pop("start_range", 3.0),
                                           p.pop("speed", -1.0), **common, **p)
        if block.kind == "constant_velocity":
            return TargetTrajectory.constant_velocity(p.pop("start"), p.pop("velocity"),
                                                      **common, **p)
        return TargetTrajectory.pendulum(p.pop("pivot", (1.5, 2.6)), **common, **p)
    except (KeyError, TypeError) as exc:
        raise ConfigFieldError("trajectory", f"bad parameters for kind {block.kind!r}: {exc}") from exc


def cmd_spectrogram(cfg: RunConfig) -> str:
    geom = cfg.require_geometry()
    ti, _ = _signed_steering(cfg)
    traj = build_trajectory(cfg.trajectory or TrajectoryBlock())
    stft = cfg.stft or StftBlock()
    budget = (cfg.link or LinkBlock()).build(geom.wavelength, 0.0, 0.0)
    profile = build_profile(geom, cfg.steering.build(), cfg.steering.bits)
    echo = synthesize_echo(traj, geom, profile, budget, ti, stft.clutter_amplitude, cfg.model)
    spec = stft_spectrogram(echo, traj.sample_rate, stft.window_duration, stft.hop,
                            stft.dc_filter)
    out, stem = _targets(cfg, "spectrogram")
    io.write_spectrogram(out / stem, spec, cfg.output.formats)
    ridge = spec.ridge()
    return (f"{len(spec.times)} frames, Doppler ridge {ridge.min():.1f}..{ridge.max():.1f} Hz "
            f"(bin {spec.bin_width:.1f} Hz)")


HANDLERS = {"pattern": cmd_pattern, "metrics": cmd_metrics, "snr": cmd_snr,
            "detect": cmd_detect, "spectrogram": cmd_spectrogram}


def run(cfg: RunConfig, command: str) -> str:
    """Execute one subcommand and return its summary line."""
    if command not in HANDLERS:
        raise ConfigFieldError("<command>", f"unknown subcommand {command!r}")
    return HANDLERS[command](cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-scope",
        description="Scattering, RCS, link-budget and micro-Doppler tools for quantized RIS.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=Path, help="JSON run configuration")
        p.add_argument("--out", type=Path, help="output directory (overrides the config)")
        p.add_argument("--model", choices=MODELS, help="scattering model (default: paper)")
        p.add_argument("--step", type=float, help="angular sweep step in degrees")

    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} computation")
        common(p)
        if name == "detect":
            p.add_argument("--no-ris", action="store_true", help="evaluate the horn-only baseline")
    p = sub.add_parser("reproduce", help="recompute a published theory table")
    p.add_argument("table", choices=sorted(TABLES), help="table identifier")
    common(p)
    return parser


def _load(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.out is not None:
        cfg = replace(cfg, output=replace(cfg.output, directory=str(args.out)))
    if args.model is not None:
        cfg = replace(cfg, model=args.model)
    if args.step is not None:
        if not args.step > 0:
            raise ConfigFieldError("sweep.step", "must be > 0")
        cfg = replace(cfg, sweep=replace(cfg.sweep, step=args.step))
    if getattr(args, "no_ris", False):
        cfg = replace(cfg, geometry=None)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "reproduce":
            result = reproduce(args.table, cfg.sweep.build(), cfg.model)
            print(result.format())
            if args.out is not None:
                io.write_json(Path(cfg.output.directory) / f"table_{args.table}.json",
                              result.to_dict())
            return 0 if result.ok else 1
        print(run(cfg, args.command))
        return 0
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
