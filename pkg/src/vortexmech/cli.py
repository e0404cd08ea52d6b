"""Command-line interface.

Subcommands: params, spectrum, sweep-radius, sweep-usc, sweep-detuning,
dynamics. Every subcommand takes --config, --out and repeatable
--override section.key=value flags; each experiment writes CSV data, an
SVG rendering and a JSON provenance sidecar into the output directory.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 numerical-
invariant failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import constants
from .config import RunConfig, apply_override, parse_config, serialize_config
from .constants import TWO_PI
from .errors import IntegrationError, ValidationError, VortexmechError
from .experiments import (run_effective_comparison, run_transfer_experiment,
                          sweep_detuning, sweep_radius, sweep_usc)
from .lindblad import Tolerances
from .output import (ensure_outdir, grid_to_csv, grid_to_svg, params_report,
                     params_to_csv, spectrum_to_csv, spectrum_to_svg,
                     timeseries_to_csv, timeseries_to_svg, trajectory_to_csv,
                     write_provenance)
from .params import gyrotropic_frequency, vortex_linewidth
from .thiele import (RingDownProtocol, attach_peaks, power_spectrum,
                     simulate_ring_down)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse's exit(2) onto exit code 1
        raise _UsageError(message)


def _provenance_record(cfg: RunConfig, command: str, extra: dict) -> dict:
    return {
        "command": command,
        "config": serialize_config(cfg),
        "constants": {"hbar": constants.HBAR, "mu0": constants.MU0,
                      "mu_B": constants.MU_B, "k_B": constants.K_B,
                      "gamma_g": constants.GAMMA_G, "xi": constants.XI_DISC,
                      "g_s": constants.G_S},
        "parameters": extra,
    }


def _provenance_lines(record: dict) -> list[str]:
    lines = [f"vortexmech {record['command']}"]
    for key, value in sorted(record["parameters"].items()):
        lines.append(f"{key} = {value}")
    return lines


def _load_config(args) -> RunConfig:
    cfg = parse_config(args.config)
    for item in args.override or []:
        if "=" not in item:
            raise _UsageError(f"--override expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        cfg = apply_override(cfg, key.strip(), value.strip())
    return cfg


def _exp_default(cfg, flag_value, exp_attr, fallback):
    if flag_value is not None:
        return flag_value
    cfg_value = getattr(cfg.experiment, exp_attr)
    return cfg_value if cfg_value is not None else fallback


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_params(cfg: RunConfig, args) -> int:
    derived = cfg.derived()
    out = ensure_outdir(args.out)
    record = _provenance_record(cfg, "params", {})
    params_to_csv(out / "derived_params.csv", derived,
                  _provenance_lines(record))
    write_provenance(out / "derived_params.provenance.json", record)
    report = params_report(derived)
    (out / "derived_params.txt").write_text(report, encoding="utf-8")
    g_vc, g_nc = cfg.effective_couplings(derived)
    if (g_vc, g_nc) != (derived.g_vc, derived.g_nc):
        report += (f"active overrides: g_vc/2pi = {g_vc / TWO_PI:.6g} Hz, "
                   f"g_nc/2pi = {g_nc / TWO_PI:.6g} Hz\n")
    sys.stdout.write(report)
    return EXIT_OK


def _cmd_spectrum(cfg: RunConfig, args) -> int:
    omega_v = gyrotropic_frequency(cfg.material, cfg.disc)
    gamma_v = vortex_linewidth(cfg.material, cfg.disc, omega_v)
    protocol = RingDownProtocol(
        pulse_field=_exp_default(cfg, args.pulse_field, "pulse_field", 10e-3),
        pulse_duration=_exp_default(cfg, None, "pulse_duration", 200e-9),
        record_duration=_exp_default(cfg, args.record, "record_duration", 50e-6),
        sample_interval=_exp_default(cfg, args.dt, "sample_interval", 0.5e-9))
    traj = simulate_ring_down(omega_v, gamma_v, cfg.disc.polarity, protocol,
                              disc_radius=cfg.disc.radius)
    spec = attach_peaks(power_spectrum(traj.after_release()))
    out = ensure_outdir(args.out)
    record = _provenance_record(cfg, "spectrum", {
        "omega_v_rad_per_s": omega_v, "gamma_v_rad_per_s": gamma_v,
        "pulse_field_T": protocol.pulse_field,
        "pulse_duration_s": protocol.pulse_duration,
        "record_duration_s": protocol.record_duration,
        "sample_interval_s": protocol.sample_interval})
    lines = _provenance_lines(record)
    spectrum_to_csv(out / "spectrum.csv", spec, lines)
    trajectory_to_csv(out / "trajectory.csv", traj, lines)
    spectrum_to_svg(out / "spectrum.svg", spec, title="vortex ring-down spectrum",
                    max_frequency=5.0 * omega_v / TWO_PI)
    write_provenance(out / "spectrum.provenance.json", record)
    if spec.peaks:
        sys.stdout.write(
            f"dominant peak: {spec.peaks[0].frequency / 1e6:.4f} MHz "
            f"(analytic f_v = {omega_v / TWO_PI / 1e6:.4f} MHz)\n")
    return EXIT_OK


def _cmd_sweep_radius(cfg: RunConfig, args) -> int:
    derived = cfg.derived()
    r_min = _exp_default(cfg, args.r_min, "r_min", 100e-9)
    r_max = _exp_default(cfg, args.r_max, "r_max", 600e-9)
    points = _exp_default(cfg, args.points, "points", cfg.simulation.grid_points)
    grid = sweep_radius(cfg.material, cfg.disc.thickness, derived.G_v,
                        derived.a0, np.linspace(r_min, r_max, points))
    out = ensure_outdir(args.out)
    record = _provenance_record(cfg, "sweep-radius", {
        "r_min_m": r_min, "r_max_m": r_max, "points": points,
        "gradient_T_per_m": derived.G_v, "a0_m": derived.a0})
    grid_to_csv(out / "sweep_radius.csv", grid, _provenance_lines(record))
    grid_to_svg(out / "sweep_radius_f_v.svg", grid, "f_v",
                title="gyrotropic frequency vs radius")
    grid_to_svg(out / "sweep_radius_ratio.svg", grid, "g_vc_over_gamma",
                title="coupling / vortex damping vs radius")
    write_provenance(out / "sweep_radius.provenance.json", record)
    return EXIT_OK


def _cmd_sweep_usc(cfg: RunConfig, args) -> int:
    derived = cfg.derived()
    r_min = _exp_default(cfg, args.r_min, "r_min", 50e-9)
    r_max = _exp_default(cfg, args.r_max, "r_max", 600e-9)
    g_min = _exp_default(cfg, args.g_min, "G_min", 1e5)
    g_max = _exp_default(cfg, args.g_max, "G_max", 1e9)
    points = _exp_default(cfg, args.points, "points", cfg.simulation.grid_points)
    grid = sweep_usc(cfg.material, cfg.disc.thickness, derived.a0,
                     cfg.cantilever.quality_factor,
                     np.linspace(r_min, r_max, points),
                     np.geomspace(g_min, g_max, points))
    out = ensure_outdir(args.out)
    record = _provenance_record(cfg, "sweep-usc", {
        "r_min_m": r_min, "r_max_m": r_max, "G_min_T_per_m": g_min,
        "G_max_T_per_m": g_max, "points": points, "a0_m": derived.a0,
        "quality_factor": cfg.cantilever.quality_factor})
    grid_to_csv(out / "sweep_usc.csv", grid, _provenance_lines(record))
    grid_to_svg(out / "sweep_usc_ratio.svg", grid, "g_over_omega",
                log_value=True, contours={0.1: "white"},
                title="g_vc / omega_v (dashed: USC boundary 0.1)")
    grid_to_svg(out / "sweep_usc_U.svg", grid, "U", log_value=True,
                contours={10.0: "white"},
                title="coherence measure U (dashed: U = 10)")
    write_provenance(out / "sweep_usc.provenance.json", record)
    return EXIT_OK


def _cmd_sweep_detuning(cfg: RunConfig, args) -> int:
    derived = cfg.derived()
    g_vc, g_nc = cfg.effective_couplings(derived)
    g_big = max(g_vc, g_nc)
    d1_min = _exp_default(cfg, args.delta1_min, "delta1_min", 5.0 * g_big)
    d1_max = _exp_default(cfg, args.delta1_max, "delta1_max", 60.0 * g_big)
    d_min = _exp_default(cfg, args.d_min, "d_min", 120e-9)
    d_max = _exp_default(cfg, args.d_max, "d_max", 300e-9)
    points = _exp_default(cfg, args.points, "points", cfg.simulation.grid_points)
    # quoted couplings from [overrides] anchor the g_vc(d) curve unless
    # the experiment section disables it
    use_quoted = cfg.experiment.use_quoted_couplings is not False
    anchor = None
    if use_quoted and cfg.overrides.g_vc is not None:
        anchor = (cfg.overrides.g_vc, cfg.placement.d_vc)
    grid = sweep_detuning(
        cfg.material, cfg.disc, cfg.magnet, a0=derived.a0, g_nc=g_nc,
        gamma_v=derived.gamma_v, kappa_1=derived.kappa_c,
        kappa_2=cfg.environment.nv_dephasing_rate,
        delta1_values=np.linspace(d1_min, d1_max, points),
        d_vc_values=np.linspace(d_min, d_max, points), g_vc_anchor=anchor)
    out = ensure_outdir(args.out)
    record = _provenance_record(cfg, "sweep-detuning", {
        "delta1_min_rad_per_s": d1_min, "delta1_max_rad_per_s": d1_max,
        "d_min_m": d_min, "d_max_m": d_max, "points": points,
        "g_nc_rad_per_s": g_nc,
        "g_vc_anchor": list(anchor) if anchor else None})
    grid_to_csv(out / "sweep_detuning.csv", grid, _provenance_lines(record))
    for name in ("g_eff_over_gamma_eff", "g_eff_over_kappa_eff", "C_eff"):
        grid_to_svg(out / f"sweep_detuning_{name}.svg", grid, name,
                    log_value=True, contours={1.0: "white"},
                    title=f"{name} (dashed: 1)")
    write_provenance(out / "sweep_detuning.provenance.json", record)
    return EXIT_OK


def _cmd_dynamics(cfg: RunConfig, args) -> int:
    derived = cfg.derived()
    g_vc, g_nc = cfg.effective_couplings(derived)
    figure = _exp_default(cfg, args.figure, "figure", "8a")
    if figure not in ("8a", "8b", "9a", "9b"):
        raise _UsageError(f"--figure must be one of 8a, 8b, 9a, 9b, "
                          f"got {figure!r}")
    n_times = _exp_default(cfg, args.samples, "points",
                           cfg.simulation.time_samples)
    t_final = _exp_default(cfg, args.t_final, "t_final", None)
    kappa_2 = cfg.environment.nv_dephasing_rate
    dephase_as_decay = cfg.environment.nv_dephasing_model == "decay"
    tolerances = Tolerances(steps_per_unit=cfg.simulation.steps_per_unit)
    out = ensure_outdir(args.out)

    if figure.startswith("8"):
        g = g_nc  # the transfer preset runs both couplings at g_nc
        dissipative = figure == "8b"
        series = run_transfer_experiment(
            g, g, gamma_v=derived.gamma_v, kappa_1=derived.kappa_c,
            kappa_2=kappa_2, dissipative=dissipative,
            n_max=cfg.simulation.n_max, t_final=t_final, n_times=n_times,
            dephasing_as_decay=dephase_as_decay, tolerances=tolerances)
        record = _provenance_record(cfg, f"dynamics --figure {figure}", {
            "g_rad_per_s": g, "dissipative": dissipative,
            "gamma_v_rad_per_s": derived.gamma_v,
            "kappa_1_rad_per_s": derived.kappa_c,
            "kappa_2_rad_per_s": kappa_2, "n_times": n_times})
        stem = f"dynamics_fig{figure}"
        timeseries_to_csv(out / f"{stem}.csv", series,
                          _provenance_lines(record))
        timeseries_to_svg(out / f"{stem}.svg", series,
                          title=f"state transfer ({'with' if dissipative else 'no'}"
                                " dissipation)")
        write_provenance(out / f"{stem}.provenance.json", record)
        return EXIT_OK

    ratio = _exp_default(cfg, args.delta1_over_g, "delta1_over_g", 10.0)
    dissipative = figure == "9b"
    comparison = run_effective_comparison(
        g_vc, g_nc, ratio * max(g_vc, g_nc), gamma_v=derived.gamma_v,
        kappa_1=derived.kappa_c, kappa_2=kappa_2, dissipative=dissipative,
        n_max=cfg.simulation.n_max, n_times=n_times, tolerances=tolerances)
    record = _provenance_record(cfg, f"dynamics --figure {figure}", {
        "g_vc_rad_per_s": g_vc, "g_nc_rad_per_s": g_nc,
        "delta1_over_g": ratio, "dissipative": dissipative,
        "max_deviation": comparison.max_deviation, "n_times": n_times})
    stem = f"dynamics_fig{figure}"
    timeseries_to_csv(out / f"{stem}_tripartite.csv", comparison.tripartite,
                      _provenance_lines(record))
    timeseries_to_csv(out / f"{stem}_reference.csv", comparison.reference,
                      _provenance_lines(record))
    timeseries_to_svg(out / f"{stem}_tripartite.svg", comparison.tripartite,
                      title=f"tripartite, Delta1 = {ratio:g} g")
    timeseries_to_svg(out / f"{stem}_reference.svg", comparison.reference,
                      title="eliminated two-mode reference")
    write_provenance(out / f"{stem}.provenance.json", record)
    sys.stdout.write(f"max occupation deviation vs reference: "
                     f"{comparison.max_deviation:.4f}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="vortexmech",
                     description="vortex / cantilever / NV hybrid simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="device config file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--override", action="append", metavar="SEC.KEY=VALUE",
                       help="override any config field (repeatable)")

    common(sub.add_parser("params", help="derived-parameter report"))

    p = sub.add_parser("spectrum", help="ring-down excitation spectrum")
    common(p)
    p.add_argument("--pulse-field", type=float, default=None,
                   help="pulse amplitude (T)")
    p.add_argument("--record", type=float, default=None,
                   help="record duration (s)")
    p.add_argument("--dt", type=float, default=None,
                   help="sample interval (s)")

    p = sub.add_parser("sweep-radius", help="frequency and g/gamma vs radius")
    common(p)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("sweep-usc", help="USC maps over radius and gradient")
    common(p)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--g-min", type=float, default=None,
                   help="minimum gradient (T/m)")
    p.add_argument("--g-max", type=float, default=None,
                   help="maximum gradient (T/m)")
    p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("sweep-detuning",
                       help="effective parameters over detuning and distance")
    common(p)
    p.add_argument("--delta1-min", type=float, default=None,
                   help="min detuning (rad/s)")
    p.add_argument("--delta1-max", type=float, default=None,
                   help="max detuning (rad/s)")
    p.add_argument("--d-min", type=float, default=None)
    p.add_argument("--d-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("dynamics", help="occupation time evolution")
    common(p)
    p.add_argument("--figure", default=None, choices=["8a", "8b", "9a", "9b"],
                   help="preset: 8a/8b transfer, 9a/9b elimination check")
    p.add_argument("--t-final", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--delta1-over-g", type=float, default=None)
    return parser


_HANDLERS = {
    "params": _cmd_params,
    "spectrum": _cmd_spectrum,
    "sweep-radius": _cmd_sweep_radius,
    "sweep-usc": _cmd_sweep_usc,
    "sweep-detuning": _cmd_sweep_detuning,
    "dynamics": _cmd_dynamics,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(args)
        return _HANDLERS[args.command](cfg, args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except IntegrationError as exc:
        print(f"numerical invariant failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except VortexmechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
