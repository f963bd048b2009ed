"""Command-line scenario runner: simulate, tomography, calibrate, sweep.

Every command reads parameters from a named preset, a config file, or both
(config overrides preset, flags override both), runs pure library
operations, and writes plain-text artifacts: CSV time series for external
plotting, gate reports, and machine-reloadable tuned-parameter configs.
Exit status is 0 only when no operation reported an error or a
non-converged search.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .calibrate import SearchSpec, calibrate_pi_duration, pure_cn_objective, tune_pure_cn
from .config import (
    PRESETS,
    ConfigError,
    RunConfig,
    build_run_config,
    emit_config,
    initial_state,
    parse_config_lines,
)
from .core import (
    BASIS_LABELS,
    CalibrationError,
    GcnPatternError,
    PulseSpec,
    ResonanceError,
    SystemParams,
    TimeSeries,
    digital_state,
)
from .gates import cn_matrix, extract_gcn_phases, gate_fidelity, tomography
from .propagator import run_timeseries

__all__ = [
    "main",
    "CSV_HEADER",
    "write_timeseries_csv",
    "read_timeseries_csv",
]

CSV_HEADER = "t,re_c00,im_c00,re_c01,im_c01,re_c10,im_c10,re_c11,im_c11,norm"


def _num(x: float) -> str:
    # 17 significant digits: full double round-trip
    return f"{x:.16e}"


def write_timeseries_csv(series: TimeSeries, path: str) -> None:
    lines = [CSV_HEADER]
    for t, amps, norm in zip(series.t, series.amps, series.norm):
        fields = [_num(t)]
        for c in amps:
            fields.append(_num(c.real))
            fields.append(_num(c.imag))
        fields.append(_num(norm))
        lines.append(",".join(fields))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_timeseries_csv(path: str, frame: str = "primed") -> TimeSeries:
    """Load a CSV written by `write_timeseries_csv` back into a TimeSeries."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        for line in fh:
            if line.strip():
                rows.append([float(x) for x in line.strip().split(",")])
    data = np.array(rows)
    amps = data[:, 1:9:2] + 1j * data[:, 2:9:2]
    return TimeSeries(t=data[:, 0], amps=amps, norm=data[:, 9], frame=frame)


def _load_config(args) -> RunConfig:
    values: dict = {}
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise ConfigError(
                f"unknown preset {args.preset!r}; available: {', '.join(sorted(PRESETS))}"
            )
        values.update(PRESETS[args.preset])
    if args.config is not None:
        values.update(parse_config_lines(Path(args.config).read_text(encoding="utf-8")))
    if not values:
        raise ConfigError("provide --preset and/or --config")
    for key in ("initial", "frame", "out"):
        override = getattr(args, key, None)
        if override is not None:
            values.update(parse_config_lines(f"{key} = {override}"))
    if getattr(args, "sample_dt", None) is not None:
        values["sample_dt"] = args.sample_dt
    return build_run_config(values)


def _resolve_duration(config: RunConfig) -> float:
    if config.duration is not None:
        return config.duration
    return calibrate_pi_duration(config.system, config.pulse(duration=0.0))


def _require(config: RunConfig, field: str):
    value = getattr(config, field)
    if value is None:
        raise ConfigError(f"missing required key {field!r} for this command")
    return value


def cmd_simulate(config: RunConfig) -> int:
    initial = initial_state(config)
    if initial is None:
        raise ConfigError("missing required key 'initial' for this command")
    sample_dt = _require(config, "sample_dt")
    out = _require(config, "out")
    duration = _resolve_duration(config)
    series = run_timeseries(
        config.system, config.pulse(duration), initial, sample_dt, frame=config.frame
    )
    write_timeseries_csv(series, out)
    print(f"simulate: {len(series)} rows ({config.frame} frame, duration {duration!r}) -> {out}")
    return 0


def _gate_report_lines(gate: np.ndarray) -> list[str]:
    lines = ["row,col,re,im"]
    for i, row in enumerate(BASIS_LABELS):
        for j, col in enumerate(BASIS_LABELS):
            lines.append(f"{row},{col},{_num(gate[i, j].real)},{_num(gate[i, j].imag)}")
    return lines


def cmd_tomography(config: RunConfig) -> int:
    out = _require(config, "out")
    duration = _resolve_duration(config)
    gate = tomography(config.system, config.pulse(duration), frame=config.frame)
    fid_cn = gate_fidelity(gate, cn_matrix())
    fid_icn = gate_fidelity(gate, 1j * cn_matrix())

    lines = [f"# gate reconstruction, frame={config.frame}, duration={duration!r}"]
    lines += _gate_report_lines(gate)
    lines.append(f"# fidelity_vs_cn = {fid_cn!r}")
    lines.append(f"# fidelity_vs_icn = {fid_icn!r}")

    status = 0
    try:
        phases = extract_gcn_phases(gate)
        for name in ("dphi00", "dphi01", "dphi10", "dphi11"):
            lines.append(f"# {name} = {getattr(phases, name)!r}")
        print(
            "tomography: gcn phases (rad) "
            f"dphi00={phases.dphi00:.6f} dphi01={phases.dphi01:.6f} "
            f"dphi10={phases.dphi10:.6f} dphi11={phases.dphi11:.6f}"
        )
    except GcnPatternError as exc:
        lines.append(f"# gcn_pattern_violation = {exc}")
        print(f"tomography: gate is not a conditional NOT: {exc}", file=sys.stderr)
        status = 1
    print(f"tomography: fidelity vs CN = {fid_cn:.6f}, vs i*CN = {fid_icn:.6f}")
    Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"tomography: report -> {out}")
    return status


def cmd_calibrate(config: RunConfig, args) -> int:
    if not (args.pi_duration or args.pure_cn):
        raise ConfigError("calibrate needs --pi-duration and/or --pure-cn")
    report_comments: list[str] = []
    tuned = config
    status = 0

    duration = _resolve_duration(config)
    if args.pi_duration:
        tuned = _replace_duration(tuned, duration)
        report_comments.append(f"# pi_duration = {duration!r}")
        transfer = _pi_transfer(config, duration)
        report_comments.append(f"# transfer_at_pi_duration = {transfer!r}")
        print(f"calibrate: pi-pulse duration = {duration!r} (transfer {transfer:.9f})")

    if args.pure_cn:
        free = tuple(name.strip() for name in args.free.split(",") if name.strip())
        spec = SearchSpec(
            free=free,
            rel_window=args.window,
            tie_a1=args.tie_a1,
            recalibrate_duration=args.recalibrate_duration,
            max_evaluations=args.max_evals,
            objective_tol=args.tol,
        )
        result = tune_pure_cn(config.system, config.pulse(duration), spec)
        tuned = RunConfig(
            system=result.params,
            carrier=tuned.carrier,
            a1=result.pulse.a1,
            a2=result.pulse.a2,
            duration=result.pulse.duration,
            initial=tuned.initial,
            frame=tuned.frame,
            sample_dt=tuned.sample_dt,
            out=tuned.out,
        )
        report_comments.append(f"# objective = {result.objective!r}")
        report_comments.append(f"# converged = {str(result.converged).lower()}")
        report_comments.append(f"# evaluations = {result.evaluations}")
        print(
            f"calibrate: pure-cn search over {', '.join(free)}: "
            f"objective {result.objective:.3e} after {result.evaluations} evaluations "
            f"({'converged' if result.converged else 'NOT converged'})"
        )
        if not result.converged:
            status = 1

    report = emit_config(tuned) + "\n".join(report_comments)
    if report_comments:
        report += "\n"
    if config.out is not None:
        Path(config.out).write_text(report, encoding="utf-8")
        print(f"calibrate: tuned parameters -> {config.out}")
    else:
        print(report, end="")
    return status


def _pi_transfer(config: RunConfig, duration: float) -> float:
    from .propagator import build_generator, evolve_exact

    gen = build_generator(config.system, config.pulse(duration))
    return abs(evolve_exact(digital_state("11"), gen, duration).c10) ** 2


def _replace_duration(config: RunConfig, duration: float) -> RunConfig:
    return RunConfig(
        system=config.system,
        carrier=config.carrier,
        a1=config.a1,
        a2=config.a2,
        duration=duration,
        initial=config.initial,
        frame=config.frame,
        sample_dt=config.sample_dt,
        out=config.out,
    )


_SWEEPABLE = ("omega1", "a1", "a2", "duration")


def cmd_sweep(config: RunConfig, args) -> int:
    if args.param not in _SWEEPABLE:
        raise ConfigError(
            f"sweep parameter must be one of {', '.join(_SWEEPABLE)} "
            f"(omega2 and coupling_j would move the resonance itself)"
        )
    if args.steps < 2 or not args.min < args.max:
        raise ConfigError("sweep needs --min < --max and --steps >= 2")
    out = _require(config, "out")
    grid = np.linspace(args.min, args.max, args.steps)
    lines = [f"index,{args.param},objective"]
    for index, value in enumerate(grid):
        value = float(value)
        system = config.system
        a1, a2 = config.a1, config.a2
        if args.param == "omega1":
            system = SystemParams(value, system.omega2, system.coupling_j)
        elif args.param == "a1":
            a1 = value
        elif args.param == "a2":
            a2 = value
        if args.param == "duration":
            duration = value
        elif config.duration is not None:
            duration = config.duration
        else:
            template = PulseSpec(carrier=config.carrier, a1=a1, a2=a2, duration=0.0)
            duration = calibrate_pi_duration(system, template)
        pulse = PulseSpec(carrier=config.carrier, a1=a1, a2=a2, duration=duration)
        objective = pure_cn_objective(system, pulse)
        lines.append(f"{index},{_num(value)},{_num(objective)}")
    Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"sweep: {args.steps} points over {args.param} -> {out}")
    return 0


def _add_common(parser: argparse.ArgumentParser, with_initial: bool = True):
    parser.add_argument("--config", help="path to a key = value config file")
    parser.add_argument("--preset", help=f"named parameter set ({', '.join(sorted(PRESETS))})")
    parser.add_argument("--frame", choices=("raw", "primed"), help="amplitude frame")
    parser.add_argument("--out", help="output path")
    if with_initial:
        parser.add_argument("--initial", help="digital:<ik>, eq21, or 4 complex amplitudes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spingate",
        description="Two-spin Ising controlled-NOT pulse simulator and calibrator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="sample amplitude evolution to CSV")
    _add_common(p_sim)
    p_sim.add_argument("--sample-dt", dest="sample_dt", type=float, help="sampling step")

    p_tomo = sub.add_parser("tomography", help="reconstruct the gate and extract phases")
    _add_common(p_tomo, with_initial=False)

    p_cal = sub.add_parser("calibrate", help="pi-pulse timing and pure-CN parameter search")
    _add_common(p_cal, with_initial=False)
    p_cal.add_argument("--pi-duration", action="store_true", help="calibrate pi-pulse duration")
    p_cal.add_argument("--pure-cn", action="store_true", help="run the pure-CN search")
    p_cal.add_argument(
        "--free",
        default="omega1,a2,duration",
        help="comma-separated free parameters (omega1, a2, duration)",
    )
    p_cal.add_argument("--tie-a1", action="store_true", help="tie a1 = a2*omega1/omega2")
    p_cal.add_argument(
        "--recalibrate-duration",
        action="store_true",
        help="re-run pi timing at every candidate when duration is not free",
    )
    p_cal.add_argument("--window", type=float, default=0.005, help="relative search window")
    p_cal.add_argument("--max-evals", type=int, default=2000, help="objective evaluation budget")
    p_cal.add_argument("--tol", type=float, default=1e-6, help="objective convergence tolerance")

    p_sweep = sub.add_parser("sweep", help="grid scan of the pure-CN objective")
    _add_common(p_sweep, with_initial=False)
    p_sweep.add_argument("--param", required=True, help=f"one of {', '.join(_SWEEPABLE)}")
    p_sweep.add_argument("--min", type=float, required=True)
    p_sweep.add_argument("--max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, default=21)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        if args.command == "simulate":
            return cmd_simulate(config)
        if args.command == "tomography":
            return cmd_tomography(config)
        if args.command == "calibrate":
            return cmd_calibrate(config, args)
        return cmd_sweep(config, args)
    except (ConfigError, ResonanceError, CalibrationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
