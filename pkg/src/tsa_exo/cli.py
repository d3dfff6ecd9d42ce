"""Command-line front end.

Subcommands: ``statics`` (torque/force chain), ``sweep`` (torque-vs-mass
CSV), ``tsa`` (string transmission at an operating point), ``simulate``
(controller trace CSV), ``select-motor`` (catalog sizing). Reports print
numbers to 6 significant digits with units; CSV files carry full-precision
values. Errors exit nonzero with ``error[<category>]: <message>`` on
stderr.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Sequence

from .command_link import load_event_script
from .config import ProjectConfig, config_warnings, load_config
from .controller_sim import run, write_trace_csv
from .elbow_statics import (
    gravity_torque,
    required_torque_curve,
    tangential_pin_force,
    yoke_force,
)
from .errors import TsaExoError
from .motor_model import BUILTIN_CATALOG, load_motor_catalog, select_motor
from .tsa_kinematics import (
    contracted_length,
    helix_angle,
    transmission_ratio,
    twist_for_contraction,
)

# Figures the reference design reports for its own build; printed alongside
# computed values, never substituted for them (see docs/golden_notes.md).
_REPORTED_HOLDING_TORQUE_NM = 2.77
_REPORTED_CONTRACTION_M = 0.033
_REPORTED_TWIST_DEG = 69.7


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsa-exo",
        description=(
            "Design analysis and controller simulation for a twisted-string-"
            "actuated elbow exoskeleton."
        ),
    )
    parser.add_argument(
        "--config",
        metavar="PATH",
        default=None,
        help="JSON config file merged over built-in defaults",
    )
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key, e.g. --set linkage.beta_deg=60",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    statics = sub.add_parser(
        "statics", help="gravity torque and the pin/yoke force chain"
    )
    statics.add_argument(
        "--beta-deg",
        type=float,
        default=None,
        help="string inclination in degrees (shortcut for "
        "--set linkage.beta_deg=...)",
    )

    sweep = sub.add_parser("sweep", help="torque-vs-mass table as CSV")
    sweep.add_argument("--mass-min", type=float, default=1.5, help="kg")
    sweep.add_argument("--mass-max", type=float, default=3.0, help="kg")
    sweep.add_argument("--steps", type=int, default=16, help="rows, endpoints inclusive")
    sweep.add_argument("--out", required=True, metavar="PATH", help="output CSV")

    tsa = sub.add_parser(
        "tsa", help="string transmission at one operating point"
    )
    point = tsa.add_mutually_exclusive_group(required=True)
    point.add_argument("--theta-rad", type=float, help="twist angle [rad]")
    point.add_argument("--theta-deg", type=float, help="twist angle [deg]")
    point.add_argument(
        "--contraction-m", type=float, help="target contracted length [m]"
    )

    simulate = sub.add_parser("simulate", help="run the controller, write a trace")
    simulate.add_argument(
        "--events",
        required=True,
        metavar="PATH",
        help="event script ('-' reads stdin): '<time_s> <request>' per line",
    )
    simulate.add_argument("--out", required=True, metavar="PATH", help="trace CSV")

    select = sub.add_parser("select-motor", help="pick the smallest adequate motor")
    select.add_argument(
        "--required-torque-nm",
        type=float,
        default=None,
        help="torque to cover; defaults to the configured forearm's "
        "gravity torque",
    )
    select.add_argument(
        "--catalog",
        metavar="PATH",
        default=None,
        help="JSON motor catalog; defaults to the built-in illustrative one",
    )
    return parser


def _cmd_statics(config: ProjectConfig) -> int:
    load = config.forearm
    torque = gravity_torque(load)
    print(f"forearm mass: {_fmt(load.mass)} kg")
    print(f"centre-of-mass distance: {_fmt(load.com_distance)} m")
    print(f"gravity torque: {_fmt(torque)} Nm")
    print(
        f"  note: the reference design reports "
        f"{_fmt(_REPORTED_HOLDING_TORQUE_NM)} Nm for its 2.5 kg load case; "
        f"mass*gravity*distance gives 2.4525 Nm (see docs/golden_notes.md)"
    )
    linkage = config.linkage()
    tangential = tangential_pin_force(load, linkage)
    string_force = yoke_force(tangential, linkage.beta)
    print(f"string inclination beta: {_fmt(math.degrees(linkage.beta))} deg")
    print(f"tangential pin force: {_fmt(tangential)} N")
    print(f"yoke string force: {_fmt(string_force)} N")
    return 0


def _cmd_sweep(config: ProjectConfig, args: argparse.Namespace) -> int:
    masses, torques = required_torque_curve(
        args.mass_min, args.mass_max, args.steps, config.forearm
    )
    lines = ["mass_kg,required_torque_nm"]
    for mass, torque in zip(masses, torques):
        lines.append(f"{float(mass)!r},{float(torque)!r}")
    _atomic_write_text(Path(args.out), "\n".join(lines) + "\n")
    print(
        f"sweep written: {args.out} ({len(masses)} rows, torque "
        f"{_fmt(float(torques[0]))} -> {_fmt(float(torques[-1]))} Nm)"
    )
    return 0


def _cmd_tsa(config: ProjectConfig, args: argparse.Namespace) -> int:
    spec = config.string
    if args.contraction_m is not None:
        theta = twist_for_contraction(spec, args.contraction_m)
    elif args.theta_deg is not None:
        theta = math.radians(args.theta_deg)
    else:
        theta = args.theta_rad
    contracted = contracted_length(spec, theta)
    alpha = helix_angle(spec, contracted)
    print(f"twist angle: {_fmt(theta)} rad ({_fmt(math.degrees(theta))} deg)")
    print(f"contracted length: {_fmt(contracted)} m")
    print(f"helix angle: {_fmt(alpha)} rad ({_fmt(math.degrees(alpha))} deg)")
    if theta > 0.0:
        ratio = transmission_ratio(spec, theta)
        print(
            f"transmission ratio (pull force per unit motor torque): "
            f"{_fmt(ratio)} N/Nm"
        )
    else:
        print("transmission ratio: singular at zero twist")
    print(
        f"  note: the reference design reports both a contraction of "
        f"{_fmt(_REPORTED_CONTRACTION_M)} m and a twist of "
        f"{_fmt(_REPORTED_TWIST_DEG)} deg; those two figures are mutually "
        f"inconsistent under the contraction formula (see docs/golden_notes.md)"
    )
    return 0


def _cmd_simulate(config: ProjectConfig, args: argparse.Namespace) -> int:
    events = load_event_script(args.events)
    trace = run(config.controller, events, config.plant())
    write_trace_csv(trace, args.out)
    cycles = trace.cycles_completed
    plural = "s" if cycles != 1 else ""
    print(f"trace written: {args.out} ({len(trace)} rows)")
    print(
        f"{cycles} cycle{plural}, stopped at {trace.stop_time_s:.2f} s, "
        f"reason: {trace.stop_reason}"
    )
    return 0


def _cmd_select_motor(config: ProjectConfig, args: argparse.Namespace) -> int:
    if args.catalog is not None:
        catalog = load_motor_catalog(args.catalog)
    else:
        catalog = list(BUILTIN_CATALOG)
    if args.required_torque_nm is not None:
        required = args.required_torque_nm
    else:
        required = gravity_torque(config.forearm)
    motor = select_motor(catalog, required)
    print(f"required torque: {_fmt(required)} Nm")
    print(
        f"selected motor: {motor.name} (rated {_fmt(motor.rated_torque)} Nm, "
        f"{_fmt(motor.rated_power)} W, {_fmt(motor.supply_voltage)} V)"
    )
    print(f"margin: {_fmt(motor.rated_torque - required)} Nm")
    return 0


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = list(args.overrides)
    if args.subcommand == "statics" and args.beta_deg is not None:
        overrides.append(f"linkage.beta_deg={args.beta_deg!r}")
    try:
        config = load_config(args.config, overrides)
        for warning in config_warnings(config):
            print(f"warning: {warning}", file=sys.stderr)
        if args.subcommand == "statics":
            return _cmd_statics(config)
        if args.subcommand == "sweep":
            return _cmd_sweep(config, args)
        if args.subcommand == "tsa":
            return _cmd_tsa(config, args)
        if args.subcommand == "simulate":
            return _cmd_simulate(config, args)
        return _cmd_select_motor(config, args)
    except TsaExoError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
