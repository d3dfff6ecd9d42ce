"""Project configuration: defaults, JSON file loading, dotted overrides.

One nested key tree drives every CLI command. Built-in defaults describe
the reference device; a JSON config file (``--config``) deep-merges over
them, and ``--set section.key=value`` overrides win over both. Unknown keys
are rejected rather than ignored so typos cannot silently fall back to
defaults.

``linkage.beta_deg`` (the string inclination) deliberately has no default:
every force result depends on it and inventing a value would produce
confident nonsense. Commands that need it raise a missing-parameter error
naming the key.
"""
from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .controller_sim import ControllerConfig, Plant
from .elbow_statics import ForearmLoad, LinkageGeometry, gravity_torque
from .errors import ConfigError, DomainError, MissingParameterError
from .motor_model import MotorSpec
from .tsa_kinematics import StringSpec

DEFAULTS: dict[str, dict[str, Any]] = {
    "forearm": {
        "mass_kg": 2.5,
        "com_distance_m": 0.1,
        "gravity": 9.81,
    },
    "string": {
        "length_m": 0.035,
        "radius_m": 0.001,
    },
    "linkage": {
        "beta_deg": None,  # no default on purpose; see module docstring
        "pin_radius_m": 0.01,  # provisional
        "lever_l": 1.0,  # provisional
        "n_strings": 2,  # provisional
    },
    "motor": {
        "name": "GM37-520",
        "rated_power_w": 12.0,
        "rated_speed_rad_s": 3.5,
        "rated_torque_nm": 3.0,
        "voltage_v": 12.0,
        "ppr": 11,
        "gear_ratio": 1.0,
    },
    "controller": {
        "cw_s": 3.0,
        "ccw_s": 3.0,
        "pause_s": 5.0,
        "max_cycles": 5,
        # Illustrative speed: three full turns per 3 s phase, so the default
        # encoder trace peaks at a round +33 pulses.
        "motor_speed_rad_s": 2.0 * math.pi,
        "joint_limit_deg": 50.0,
    },
    "sim": {
        "dt_s": 0.01,
    },
}


@dataclass(frozen=True)
class ProjectConfig:
    """Typed view of one merged configuration tree."""

    forearm: ForearmLoad
    string: StringSpec
    motor: MotorSpec
    controller: ControllerConfig
    beta: float | None  # rad, None until configured
    pin_radius: float  # m
    lever_factor: float
    string_count: int

    def linkage(self) -> LinkageGeometry:
        """Yoke geometry; fails while ``linkage.beta_deg`` is unset."""
        if self.beta is None:
            raise MissingParameterError(
                "linkage.beta_deg is required for force computations and has "
                "no default; pass --set linkage.beta_deg=<degrees> or put it "
                "in the config file"
            )
        return LinkageGeometry(
            beta=self.beta,
            pin_radius=self.pin_radius,
            lever_factor=self.lever_factor,
            string_count=self.string_count,
        )

    def plant(self) -> Plant:
        """Physical constants the simulator needs."""
        return Plant(
            string=self.string,
            pin_radius=self.pin_radius,
            encoder_ppr=self.motor.encoder_ppr,
            gear_ratio=self.motor.gear_ratio,
        )


def _merge_tree(base: dict, incoming: dict, path: str) -> None:
    for key, value in incoming.items():
        here = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config key: {here}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config section {here} must be an object")
            _merge_tree(base[key], value, here)
        else:
            if isinstance(value, dict):
                raise ConfigError(f"config key {here} takes a value, not an object")
            base[key] = value


def _apply_override(tree: dict, text: str) -> None:
    key_path, sep, raw_value = text.partition("=")
    if not sep or not key_path.strip():
        raise ConfigError(
            f"override must look like section.key=value, got {text!r}"
        )
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value  # bare strings (e.g. motor names) pass through
    node: Any = tree
    parts = key_path.strip().split(".")
    for i, part in enumerate(parts[:-1]):
        if not isinstance(node, dict) or part not in node:
            raise ConfigError(f"unknown config key: {'.'.join(parts[: i + 1])}")
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ConfigError(f"unknown config key: {key_path.strip()}")
    if isinstance(node[leaf], dict):
        raise ConfigError(f"config key {key_path.strip()} names a section")
    node[leaf] = value


def merged_tree(
    config_path: str | Path | None = None, overrides: Sequence[str] = ()
) -> dict:
    """Defaults, then the config file, then dotted overrides; returns the tree."""
    tree = copy.deepcopy(DEFAULTS)
    if config_path is not None:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {config_path}: invalid JSON ({exc})")
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file {config_path}: expected a JSON object")
        _merge_tree(tree, loaded, "")
    for text in overrides:
        _apply_override(tree, text)
    return tree


def _number(tree: dict, section: str, key: str) -> float:
    value = tree[section][key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config key {section}.{key} must be a number, got {value!r}")
    return float(value)


def _integer(tree: dict, section: str, key: str) -> int:
    value = tree[section][key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(
            f"config key {section}.{key} must be an integer, got {value!r}"
        )
    return value


def from_tree(tree: dict) -> ProjectConfig:
    """Build the typed config, converting units at the boundary (deg -> rad)."""
    beta_deg = tree["linkage"]["beta_deg"]
    if beta_deg is not None and (
        isinstance(beta_deg, bool) or not isinstance(beta_deg, (int, float))
    ):
        raise ConfigError(
            f"config key linkage.beta_deg must be a number or null, got {beta_deg!r}"
        )
    name = tree["motor"]["name"]
    if not isinstance(name, str):
        raise ConfigError(f"config key motor.name must be a string, got {name!r}")
    try:
        forearm = ForearmLoad(
            mass=_number(tree, "forearm", "mass_kg"),
            com_distance=_number(tree, "forearm", "com_distance_m"),
            gravity=_number(tree, "forearm", "gravity"),
        )
        string = StringSpec(
            untwisted_length=_number(tree, "string", "length_m"),
            radius=_number(tree, "string", "radius_m"),
        )
        motor = MotorSpec(
            name=name,
            rated_power=_number(tree, "motor", "rated_power_w"),
            rated_speed=_number(tree, "motor", "rated_speed_rad_s"),
            rated_torque=_number(tree, "motor", "rated_torque_nm"),
            supply_voltage=_number(tree, "motor", "voltage_v"),
            encoder_ppr=_integer(tree, "motor", "ppr"),
            gear_ratio=_number(tree, "motor", "gear_ratio"),
        )
        controller = ControllerConfig(
            motor_speed=_number(tree, "controller", "motor_speed_rad_s"),
            cw_duration=_number(tree, "controller", "cw_s"),
            ccw_duration=_number(tree, "controller", "ccw_s"),
            pause_duration=_number(tree, "controller", "pause_s"),
            max_cycles=_integer(tree, "controller", "max_cycles"),
            time_step=_number(tree, "sim", "dt_s"),
            joint_limit_deg=_number(tree, "controller", "joint_limit_deg"),
        )
        pin_radius = _number(tree, "linkage", "pin_radius_m")
        lever_factor = _number(tree, "linkage", "lever_l")
        string_count = _integer(tree, "linkage", "n_strings")
        beta = None if beta_deg is None else math.radians(float(beta_deg))
        if beta is not None:
            # Validate eagerly so a bad beta fails at load time, not later.
            LinkageGeometry(
                beta=beta,
                pin_radius=pin_radius,
                lever_factor=lever_factor,
                string_count=string_count,
            )
        else:
            LinkageGeometry(
                beta=math.pi / 4.0,  # placeholder solely to validate the rest
                pin_radius=pin_radius,
                lever_factor=lever_factor,
                string_count=string_count,
            )
    except DomainError as exc:
        raise ConfigError(f"config value rejected: {exc}") from None
    return ProjectConfig(
        forearm=forearm,
        string=string,
        motor=motor,
        controller=controller,
        beta=beta,
        pin_radius=pin_radius,
        lever_factor=lever_factor,
        string_count=string_count,
    )


def load_config(
    config_path: str | Path | None = None, overrides: Sequence[str] = ()
) -> ProjectConfig:
    """One-call path from files/flags to a typed :class:`ProjectConfig`."""
    return from_tree(merged_tree(config_path, overrides))


def config_warnings(config: ProjectConfig) -> list[str]:
    """Cross-checks that deserve a note but should not block a run."""
    warnings: list[str] = []
    needed = gravity_torque(config.forearm)
    if config.motor.rated_torque < needed:
        warnings.append(
            f"motor {config.motor.name} rated torque "
            f"{config.motor.rated_torque:.6g} Nm is below the gravity holding "
            f"torque {needed:.6g} Nm for the configured forearm"
        )
    return warnings
