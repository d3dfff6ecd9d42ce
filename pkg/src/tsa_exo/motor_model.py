"""Gear-motor ratings, catalog selection, and the incremental encoder.

A motor's usable torque at speed ``omega`` is bounded by its rated power:
``tau = P / omega``. Catalog selection picks the smallest motor whose rated
torque covers the requirement. The encoder model is ideal: pulses arrive at
``ppr * gear_ratio`` per output-shaft revolution and the accumulated count
after spinning at a constant speed is the rounded pulse total, with
round-half-to-even on exact half pulses.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import ConfigError, DomainError, NoFeasibleMotorError

_RATING_SLACK = 1e-9  # relative slack for torque*speed <= power


@dataclass(frozen=True)
class MotorSpec:
    """Ratings of one gear motor (output-shaft quantities)."""

    name: str
    rated_power: float  # W
    rated_speed: float  # rad/s
    rated_torque: float  # N*m
    supply_voltage: float  # V
    encoder_ppr: int  # pulses per motor-shaft revolution
    gear_ratio: float = 1.0  # output revolutions count gear_ratio * ppr pulses

    def __post_init__(self) -> None:
        for field_name in (
            "rated_power",
            "rated_speed",
            "rated_torque",
            "supply_voltage",
            "gear_ratio",
        ):
            value = getattr(self, field_name)
            if not value > 0.0:
                raise DomainError(f"{field_name} must be positive, got {value!r}")
        if self.encoder_ppr < 1:
            raise DomainError(
                f"encoder_ppr must be a positive integer, got {self.encoder_ppr!r}"
            )
        budget = self.rated_power * (1.0 + _RATING_SLACK)
        if self.rated_torque * self.rated_speed > budget:
            raise DomainError(
                f"motor {self.name!r}: rated torque x speed "
                f"({self.rated_torque * self.rated_speed:.6g} W) exceeds rated "
                f"power ({self.rated_power:.6g} W)"
            )


@dataclass(frozen=True)
class EncoderState:
    """Accumulated pulse count and current spin direction (+1 or -1)."""

    count: int
    direction: int

    def __post_init__(self) -> None:
        if self.direction not in (-1, 1):
            raise DomainError(f"direction must be +1 or -1, got {self.direction!r}")


# Illustrative sizing entries for the default catalog; ratings are
# self-consistent (torque x speed <= power) but are not vendor data.
BUILTIN_CATALOG: tuple[MotorSpec, ...] = (
    MotorSpec(
        name="GM25-370",
        rated_power=9.0,
        rated_speed=4.0,
        rated_torque=2.0,
        supply_voltage=12.0,
        encoder_ppr=11,
    ),
    MotorSpec(
        name="GM37-520",
        rated_power=12.0,
        rated_speed=3.5,
        rated_torque=3.0,
        supply_voltage=12.0,
        encoder_ppr=11,
    ),
    MotorSpec(
        name="GM45-775",
        rated_power=20.0,
        rated_speed=3.5,
        rated_torque=5.0,
        supply_voltage=12.0,
        encoder_ppr=11,
    ),
)


def torque_from_power(power: float, speed: float) -> float:
    """Available torque at ``speed`` rad/s given ``power`` watts [N*m]."""
    if power < 0.0:
        raise DomainError(f"power must be non-negative, got {power!r}")
    if not speed > 0.0:
        raise DomainError(f"speed must be strictly positive, got {speed!r}")
    return power / speed


def select_motor(catalog: Sequence[MotorSpec], required_torque: float) -> MotorSpec:
    """Smallest adequate motor for ``required_torque`` newton metres.

    Feasible motors have ``rated_torque >= required_torque``; among them the
    lowest rated torque wins, with rated power and then name as tiebreakers.
    """
    if not catalog:
        raise DomainError("motor catalog is empty")
    if required_torque < 0.0:
        raise DomainError(
            f"required torque must be non-negative, got {required_torque!r}"
        )
    feasible = [m for m in catalog if m.rated_torque >= required_torque]
    if not feasible:
        raise NoFeasibleMotorError(
            f"no motor in the catalog reaches {required_torque:.6g} N*m "
            f"(best is {max(m.rated_torque for m in catalog):.6g} N*m)"
        )
    return min(feasible, key=lambda m: (m.rated_torque, m.rated_power, m.name))


def encoder_count(
    speed: float, duration: float, ppr: int, gear_ratio: float = 1.0
) -> int:
    """Signed pulse count after ``duration`` seconds at constant ``speed``.

    ``speed`` is the output-shaft angular velocity in rad/s and may be
    negative; the count is symmetric in sign. Exact half pulses round to
    even, matching the array path used by the simulator.
    """
    if duration < 0.0:
        raise DomainError(f"duration must be non-negative, got {duration!r}")
    if ppr < 1:
        raise DomainError(f"ppr must be a positive integer, got {ppr!r}")
    if not gear_ratio > 0.0:
        raise DomainError(f"gear_ratio must be positive, got {gear_ratio!r}")
    pulses = speed * duration / (2.0 * math.pi) * ppr * gear_ratio
    return round(pulses)


def encoder_state(
    speed: float, duration: float, ppr: int, gear_ratio: float = 1.0
) -> EncoderState:
    """Encoder count plus direction flag for a constant-speed spin."""
    if speed == 0.0:
        raise DomainError("direction is undefined at zero speed")
    return EncoderState(
        count=encoder_count(speed, duration, ppr, gear_ratio),
        direction=1 if speed > 0.0 else -1,
    )


def load_motor_catalog(path: str | Path) -> list[MotorSpec]:
    """Read a JSON motor catalog: a list of rating records.

    Each record carries ``name``, ``rated_power_w``, ``rated_speed_rad_s``,
    ``rated_torque_nm``, ``voltage_v``, ``ppr`` and optionally
    ``gear_ratio``.
    """
    try:
        records = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"motor catalog {path}: invalid JSON ({exc})") from None
    if not isinstance(records, list):
        raise ConfigError(f"motor catalog {path}: expected a JSON list of records")
    return [_record_to_spec(rec, i, path) for i, rec in enumerate(records)]


_RECORD_KEYS = {
    "name",
    "rated_power_w",
    "rated_speed_rad_s",
    "rated_torque_nm",
    "voltage_v",
    "ppr",
    "gear_ratio",
}


def _record_to_spec(record: object, index: int, path: str | Path) -> MotorSpec:
    where = f"motor catalog {path}, entry {index}"
    if not isinstance(record, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(record) - _RECORD_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    try:
        return MotorSpec(
            name=str(record["name"]),
            rated_power=float(record["rated_power_w"]),
            rated_speed=float(record["rated_speed_rad_s"]),
            rated_torque=float(record["rated_torque_nm"]),
            supply_voltage=float(record["voltage_v"]),
            encoder_ppr=int(record["ppr"]),
            gear_ratio=float(record.get("gear_ratio", 1.0)),
        )
    except KeyError as exc:
        raise ConfigError(f"{where}: missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise ConfigError(f"{where}: {exc}") from None
        raise ConfigError(f"{where}: bad value ({exc})") from None
