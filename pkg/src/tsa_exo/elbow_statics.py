"""Static torque and force chain for the elbow joint.

Holding a forearm of mass ``m`` with its centre of mass a distance ``d``
from the elbow pivot takes a joint torque ``tau = m g d``. The joint is
driven through a yoke: strings pull on a pin of radius ``r_p`` at an
inclination ``beta`` from the pin's tangent plane, so the tangential
component of the string force is what produces torque. With ``n`` strings
sharing the load and a dimensionless lever factor ``l`` for the linkage,

    F_t = m g d cos(beta) / (r_p * l * n)      tangential pin force
    F_m = F_t / sin(beta)                      force along the string (yoke force)

``lever_factor`` and ``string_count`` have provisional semantics; the
defaults (1.0 and 2) describe the reference build and are exposed as plain
configuration values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

STANDARD_GRAVITY = 9.81  # m/s^2

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class ForearmLoad:
    """Forearm mass and where it hangs relative to the elbow pivot."""

    mass: float  # kg
    com_distance: float  # m, pivot to centre of mass
    gravity: float = STANDARD_GRAVITY  # m/s^2

    def __post_init__(self) -> None:
        if self.mass < 0.0:
            raise DomainError(f"mass must be non-negative, got {self.mass!r}")
        if not self.com_distance > 0.0:
            raise DomainError(
                f"com_distance must be positive, got {self.com_distance!r}"
            )
        if not self.gravity > 0.0:
            raise DomainError(f"gravity must be positive, got {self.gravity!r}")


@dataclass(frozen=True)
class LinkageGeometry:
    """Yoke/pin geometry between the strings and the joint.

    ``beta`` is the string inclination in radians and has no default; it is
    a free design choice that every force result depends on.
    """

    beta: float  # rad, 0 < beta < pi/2
    pin_radius: float  # m
    lever_factor: float = 1.0  # dimensionless, provisional
    string_count: int = 2  # strings sharing the load, provisional

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < _HALF_PI:
            raise DomainError(
                f"beta must lie strictly between 0 and pi/2 rad, got {self.beta!r}"
            )
        if not self.pin_radius > 0.0:
            raise DomainError(f"pin_radius must be positive, got {self.pin_radius!r}")
        if not self.lever_factor > 0.0:
            raise DomainError(
                f"lever_factor must be positive, got {self.lever_factor!r}"
            )
        if self.string_count < 1:
            raise DomainError(
                f"string_count must be at least 1, got {self.string_count!r}"
            )


def gravity_torque(load: ForearmLoad) -> float:
    """Joint torque needed to hold the forearm level: m * g * d [N*m]."""
    return load.mass * load.gravity * load.com_distance


def tangential_pin_force(load: ForearmLoad, geometry: LinkageGeometry) -> float:
    """Tangential force at the yoke pin that balances the gravity torque [N]."""
    return (
        gravity_torque(load)
        * math.cos(geometry.beta)
        / (geometry.pin_radius * geometry.lever_factor * geometry.string_count)
    )


def yoke_force(tangential_force: float, beta: float) -> float:
    """String-axis force whose tangential component is ``tangential_force`` [N].

    ``beta`` may equal pi/2 here (strings pulling straight along the
    tangent), unlike the linkage dataclass which keeps the open interval.
    """
    if tangential_force < 0.0:
        raise DomainError(
            f"tangential force must be non-negative, got {tangential_force!r}"
        )
    if not 0.0 < beta <= _HALF_PI:
        raise DomainError(f"beta must lie in (0, pi/2] rad, got {beta!r}")
    return tangential_force / math.sin(beta)


def string_force(load: ForearmLoad, geometry: LinkageGeometry) -> float:
    """Full chain: gravity torque -> tangential pin force -> yoke force [N]."""
    return yoke_force(tangential_pin_force(load, geometry), geometry.beta)


def required_torque_curve(
    mass_min: float, mass_max: float, steps: int, load: ForearmLoad
) -> tuple[np.ndarray, np.ndarray]:
    """Holding torque over an inclusive range of forearm masses.

    Returns ``(masses, torques)`` with ``steps`` points from ``mass_min``
    to ``mass_max``; each torque equals ``gravity_torque`` for that mass
    with the distance and gravity taken from ``load``.
    """
    if mass_min < 0.0:
        raise DomainError(f"mass_min must be non-negative, got {mass_min!r}")
    if not mass_max > mass_min:
        raise DomainError(
            f"mass_max must exceed mass_min, got [{mass_min!r}, {mass_max!r}]"
        )
    if steps < 2:
        raise DomainError(f"steps must be at least 2, got {steps!r}")
    masses = np.linspace(mass_min, mass_max, steps)
    # Same association as gravity_torque: (m * g) * d, so rows match the
    # scalar function exactly.
    torques = masses * load.gravity * load.com_distance
    return masses, torques
