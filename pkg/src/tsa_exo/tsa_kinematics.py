"""Twisted-string transmission geometry and the torque/force relation.

A pair of strings of untwisted length ``L`` is attached between a motor
shaft and a load. Twisting the pair by a motor angle ``theta`` (cumulative
radians, so values beyond one turn are normal) wraps the strings into a
helix of effective radius ``r`` and shortens the pair to

    X(theta) = sqrt(L^2 - theta^2 r^2) = L cos(alpha)

where ``alpha`` is the helix angle. Holding a pull force ``F`` along the
string axis at twist ``theta`` requires a motor torque

    tau(theta, F) = F * theta * r^2 / sqrt(L^2 - theta^2 r^2)

which is zero at zero twist and grows without bound as ``theta`` approaches
the geometric limit ``L / r`` (the string fully wound onto the helix).
All angles are radians, lengths metres, forces newtons, torques newton
metres.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Bisection bracket margin and convergence tolerance for solve_twist_angle.
_BRACKET_MARGIN = 1e-12  # fraction of the twist limit excluded at each end
_ANGLE_TOL = 1e-10  # rad
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class StringSpec:
    """Geometry of one twisted-string pair.

    Attributes:
        untwisted_length: string length at zero twist [m].
        radius: effective helix radius, roughly the single-string radius [m].
    """

    untwisted_length: float
    radius: float

    def __post_init__(self) -> None:
        if not self.untwisted_length > 0.0:
            raise DomainError(
                f"untwisted_length must be positive, got {self.untwisted_length!r}"
            )
        if not self.radius > 0.0:
            raise DomainError(f"radius must be positive, got {self.radius!r}")
        if not self.radius < self.untwisted_length:
            raise DomainError(
                f"radius ({self.radius!r} m) must be smaller than the string "
                f"length ({self.untwisted_length!r} m)"
            )

    @property
    def max_twist(self) -> float:
        """Twist angle at which the string would be fully consumed [rad]."""
        return self.untwisted_length / self.radius


_HELIX_IDENTITY_TOL = 1e-12  # relative, for contracted = L * cos(helix)


@dataclass(frozen=True)
class TwistState:
    """A string pair at a given cumulative twist angle.

    The three quantities are mutually consistent: the contracted length is
    what the twist produces, and equals ``untwisted_length * cos(helix_angle)``.
    Build instances with :func:`twist_state` rather than by hand.
    """

    spec: StringSpec
    twist_angle: float  # rad
    contracted_length: float  # m
    helix_angle: float  # rad

    def __post_init__(self) -> None:
        if not 0.0 <= self.twist_angle < self.spec.max_twist:
            raise DomainError(
                f"twist_angle must lie in [0, {self.spec.max_twist:g}) rad, "
                f"got {self.twist_angle!r}"
            )
        length = self.spec.untwisted_length
        if not 0.0 < self.contracted_length <= length:
            raise DomainError(
                f"contracted_length must lie in (0, {length:g}] m, "
                f"got {self.contracted_length!r}"
            )
        if not 0.0 <= self.helix_angle < math.pi / 2.0:
            raise DomainError(
                f"helix_angle must lie in [0, pi/2) rad, got {self.helix_angle!r}"
            )
        expected = length * math.cos(self.helix_angle)
        if abs(self.contracted_length - expected) > _HELIX_IDENTITY_TOL * length:
            raise DomainError(
                f"inconsistent state: contracted_length {self.contracted_length!r} "
                f"does not match L*cos(helix_angle) = {expected!r}"
            )


def twist_state(spec: StringSpec, twist_angle: float) -> TwistState:
    """Build a consistent TwistState for ``twist_angle`` radians of twist."""
    contracted = contracted_length(spec, twist_angle)
    return TwistState(spec, twist_angle, contracted, helix_angle(spec, contracted))


def _check_twist(spec: StringSpec, theta: float) -> None:
    if theta < 0.0:
        raise DomainError(f"twist angle must be non-negative, got {theta!r}")
    if theta * spec.radius >= spec.untwisted_length:
        raise DomainError(
            f"twist angle {theta:g} rad is at or past the geometric limit "
            f"{spec.max_twist:g} rad"
        )


def contracted_length(spec: StringSpec, theta: float) -> float:
    """Length of the twisted pair at twist ``theta`` [m].

    Strictly decreasing in ``theta``; equals the untwisted length at zero.
    """
    _check_twist(spec, theta)
    length = spec.untwisted_length
    radius = spec.radius
    # Same expression order as the array kernels so results match bitwise.
    return math.sqrt(length * length - theta * theta * radius * radius)


def twist_for_contraction(spec: StringSpec, target_length: float) -> float:
    """Twist angle that contracts the pair to ``target_length`` [rad].

    Inverse of :func:`contracted_length`. ``target_length`` must lie in
    ``(0, untwisted_length]``.
    """
    length = spec.untwisted_length
    if not 0.0 < target_length <= length:
        raise DomainError(
            f"target length must lie in (0, {length:g}] m, got {target_length!r}"
        )
    # Factored form keeps the subtraction well conditioned near zero twist.
    return math.sqrt((length - target_length) * (length + target_length)) / spec.radius


def helix_angle(spec: StringSpec, contracted: float) -> float:
    """Helix angle alpha of the wound string, from X = L cos(alpha) [rad]."""
    length = spec.untwisted_length
    if not 0.0 < contracted <= length:
        raise DomainError(
            f"contracted length must lie in (0, {length:g}] m, got {contracted!r}"
        )
    return math.acos(contracted / length)


def motor_torque(spec: StringSpec, theta: float, pull_force: float) -> float:
    """Motor torque holding ``pull_force`` newtons at twist ``theta`` [N*m].

    Zero at zero twist; strictly increasing in ``theta`` for a fixed positive
    force; diverges toward the twist limit.
    """
    _check_twist(spec, theta)
    if pull_force < 0.0:
        raise DomainError(f"pull force must be non-negative, got {pull_force!r}")
    if theta == 0.0:
        return 0.0
    radius = spec.radius
    return pull_force * theta * radius * radius / contracted_length(spec, theta)


def pull_force(spec: StringSpec, theta: float, torque: float) -> float:
    """Pull force produced by ``torque`` newton metres at twist ``theta`` [N].

    Undefined at zero twist (the transmission is singular there), so
    ``theta`` must be strictly positive.
    """
    if theta <= 0.0:
        raise DomainError(
            f"twist angle must be strictly positive for force recovery, got {theta!r}"
        )
    _check_twist(spec, theta)
    if torque < 0.0:
        raise DomainError(f"torque must be non-negative, got {torque!r}")
    radius = spec.radius
    return torque * contracted_length(spec, theta) / (theta * radius * radius)


def transmission_ratio(spec: StringSpec, theta: float) -> float:
    """Pull force per unit motor torque at twist ``theta`` [N per N*m]."""
    return pull_force(spec, theta, 1.0)


def solve_twist_angle(spec: StringSpec, torque: float, force: float) -> float:
    """Twist angle at which ``torque`` newton metres holds ``force`` newtons.

    Bisection on the strictly increasing map theta -> motor_torque(theta)
    over (0, max_twist), to an angle tolerance of 1e-10 rad. Both inputs
    must be strictly positive; a solution always exists mathematically, but
    targets whose root lies within 1e-12 of either end of the twist range
    are rejected as numerically unresolvable.
    """
    if torque <= 0.0:
        raise DomainError(f"torque must be strictly positive, got {torque!r}")
    if force <= 0.0:
        raise DomainError(f"pull force must be strictly positive, got {force!r}")
    limit = spec.max_twist
    lo = _BRACKET_MARGIN * limit
    hi = limit - _BRACKET_MARGIN * limit
    if motor_torque(spec, lo, force) > torque:
        raise DomainError(
            "torque/force ratio puts the twist angle below the resolvable range"
        )
    if motor_torque(spec, hi, force) < torque:
        raise DomainError(
            "torque/force ratio puts the twist angle within 1e-12 of the twist limit"
        )
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if motor_torque(spec, mid, force) < torque:
            lo = mid
        else:
            hi = mid
        if hi - lo < _ANGLE_TOL:
            break
    return 0.5 * (lo + hi)
