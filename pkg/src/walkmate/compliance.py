"""Obstacle-distance compliance: a logistic gain on motion toward obstacles.

The degree of compliance R_c(d) rises from 0 far below one meter of
clearance to 1 beyond two meters, with a midpoint of 0.5 at exactly one
meter. Only the velocity component pointing at the nearest obstacle is
scaled; escape and tangential motion pass through untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .base import BodyTwist, Pose

# Above this exponent the logistic underflows to its lower asymptote anyway.
_EXP_CUTOFF = 700.0

# Toward-obstacle components at or below this are treated as exactly zero so
# that pure tangential motion is returned bit-unchanged.
_TOWARD_GUARD = 1e-12


@dataclass(frozen=True)
class ComplianceParams:
    """Generalized-logistic shape parameters.

    Defaults give the simplified law 1/(1 + e^(-B(d-1))): unit compliance
    ceiling, zero floor, midpoint at one meter, growth rate 4 per meter.
    """

    lower_A: float = 0.0
    upper_K: float = 1.0
    C: float = 1.0
    v: float = 1.0
    M: float = 1.0
    B: float = 4.0

    def __post_init__(self) -> None:
        if self.upper_K <= self.lower_A:
            raise ValueError("upper_K must exceed lower_A")
        if self.v <= 0.0:
            raise ValueError("v must be positive")
        if self.C <= 0.0:
            raise ValueError("C must be positive")
        if self.B <= 0.0:
            raise ValueError("B must be positive")


def generalized_logistic(d: float, p: ComplianceParams) -> float:
    """A + (K - A) / (C + e^(-B(d-M)))^(1/v), strictly increasing in d."""
    z = -p.B * (d - p.M)
    if z > _EXP_CUTOFF:
        return p.lower_A
    return p.lower_A + (p.upper_K - p.lower_A) / (p.C + math.exp(z)) ** (1.0 / p.v)


def compliance(d: float, B: float) -> float:
    """Simplified degree of compliance 1/(1 + e^(-B(d-1))); 0.5 at d = 1."""
    z = -B * (d - 1.0)
    if z > _EXP_CUTOFF:
        return 0.0
    return 1.0 / (1.0 + math.exp(z))


def _split_toward(twist: BodyTwist, bearing: float) -> tuple[float, float, float]:
    """Toward-obstacle velocity component and the unit bearing vector."""
    ux = math.cos(bearing)
    uy = math.sin(bearing)
    return twist.vx * ux + twist.vy * uy, ux, uy


def scale_twist(
    twist: BodyTwist,
    robot_pose: Pose,
    nearest: tuple[float, float] | None,
    p: ComplianceParams,
    hard_stop: float = 0.25,
) -> BodyTwist:
    """Scale the toward-obstacle velocity component by R_c(distance).

    ``nearest`` is (distance, bearing) in the robot frame, or None when
    nothing is in range; None and away-pointing motion pass through
    unchanged. Inside ``hard_stop`` the toward component is zeroed outright,
    since the logistic alone never reaches zero. The pose is accepted for
    signature stability; the bearing is already robot-relative.
    """
    del robot_pose
    if nearest is None:
        return twist
    distance, bearing = nearest
    if distance < 0.0:
        raise ValueError("obstacle distance must be non-negative")
    toward, ux, uy = _split_toward(twist, bearing)
    if toward <= _TOWARD_GUARD:
        return twist
    factor = 0.0 if distance < hard_stop else generalized_logistic(distance, p)
    scaled = toward * factor
    return BodyTwist(
        vx=twist.vx + (scaled - toward) * ux,
        vy=twist.vy + (scaled - toward) * uy,
        omega=twist.omega,
    )


def approach_speed_limit(
    distance: float,
    a_max: float,
    hard_stop: float = 0.25,
    travel_margin: float = 0.0,
) -> float:
    """Highest toward-obstacle speed that can still brake before hard_stop.

    Constant-deceleration envelope sqrt(2 a_max s) over the usable clearance,
    minus a margin for travel during the step in which braking begins.
    """
    usable = distance - hard_stop - travel_margin
    if usable <= 0.0:
        return 0.0
    return math.sqrt(2.0 * a_max * usable)


def cap_toward_speed(
    twist: BodyTwist,
    nearest: tuple[float, float] | None,
    max_toward: float,
) -> BodyTwist:
    """Clamp the toward-obstacle velocity component to max_toward."""
    if nearest is None:
        return twist
    _, bearing = nearest
    toward, ux, uy = _split_toward(twist, bearing)
    if toward <= max_toward or toward <= _TOWARD_GUARD:
        return twist
    return BodyTwist(
        vx=twist.vx + (max_toward - toward) * ux,
        vy=twist.vy + (max_toward - toward) * uy,
        omega=twist.omega,
    )
