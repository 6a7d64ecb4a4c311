"""Holonomic three-omniwheel base: twist/wheel kinematics, motion limiting, pose integration.

Conventions: robot frame has x forward, y left, heading counter-clockwise.
Wheel mount bearings are measured counter-clockwise from robot forward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


def normalize_angle(angle: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    wrapped = math.remainder(angle, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


@dataclass(frozen=True)
class BodyTwist:
    """Planar velocity command: vx forward, vy left (m/s), omega CCW (rad/s)."""

    vx: float = 0.0
    vy: float = 0.0
    omega: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.vx) and math.isfinite(self.vy) and math.isfinite(self.omega)):
            raise ValueError("twist components must be finite")

    def planar_speed(self) -> float:
        return math.hypot(self.vx, self.vy)


ZERO_TWIST = BodyTwist(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Pose:
    """World-frame position (m) and heading (rad, normalized to (-pi, pi])."""

    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "heading", normalize_angle(self.heading))


@dataclass(frozen=True)
class MotionLimits:
    """Speed and acceleration caps applied to every commanded twist."""

    v_max: float = 0.35
    a_max: float = 0.3
    omega_max: float = 0.5
    platform_ceiling: float = 0.8

    def __post_init__(self) -> None:
        if not 0.0 < self.v_max <= self.platform_ceiling:
            raise ValueError(f"v_max must be in (0, {self.platform_ceiling}], got {self.v_max}")
        if self.a_max <= 0.0:
            raise ValueError("a_max must be positive")
        if self.omega_max <= 0.0:
            raise ValueError("omega_max must be positive")


@dataclass(frozen=True)
class WheelLayout:
    """Geometry of the three omniwheels.

    Defaults put the front-left wheel at 60 degrees, the back wheel at 180
    degrees and the front-right wheel at 300 degrees, all driving tangentially.
    """

    mount_bearings: tuple[float, float, float] = (math.pi / 3, math.pi, 5 * math.pi / 3)
    base_radius: float = 0.2
    wheel_radius: float = 0.05

    # 3x3 maps between body twist (vx, vy, omega) and wheel tangential speeds.
    _ik_matrix: np.ndarray = field(init=False, repr=False, compare=False)
    _fk_matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.base_radius <= 0.0 or self.wheel_radius <= 0.0:
            raise ValueError("base_radius and wheel_radius must be positive")
        if len(set(self.mount_bearings)) != 3:
            raise ValueError("mount bearings must be pairwise distinct")
        rows = [
            [-math.sin(b), math.cos(b), self.base_radius] for b in self.mount_bearings
        ]
        ik = np.array(rows, dtype=float)
        if abs(np.linalg.det(ik)) < 1e-9:
            raise ValueError("wheel layout is singular: twist cannot be recovered from wheel speeds")
        object.__setattr__(self, "_ik_matrix", ik)
        object.__setattr__(self, "_fk_matrix", np.linalg.inv(ik))


def inverse_kinematics(twist: BodyTwist, layout: WheelLayout) -> np.ndarray:
    """Wheel angular speeds (rad/s) realizing a body twist.

    Each wheel's tangential speed is -sin(b)*vx + cos(b)*vy + base_radius*omega.
    """
    body = np.array([twist.vx, twist.vy, twist.omega])
    tangential = layout._ik_matrix @ body
    return tangential / layout.wheel_radius


def forward_kinematics(wheel_speeds: np.ndarray, layout: WheelLayout) -> BodyTwist:
    """Body twist realized by the given wheel angular speeds (exact inverse of IK)."""
    tangential = np.asarray(wheel_speeds, dtype=float) * layout.wheel_radius
    vx, vy, omega = layout._fk_matrix @ tangential
    return BodyTwist(float(vx), float(vy), float(omega))


def limit(target: BodyTwist, previous: BodyTwist, dt: float, limits: MotionLimits) -> BodyTwist:
    """Clamp a target twist to the speed, acceleration and spin limits.

    The planar speed is clamped to v_max first, then the per-step planar
    velocity change relative to ``previous`` is clamped to a_max*dt. The spin
    rate is clamped to omega_max independently.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")

    vx, vy = target.vx, target.vy
    speed = math.hypot(vx, vy)
    if speed > limits.v_max:
        scale = limits.v_max / speed
        vx *= scale
        vy *= scale

    dvx = vx - previous.vx
    dvy = vy - previous.vy
    dv = math.hypot(dvx, dvy)
    max_dv = limits.a_max * dt
    if dv > max_dv:
        scale = max_dv / dv
        vx = previous.vx + dvx * scale
        vy = previous.vy + dvy * scale

    omega = target.omega
    if omega > limits.omega_max:
        omega = limits.omega_max
    elif omega < -limits.omega_max:
        omega = -limits.omega_max

    return BodyTwist(vx, vy, omega)


def integrate(pose: Pose, twist: BodyTwist, dt: float) -> Pose:
    """Advance a pose by a constant body-frame twist over dt (exact arc)."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")

    theta0 = pose.heading
    if abs(twist.omega) < 1e-9:
        cos_t, sin_t = math.cos(theta0), math.sin(theta0)
        dx = (twist.vx * cos_t - twist.vy * sin_t) * dt
        dy = (twist.vx * sin_t + twist.vy * cos_t) * dt
        return Pose(pose.x + dx, pose.y + dy, theta0 + twist.omega * dt)

    theta1 = theta0 + twist.omega * dt
    ds = math.sin(theta1) - math.sin(theta0)
    dc = math.cos(theta1) - math.cos(theta0)
    dx = (twist.vx * ds + twist.vy * dc) / twist.omega
    dy = (-twist.vx * dc + twist.vy * ds) / twist.omega
    return Pose(pose.x + dx, pose.y + dy, theta1)
