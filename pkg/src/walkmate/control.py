"""Assisted and non-assisted control loops.

The assisted loop gates motion on three conditions checked in order: the
push must exceed the deadband, a supervising person must not have locked the
base, and the nearest obstacle must be outside the hard-stop distance. The
non-assisted loop passes every estimate straight through. Policy switches
cover the clinically preferred defaults: backward motion disabled, lateral
pushes realized as rotation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .base import BodyTwist
from .intention import IntentionEstimate, SideMotionMode


class LoopMode(Enum):
    ASSISTED = "assisted"
    NON_ASSISTED = "non_assisted"


class BlockReason(Enum):
    BELOW_THRESHOLD = "BelowThreshold"
    LOCKED = "Locked"
    OBSTACLE_TOO_CLOSE = "ObstacleTooClose"


@dataclass(frozen=True)
class ControlConfig:
    loop: LoopMode = LoopMode.ASSISTED
    locked: bool = False
    side_motion: SideMotionMode = SideMotionMode.VERTICAL_AXIS_ROTATION
    backward_disabled: bool = True
    hard_stop: float = 0.25  # meters; minimum allowed obstacle clearance
    press_and_hold: bool = False  # hold-to-unlock instead of press-to-toggle

    def __post_init__(self) -> None:
        if self.hard_stop <= 0.0:
            raise ValueError("hard_stop must be positive")


class HandSensor(Enum):
    LEFT_HAND = "left_hand"
    RIGHT_HAND = "right_hand"


class TouchKind(Enum):
    PRESS = "press"
    RELEASE = "release"


@dataclass(frozen=True)
class TouchEvent:
    sensor: HandSensor
    kind: TouchKind
    time: float = 0.0


@dataclass(frozen=True)
class GateResult:
    """Outcome of the assisted gate: the estimate when passed, else a reason."""

    estimate: IntentionEstimate | None
    reason: BlockReason | None

    @property
    def passed(self) -> bool:
        return self.reason is None


def gate(
    estimate: IntentionEstimate,
    config: ControlConfig,
    nearest_distance: float | None,
    deadband: float,
) -> GateResult:
    """Decide whether the current estimate may drive the base.

    Non-assisted always passes. Assisted passes only when the strongest axis
    exceeds the deadband, the base is unlocked, and the nearest obstacle (if
    any) is at or beyond hard_stop. Reasons are reported in that order of
    precedence.
    """
    if config.loop is LoopMode.NON_ASSISTED:
        return GateResult(estimate=estimate, reason=None)
    pitch, roll = estimate.v_m
    if max(pitch.magnitude, roll.magnitude) <= deadband:
        return GateResult(estimate=None, reason=BlockReason.BELOW_THRESHOLD)
    if config.locked:
        return GateResult(estimate=None, reason=BlockReason.LOCKED)
    if nearest_distance is not None and nearest_distance < config.hard_stop:
        return GateResult(estimate=None, reason=BlockReason.OBSTACLE_TOO_CLOSE)
    return GateResult(estimate=estimate, reason=None)


def handle_touch(event: TouchEvent, config: ControlConfig) -> ControlConfig:
    """Update the lock from a hand-back touch; either hand works.

    Default gesture is press-to-toggle with releases ignored. With
    press_and_hold, the lock is held open only while a hand stays pressed.
    """
    if config.press_and_hold:
        if event.kind is TouchKind.PRESS:
            return replace(config, locked=False)
        return replace(config, locked=True)
    if event.kind is TouchKind.PRESS:
        return replace(config, locked=not config.locked)
    return config


def apply_policy(twist: BodyTwist, config: ControlConfig) -> BodyTwist:
    """Zero backward motion when disabled; lateral and rotation untouched."""
    if config.backward_disabled and twist.vx < 0.0:
        return BodyTwist(vx=0.0, vy=twist.vy, omega=twist.omega)
    return twist
