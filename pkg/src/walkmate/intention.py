"""Push-intention estimation from joint-level discrepancies.

The robot carries no force sensor. A push shows up as extra torque the joints
must balance and as a small deflection of the sensed angle away from the
commanded one. Subtracting the gravity-hold and friction shares from the
reported torque recovers the external torque per joint; the sign of the angle
discrepancy carries the push direction. One pitch joint covers the fore-aft
channel and one roll joint covers the lateral channel.

Sign convention: positive pitch discrepancy means a push toward the robot's
front (North); positive roll discrepancy means a push toward the robot's
right (East). In the robot frame (x forward, y left) an East push therefore
commands negative vy, or a clockwise (negative) yaw rate in rotation mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, Flag, auto

from .base import BodyTwist
from .kinematics import JointState, KinematicChain


class PushDirection(Flag):
    """Cardinal push semantics; combinations like NORTH | EAST are valid."""

    IDLE = 0
    NORTH = auto()
    SOUTH = auto()
    EAST = auto()
    WEST = auto()


class SideMotionMode(Enum):
    """How a lateral push is realized: strafe or turn in place."""

    LATERAL_TRANSLATION = "lateral_translation"
    VERTICAL_AXIS_ROTATION = "vertical_axis_rotation"


@dataclass(frozen=True)
class AxisVector:
    """One axis of the motion vector: |tau_ext| plus direction from theta_eps."""

    magnitude: float
    direction_sign: float


@dataclass(frozen=True)
class IntentionEstimate:
    """Per-axis external torque, angle discrepancy, and the motion vector."""

    tau_ext_pitch: float
    tau_ext_roll: float
    theta_eps_pitch: float
    theta_eps_roll: float
    v_m: tuple[AxisVector, AxisVector]  # (pitch, roll)

    @property
    def signed_pitch(self) -> float:
        pitch, _ = self.v_m
        return pitch.direction_sign * pitch.magnitude

    @property
    def signed_roll(self) -> float:
        _, roll = self.v_m
        return roll.direction_sign * roll.magnitude


IDLE_ESTIMATE = IntentionEstimate(
    tau_ext_pitch=0.0,
    tau_ext_roll=0.0,
    theta_eps_pitch=0.0,
    theta_eps_roll=0.0,
    v_m=(AxisVector(0.0, 0.0), AxisVector(0.0, 0.0)),
)


@dataclass(frozen=True)
class EstimatorConfig:
    deadband: float = 0.5  # N*m below which a push is ignored
    gain: float = 0.05  # (m/s) commanded per N*m of push
    pitch_joint: str = "knee_pitch"
    roll_joint: str = "hip_roll"
    rot_gain: float = 1.0  # (rad/s) per (m/s) of lateral command in rotation mode
    pitch_sign: float = 1.0  # flip if the pitch joint's positive sense is reversed
    roll_sign: float = 1.0
    smoothing_alpha: float = 0.0  # EMA weight on the previous estimate; 0 disables

    def __post_init__(self) -> None:
        if self.deadband <= 0.0:
            raise ValueError("deadband must be positive")
        if self.gain <= 0.0:
            raise ValueError("gain must be positive")
        if self.rot_gain <= 0.0:
            raise ValueError("rot_gain must be positive")
        if abs(self.pitch_sign) != 1.0 or abs(self.roll_sign) != 1.0:
            raise ValueError("axis signs must be +1 or -1")
        if not 0.0 <= self.smoothing_alpha < 1.0:
            raise ValueError("smoothing_alpha must be in [0, 1)")


def estimate_external_torque(state: JointState) -> float:
    """External torque on one joint: reported total minus friction and hold shares."""
    return state.tau_total - state.tau_f - state.tau_m


def angle_error(state: JointState) -> float:
    """Sensed-minus-commanded angle; its sign carries the push direction."""
    return state.theta_s - state.theta_c


def _axis_vector(tau_ext: float, theta_eps: float, sign_flip: float) -> AxisVector:
    if theta_eps > 0.0:
        direction = sign_flip
    elif theta_eps < 0.0:
        direction = -sign_flip
    else:
        direction = 0.0
    return AxisVector(magnitude=abs(tau_ext), direction_sign=direction)


def motion_vector(
    pitch_state: JointState,
    roll_state: JointState,
    config: EstimatorConfig,
) -> IntentionEstimate:
    """Form the motion vector: magnitudes from |tau_ext|, signs from theta_eps."""
    tau_pitch = estimate_external_torque(pitch_state)
    tau_roll = estimate_external_torque(roll_state)
    eps_pitch = angle_error(pitch_state)
    eps_roll = angle_error(roll_state)
    return IntentionEstimate(
        tau_ext_pitch=tau_pitch,
        tau_ext_roll=tau_roll,
        theta_eps_pitch=eps_pitch,
        theta_eps_roll=eps_roll,
        v_m=(
            _axis_vector(tau_pitch, eps_pitch, config.pitch_sign),
            _axis_vector(tau_roll, eps_roll, config.roll_sign),
        ),
    )


def estimate_push(
    chain: KinematicChain,
    config: EstimatorConfig,
    previous: IntentionEstimate | None = None,
) -> IntentionEstimate:
    """Estimate the current push from the chain's configured pitch/roll joints.

    Raises ValueError when a configured joint name is missing from the chain.
    With smoothing enabled, blends the raw torque and discrepancy channels
    with the previous estimate before re-deriving the motion vector.
    """
    estimate = motion_vector(
        chain.state_of(config.pitch_joint),
        chain.state_of(config.roll_joint),
        config,
    )
    if previous is None or config.smoothing_alpha == 0.0:
        return estimate
    a = config.smoothing_alpha
    tau_pitch = a * previous.tau_ext_pitch + (1.0 - a) * estimate.tau_ext_pitch
    tau_roll = a * previous.tau_ext_roll + (1.0 - a) * estimate.tau_ext_roll
    eps_pitch = a * previous.theta_eps_pitch + (1.0 - a) * estimate.theta_eps_pitch
    eps_roll = a * previous.theta_eps_roll + (1.0 - a) * estimate.theta_eps_roll
    return IntentionEstimate(
        tau_ext_pitch=tau_pitch,
        tau_ext_roll=tau_roll,
        theta_eps_pitch=eps_pitch,
        theta_eps_roll=eps_roll,
        v_m=(
            _axis_vector(tau_pitch, eps_pitch, config.pitch_sign),
            _axis_vector(tau_roll, eps_roll, config.roll_sign),
        ),
    )


def classify_direction(estimate: IntentionEstimate, config: EstimatorConfig) -> PushDirection:
    """Map the estimate to cardinal directions; axes below deadband stay idle."""
    pitch, roll = estimate.v_m
    direction = PushDirection.IDLE
    if pitch.magnitude > config.deadband and pitch.direction_sign != 0.0:
        direction |= PushDirection.NORTH if pitch.direction_sign > 0.0 else PushDirection.SOUTH
    if roll.magnitude > config.deadband and roll.direction_sign != 0.0:
        direction |= PushDirection.EAST if roll.direction_sign > 0.0 else PushDirection.WEST
    return direction


def to_body_twist(
    estimate: IntentionEstimate,
    mode: SideMotionMode,
    config: EstimatorConfig,
) -> BodyTwist:
    """Admittance map from the motion vector to a commanded body twist.

    The fore-aft channel always drives vx. The lateral channel drives vy with
    a fixed heading, or yaw rate in rotation mode; either way an East push
    turns into rightward motion (negative vy or clockwise omega).
    """
    pitch, roll = estimate.v_m
    vx = config.gain * estimate.signed_pitch if pitch.magnitude > config.deadband else 0.0
    lateral = config.gain * estimate.signed_roll if roll.magnitude > config.deadband else 0.0
    if mode is SideMotionMode.LATERAL_TRANSLATION:
        return BodyTwist(vx=vx, vy=-lateral, omega=0.0)
    if mode is SideMotionMode.VERTICAL_AXIS_ROTATION:
        return BodyTwist(vx=vx, vy=0.0, omega=-config.rot_gain * lateral)
    raise ValueError(f"unknown side-motion mode {mode!r}")


def direction_names(direction: PushDirection) -> list[str]:
    """Stable, human-readable decomposition; empty list for idle."""
    if direction is PushDirection.IDLE:
        return []
    names = []
    for member in (PushDirection.NORTH, PushDirection.SOUTH, PushDirection.EAST, PushDirection.WEST):
        if member in direction:
            names.append(member.name.capitalize())
    return names
