"""Deterministic simulator for a push-steered holonomic walk companion.

A user steers the robot by pushing on its body: joint-level torque and
angle discrepancies reveal the push, a logistic law scales motion by
obstacle clearance, and a gated control loop drives a three-wheel
holonomic base under hard speed and acceleration limits.
"""

from .base import (
    ZERO_TWIST,
    BodyTwist,
    MotionLimits,
    Pose,
    WheelLayout,
    forward_kinematics,
    integrate,
    inverse_kinematics,
    limit,
    normalize_angle,
)
from .compliance import (
    ComplianceParams,
    compliance,
    generalized_logistic,
    scale_twist,
)
from .control import (
    BlockReason,
    ControlConfig,
    GateResult,
    HandSensor,
    LoopMode,
    TouchEvent,
    TouchKind,
    apply_policy,
    gate,
    handle_touch,
)
from .intention import (
    EstimatorConfig,
    IntentionEstimate,
    PushDirection,
    SideMotionMode,
    angle_error,
    classify_direction,
    estimate_external_torque,
    estimate_push,
    motion_vector,
    to_body_twist,
)
from .kinematics import (
    ContactForce,
    JointAxis,
    JointSpec,
    JointState,
    KinematicChain,
    default_chain,
    propagate_contact_force,
    simulate_sensing,
    static_hold_torques,
)
from .world import (
    Circle,
    CollisionError,
    PushInput,
    RangeSensor,
    Scenario,
    ScenarioError,
    Segment,
    SensorKind,
    SimState,
    World,
    default_sensor_suite,
    load_scenario,
    nearest_obstacle,
    parse_scenario,
    raycast,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BlockReason",
    "BodyTwist",
    "Circle",
    "CollisionError",
    "ComplianceParams",
    "ContactForce",
    "ControlConfig",
    "EstimatorConfig",
    "GateResult",
    "HandSensor",
    "IntentionEstimate",
    "JointAxis",
    "JointSpec",
    "JointState",
    "KinematicChain",
    "LoopMode",
    "MotionLimits",
    "Pose",
    "PushDirection",
    "PushInput",
    "RangeSensor",
    "Scenario",
    "ScenarioError",
    "Segment",
    "SensorKind",
    "SideMotionMode",
    "SimState",
    "TouchEvent",
    "TouchKind",
    "WheelLayout",
    "World",
    "ZERO_TWIST",
    "angle_error",
    "apply_policy",
    "classify_direction",
    "compliance",
    "default_chain",
    "default_sensor_suite",
    "estimate_external_torque",
    "estimate_push",
    "forward_kinematics",
    "gate",
    "generalized_logistic",
    "handle_touch",
    "integrate",
    "inverse_kinematics",
    "limit",
    "load_scenario",
    "motion_vector",
    "nearest_obstacle",
    "normalize_angle",
    "parse_scenario",
    "propagate_contact_force",
    "raycast",
    "scale_twist",
    "simulate_sensing",
    "static_hold_torques",
    "step",
    "to_body_twist",
]
