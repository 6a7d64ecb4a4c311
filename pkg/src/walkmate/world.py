"""Flat 2D world, simulated range sensing, and the deterministic step.

The robot is a point at its base center. Obstacles are static circles and
wall segments. Range sensors cast rays from the robot; the nearest-obstacle
query is pure geometry, but perception is still bounded: anything beyond the
longest sensor range is treated as unseen by the control pipeline.

Pushes arrive as planar forces in the robot frame and are resolved onto two
independent joint-chain planes: the fore-aft component loads the pitch
joints, the lateral component loads the roll joints.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .base import (
    ZERO_TWIST,
    BodyTwist,
    MotionLimits,
    Pose,
    integrate,
    limit,
    normalize_angle,
)
from .compliance import (
    ComplianceParams,
    approach_speed_limit,
    cap_toward_speed,
    scale_twist,
)
from .control import ControlConfig, LoopMode, apply_policy, gate
from .intention import (
    EstimatorConfig,
    IntentionEstimate,
    SideMotionMode,
    estimate_push,
    to_body_twist,
)
from .kinematics import (
    ContactForce,
    JointAxis,
    JointSpec,
    KinematicChain,
    default_chain,
    propagate_contact_force,
    sensed_states,
    static_hold_torques,
)


class CollisionError(RuntimeError):
    """Raised when the integrated path crosses into an obstacle."""

    def __init__(self, pose: Pose, time: float):
        super().__init__(f"collision at ({pose.x:.3f}, {pose.y:.3f}), t={time:.3f} s")
        self.pose = pose
        self.time = time


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise ValueError("circle radius must be positive")

    def boundary_distance(self, point: tuple[float, float]) -> float:
        return math.hypot(point[0] - self.center[0], point[1] - self.center[1]) - self.radius

    def closest_point(self, point: tuple[float, float]) -> tuple[float, float]:
        dx = point[0] - self.center[0]
        dy = point[1] - self.center[1]
        norm = math.hypot(dx, dy)
        if norm < 1e-12:
            return (self.center[0] + self.radius, self.center[1])
        return (
            self.center[0] + self.radius * dx / norm,
            self.center[1] + self.radius * dy / norm,
        )

    def ray_hit(self, origin: tuple[float, float], direction: tuple[float, float]) -> float | None:
        ox = self.center[0] - origin[0]
        oy = self.center[1] - origin[1]
        b = ox * direction[0] + oy * direction[1]
        disc = b * b - (ox * ox + oy * oy - self.radius * self.radius)
        if disc < 0.0:
            return None
        root = math.sqrt(disc)
        t = b - root
        if t < 0.0:
            t = b + root
        return t if t >= 0.0 else None

    def crossed_by(self, p0: tuple[float, float], p1: tuple[float, float]) -> bool:
        return _segment_point_distance(p0, p1, self.center) < self.radius


@dataclass(frozen=True)
class Segment:
    p1: tuple[float, float]
    p2: tuple[float, float]

    def __post_init__(self) -> None:
        if self.p1 == self.p2:
            raise ValueError("segment endpoints must be distinct")

    def boundary_distance(self, point: tuple[float, float]) -> float:
        return _segment_point_distance(self.p1, self.p2, point)

    def closest_point(self, point: tuple[float, float]) -> tuple[float, float]:
        return _segment_closest_point(self.p1, self.p2, point)

    def ray_hit(self, origin: tuple[float, float], direction: tuple[float, float]) -> float | None:
        dx = self.p2[0] - self.p1[0]
        dy = self.p2[1] - self.p1[1]
        denom = direction[0] * dy - direction[1] * dx
        if abs(denom) < 1e-12:
            return None
        wx = self.p1[0] - origin[0]
        wy = self.p1[1] - origin[1]
        t = (wx * dy - wy * dx) / denom
        s = (wx * direction[1] - wy * direction[0]) / denom
        if t >= 0.0 and 0.0 <= s <= 1.0:
            return t
        return None

    def crossed_by(self, p0: tuple[float, float], p1: tuple[float, float]) -> bool:
        return _segments_intersect(p0, p1, self.p1, self.p2)


Obstacle = Circle | Segment


def _segment_point_distance(
    a: tuple[float, float], b: tuple[float, float], p: tuple[float, float]
) -> float:
    cx, cy = _segment_closest_point(a, b, p)
    return math.hypot(p[0] - cx, p[1] - cy)


def _segment_closest_point(
    a: tuple[float, float], b: tuple[float, float], p: tuple[float, float]
) -> tuple[float, float]:
    abx = b[0] - a[0]
    aby = b[1] - a[1]
    denom = abx * abx + aby * aby
    s = ((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / denom
    s = min(1.0, max(0.0, s))
    return (a[0] + s * abx, a[1] + s * aby)


def _segments_intersect(
    a0: tuple[float, float],
    a1: tuple[float, float],
    b0: tuple[float, float],
    b1: tuple[float, float],
) -> bool:
    ux = a1[0] - a0[0]
    uy = a1[1] - a0[1]
    vx = b1[0] - b0[0]
    vy = b1[1] - b0[1]
    denom = ux * vy - uy * vx
    if abs(denom) < 1e-15:
        return False
    wx = b0[0] - a0[0]
    wy = b0[1] - a0[1]
    t = (wx * vy - wy * vx) / denom
    s = (wx * uy - wy * ux) / denom
    return 0.0 <= t <= 1.0 and 0.0 <= s <= 1.0


class SensorKind(Enum):
    LASER = "laser"
    SONAR = "sonar"


@dataclass(frozen=True)
class RangeSensor:
    kind: SensorKind
    mount_bearing: float  # radians, robot frame
    fov: float
    ray_count: int
    max_range: float

    def __post_init__(self) -> None:
        if self.ray_count < 1:
            raise ValueError("ray_count must be at least 1")
        if not 0.0 < self.fov <= 2.0 * math.pi:
            raise ValueError("fov must be in (0, 2*pi]")
        if self.max_range <= 0.0:
            raise ValueError("max_range must be positive")


def default_sensor_suite() -> tuple[RangeSensor, ...]:
    """Three forward/side lasers plus two long-range sonars."""
    lasers = tuple(
        RangeSensor(SensorKind.LASER, bearing, math.pi / 3.0, 15, 3.0)
        for bearing in (-math.pi / 2.0, 0.0, math.pi / 2.0)
    )
    sonars = tuple(
        RangeSensor(SensorKind.SONAR, bearing, math.pi / 6.0, 1, 5.0)
        for bearing in (-math.pi / 6.0, math.pi / 6.0)
    )
    return lasers + sonars


@dataclass(frozen=True)
class World:
    obstacles: tuple[Obstacle, ...] = ()
    sensors: tuple[RangeSensor, ...] = ()

    def sensing_horizon(self) -> float:
        """Longest sensor range; a sensorless robot perceives nothing."""
        return max((s.max_range for s in self.sensors), default=0.0)


def raycast(world: World, pose: Pose, sensor: RangeSensor) -> np.ndarray:
    """Per-ray hit distance, capped at max_range; rays evenly span the fov."""
    if sensor.ray_count == 1:
        offsets = np.array([0.0])
    else:
        offsets = np.linspace(-sensor.fov / 2.0, sensor.fov / 2.0, sensor.ray_count)
    origin = (pose.x, pose.y)
    readings = np.full(sensor.ray_count, sensor.max_range)
    for i, offset in enumerate(offsets):
        angle = pose.heading + sensor.mount_bearing + offset
        direction = (math.cos(angle), math.sin(angle))
        for obstacle in world.obstacles:
            t = obstacle.ray_hit(origin, direction)
            if t is not None and t < readings[i]:
                readings[i] = t
    return readings


class NearestObstacle(NamedTuple):
    distance: float
    bearing: float  # radians, robot frame


def nearest_obstacle(world: World, pose: Pose) -> NearestObstacle | None:
    """Closest obstacle boundary by Euclidean distance, None in an empty world."""
    if not world.obstacles:
        return None
    point = (pose.x, pose.y)
    best = None
    best_distance = math.inf
    for obstacle in world.obstacles:
        d = obstacle.boundary_distance(point)
        if d < best_distance:
            best_distance = d
            best = obstacle
    cx, cy = best.closest_point(point)
    bearing = normalize_angle(math.atan2(cy - pose.y, cx - pose.x) - pose.heading)
    return NearestObstacle(distance=best_distance, bearing=bearing)


@dataclass(frozen=True)
class PushInput:
    """A held planar force on the robot body over a time window."""

    force: tuple[float, float]  # newtons, robot frame (x forward, y left)
    link_index: int
    application_distance: float
    start: float
    end: float

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise ValueError("push window must satisfy start < end")

    def active(self, t: float) -> bool:
        return self.start <= t < self.end


@dataclass
class SimState:
    """Root of all mutable simulation state; owned by one stepper at a time."""

    world: World
    chain: KinematicChain
    pose: Pose = Pose(0.0, 0.0, 0.0)
    twist: BodyTwist = ZERO_TWIST
    control: ControlConfig = ControlConfig()
    estimator: EstimatorConfig = EstimatorConfig()
    compliance: ComplianceParams = ComplianceParams()
    limits: MotionLimits = MotionLimits()
    clock: float = 0.0
    rng_seed: int = 0
    noise_std: float = 0.0  # N*m of gaussian torque-channel noise
    rng: np.random.Generator | None = None
    last_estimate: IntentionEstimate | None = None

    def __post_init__(self) -> None:
        if self.noise_std < 0.0:
            raise ValueError("noise_std must be non-negative")
        if self.rng is None:
            self.rng = np.random.default_rng(self.rng_seed)


def _plane_view(chain: KinematicChain, axis: JointAxis) -> KinematicChain:
    """Chain as seen in one articulation plane: other-axis joints read as 0."""
    states = [
        s if spec.axis is axis else replace(s, theta_c=0.0)
        for spec, s in zip(chain.specs, chain.states)
    ]
    return KinematicChain(specs=chain.specs, states=states, gravity=chain.gravity)


def _resolve_pushes(
    chain: KinematicChain, pushes: list[PushInput]
) -> tuple[np.ndarray, np.ndarray]:
    """Per-joint external torque and hold torque from all active pushes.

    The fore-aft force component acts in the pitch plane; the lateral
    component, with leftward force positive, acts as a rightward-positive
    force in the roll plane. Each joint reads the plane of its own axis.
    """
    pitch_view = _plane_view(chain, JointAxis.PITCH)
    roll_view = _plane_view(chain, JointAxis.ROLL)
    tau_pitch = np.zeros(len(chain))
    tau_roll = np.zeros(len(chain))
    for push in pushes:
        fx, fy = push.force
        if fx != 0.0:
            contact = ContactForce(push.link_index, push.application_distance, (fx, 0.0))
            tau_pitch += propagate_contact_force(pitch_view, contact)
        if fy != 0.0:
            contact = ContactForce(push.link_index, push.application_distance, (-fy, 0.0))
            tau_roll += propagate_contact_force(roll_view, contact)
    hold_pitch = static_hold_torques(pitch_view)
    hold_roll = static_hold_torques(roll_view)
    is_pitch = np.array([spec.axis is JointAxis.PITCH for spec in chain.specs])
    tau_ext = np.where(is_pitch, tau_pitch, tau_roll)
    tau_m = np.where(is_pitch, hold_pitch, hold_roll)
    return tau_ext, tau_m


def effective_nearest(state: SimState) -> NearestObstacle | None:
    """Nearest obstacle as perceived: None when beyond the sensing horizon."""
    nearest = nearest_obstacle(state.world, state.pose)
    if nearest is None or nearest.distance > state.world.sensing_horizon():
        return None
    return nearest


def step(state: SimState, pushes: list[PushInput], dt: float) -> SimState:
    """Advance the simulation one fixed timestep.

    Order: sense joint torques under the active pushes, estimate the push,
    gate it, map it to a commanded twist, apply policy, then in assisted mode
    scale and brake against the nearest perceived obstacle, limit, integrate.
    Raises CollisionError when the step's path crosses an obstacle.
    """
    if not 0.0 < dt <= 0.1:
        raise ValueError("dt must be in (0, 0.1]")
    t = state.clock
    active = [p for p in pushes if p.active(t)]
    tau_ext, tau_m = _resolve_pushes(state.chain, active)
    new_states = sensed_states(state.chain, tau_ext, state.noise_std, state.rng, tau_m=tau_m)
    new_chain = KinematicChain(
        specs=state.chain.specs, states=new_states, gravity=state.chain.gravity
    )

    estimate = estimate_push(new_chain, state.estimator, state.last_estimate)
    nearest = effective_nearest(state)
    decision = gate(
        estimate,
        state.control,
        nearest.distance if nearest is not None else None,
        state.estimator.deadband,
    )
    if decision.passed:
        target = to_body_twist(decision.estimate, state.control.side_motion, state.estimator)
        target = apply_policy(target, state.control)
    else:
        target = ZERO_TWIST
    if state.control.loop is LoopMode.ASSISTED and nearest is not None:
        target = scale_twist(target, state.pose, nearest, state.compliance, state.control.hard_stop)
        envelope = approach_speed_limit(
            nearest.distance,
            state.limits.a_max,
            state.control.hard_stop,
            travel_margin=state.limits.v_max * dt,
        )
        target = cap_toward_speed(target, nearest, envelope)

    new_twist = limit(target, state.twist, dt, state.limits)
    new_pose = integrate(state.pose, new_twist, dt)
    p0 = (state.pose.x, state.pose.y)
    p1 = (new_pose.x, new_pose.y)
    for obstacle in state.world.obstacles:
        if obstacle.crossed_by(p0, p1):
            raise CollisionError(new_pose, t + dt)
    return replace(
        state,
        chain=new_chain,
        pose=new_pose,
        twist=new_twist,
        clock=t + dt,
        last_estimate=estimate,
    )


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


@dataclass(frozen=True)
class Scenario:
    """Everything needed to build a fresh, reproducible simulation run."""

    id: str
    world: World
    joint_specs: tuple[JointSpec, ...]
    gravity: float
    noise_std: float
    start_pose: Pose
    control: ControlConfig
    estimator: EstimatorConfig
    compliance: ComplianceParams
    limits: MotionLimits
    pushes: tuple[PushInput, ...]
    duration_s: float
    dt: float
    seed: int

    @property
    def step_count(self) -> int:
        return int(round(self.duration_s / self.dt))

    def build_state(self) -> SimState:
        """A fresh initial state; calling twice yields independent runs."""
        chain = KinematicChain(specs=self.joint_specs, gravity=self.gravity)
        return SimState(
            world=self.world,
            chain=chain,
            pose=self.start_pose,
            control=self.control,
            estimator=self.estimator,
            compliance=self.compliance,
            limits=self.limits,
            rng_seed=self.seed,
            noise_std=self.noise_std,
        )


def _check_keys(section: str, data: dict, allowed: set[str]) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ScenarioError(f"{section}: unknown keys {unknown}")


def _number(section: str, data: dict, key: str, default: float | None = None) -> float:
    if key not in data:
        if default is None:
            raise ScenarioError(f"{section}: missing required field {key!r}")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{section}.{key}: expected a number, got {value!r}")
    return float(value)


def _pair(section: str, data: dict, key: str) -> tuple[float, float]:
    value = data.get(key)
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        raise ScenarioError(f"{section}.{key}: expected [x, y]")
    return (float(value[0]), float(value[1]))


def _build(section: str, cls, kwargs: dict):
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{section}: {exc}") from exc


def _enum(section: str, key: str, enum_cls, value: str):
    try:
        return enum_cls(value)
    except ValueError:
        names = [m.value for m in enum_cls]
        raise ScenarioError(f"{section}.{key}: expected one of {names}, got {value!r}") from None


def _parse_obstacle(index: int, data: dict) -> Obstacle:
    section = f"world.obstacles[{index}]"
    if not isinstance(data, dict):
        raise ScenarioError(f"{section}: expected an object")
    kind = data.get("kind")
    if kind == "circle":
        _check_keys(section, data, {"kind", "center", "radius"})
        return _build(
            section,
            Circle,
            {
                "center": _pair(section, data, "center"),
                "radius": _number(section, data, "radius"),
            },
        )
    if kind == "segment":
        _check_keys(section, data, {"kind", "p1", "p2"})
        return _build(
            section,
            Segment,
            {"p1": _pair(section, data, "p1"), "p2": _pair(section, data, "p2")},
        )
    raise ScenarioError(f"{section}.kind: expected 'circle' or 'segment', got {kind!r}")


def _parse_sensor(index: int, data: dict) -> RangeSensor:
    section = f"world.sensors[{index}]"
    if not isinstance(data, dict):
        raise ScenarioError(f"{section}: expected an object")
    _check_keys(section, data, {"kind", "mount_bearing", "fov", "ray_count", "max_range"})
    ray_count = data.get("ray_count", 1)
    if isinstance(ray_count, bool) or not isinstance(ray_count, int):
        raise ScenarioError(f"{section}.ray_count: expected an integer")
    return _build(
        section,
        RangeSensor,
        {
            "kind": _enum(section, "kind", SensorKind, data.get("kind", "laser")),
            "mount_bearing": _number(section, data, "mount_bearing", 0.0),
            "fov": _number(section, data, "fov", math.pi / 3.0),
            "ray_count": ray_count,
            "max_range": _number(section, data, "max_range"),
        },
    )


def _parse_joint(index: int, data: dict) -> JointSpec:
    section = f"chain.joints[{index}]"
    if not isinstance(data, dict):
        raise ScenarioError(f"{section}: expected an object")
    allowed = {
        "name",
        "axis",
        "link_length",
        "link_mass",
        "com_offset",
        "stiffness",
        "coulomb_friction",
        "viscous_friction",
        "angle_limits",
    }
    _check_keys(section, data, allowed)
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError(f"{section}.name: expected a non-empty string")
    kwargs = {
        "name": name,
        "axis": _enum(section, "axis", JointAxis, data.get("axis", "pitch")),
        "link_length": _number(section, data, "link_length"),
        "link_mass": _number(section, data, "link_mass"),
        "com_offset": _number(section, data, "com_offset"),
        "stiffness": _number(section, data, "stiffness", 100.0),
        "coulomb_friction": _number(section, data, "coulomb_friction", 0.5),
        "viscous_friction": _number(section, data, "viscous_friction", 0.1),
    }
    if "angle_limits" in data:
        kwargs["angle_limits"] = _pair(section, data, "angle_limits")
    return _build(section, JointSpec, kwargs)


def _parse_push(index: int, data: dict, specs: tuple[JointSpec, ...]) -> PushInput:
    section = f"pushes[{index}]"
    if not isinstance(data, dict):
        raise ScenarioError(f"{section}: expected an object")
    _check_keys(section, data, {"force", "link_index", "application_distance", "start", "end"})
    link_index = data.get("link_index")
    if isinstance(link_index, bool) or not isinstance(link_index, int):
        raise ScenarioError(f"{section}.link_index: expected an integer")
    if not 0 <= link_index < len(specs):
        raise ScenarioError(f"{section}.link_index: no link {link_index} in a {len(specs)}-joint chain")
    distance = _number(section, data, "application_distance")
    if not 0.0 <= distance <= specs[link_index].link_length:
        raise ScenarioError(
            f"{section}.application_distance: {distance} outside link of length "
            f"{specs[link_index].link_length}"
        )
    return _build(
        section,
        PushInput,
        {
            "force": _pair(section, data, "force"),
            "link_index": link_index,
            "application_distance": distance,
            "start": _number(section, data, "start"),
            "end": _number(section, data, "end"),
        },
    )


def parse_scenario(data: dict, default_id: str = "scenario") -> Scenario:
    """Build a validated Scenario from parsed JSON data."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario: expected a top-level object")
    top = {
        "id",
        "world",
        "chain",
        "control",
        "estimator",
        "compliance",
        "limits",
        "start",
        "pushes",
        "duration_s",
        "dt",
        "seed",
    }
    _check_keys("scenario", data, top)

    scenario_id = data.get("id", default_id)
    if not isinstance(scenario_id, str) or not scenario_id:
        raise ScenarioError("scenario.id: expected a non-empty string")

    world_data = data.get("world", {})
    if not isinstance(world_data, dict):
        raise ScenarioError("world: expected an object")
    _check_keys("world", world_data, {"obstacles", "sensors"})
    obstacles_data = world_data.get("obstacles", [])
    if not isinstance(obstacles_data, list):
        raise ScenarioError("world.obstacles: expected a list")
    obstacles = tuple(_parse_obstacle(i, ob) for i, ob in enumerate(obstacles_data))
    sensors_data = world_data.get("sensors", "default")
    if sensors_data == "default":
        sensors = default_sensor_suite()
    elif isinstance(sensors_data, list):
        sensors = tuple(_parse_sensor(i, s) for i, s in enumerate(sensors_data))
    else:
        raise ScenarioError("world.sensors: expected 'default' or a list")
    world = World(obstacles=obstacles, sensors=sensors)

    chain_data = data.get("chain", {})
    if not isinstance(chain_data, dict):
        raise ScenarioError("chain: expected an object")
    _check_keys("chain", chain_data, {"gravity", "noise_std", "joints"})
    gravity = _number("chain", chain_data, "gravity", 9.81)
    noise_std = _number("chain", chain_data, "noise_std", 0.0)
    joints_data = chain_data.get("joints", "default")
    if joints_data == "default":
        specs = default_chain(gravity).specs
    elif isinstance(joints_data, list):
        specs = tuple(_parse_joint(i, j) for i, j in enumerate(joints_data))
        _build("chain", KinematicChain, {"specs": specs, "gravity": gravity})
    else:
        raise ScenarioError("chain.joints: expected 'default' or a list")

    control_data = dict(data.get("control", {}))
    if not isinstance(control_data, dict):
        raise ScenarioError("control: expected an object")
    if "loop" in control_data:
        control_data["loop"] = _enum("control", "loop", LoopMode, control_data["loop"])
    if "side_motion" in control_data:
        control_data["side_motion"] = _enum(
            "control", "side_motion", SideMotionMode, control_data["side_motion"]
        )
    control = _build("control", ControlConfig, control_data)

    estimator_data = data.get("estimator", {})
    if not isinstance(estimator_data, dict):
        raise ScenarioError("estimator: expected an object")
    estimator = _build("estimator", EstimatorConfig, estimator_data)
    for joint_name in (estimator.pitch_joint, estimator.roll_joint):
        if all(spec.name != joint_name for spec in specs):
            raise ScenarioError(f"estimator: joint {joint_name!r} not in chain")

    compliance_data = data.get("compliance", {})
    if not isinstance(compliance_data, dict):
        raise ScenarioError("compliance: expected an object")
    compliance_params = _build("compliance", ComplianceParams, compliance_data)

    limits_data = data.get("limits", {})
    if not isinstance(limits_data, dict):
        raise ScenarioError("limits: expected an object")
    limits = _build("limits", MotionLimits, limits_data)

    start_data = data.get("start", {})
    if not isinstance(start_data, dict):
        raise ScenarioError("start: expected an object")
    _check_keys("start", start_data, {"pose"})
    if "pose" in start_data:
        value = start_data["pose"]
        if (
            not isinstance(value, list)
            or len(value) != 3
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
        ):
            raise ScenarioError("start.pose: expected [x, y, heading]")
        start_pose = Pose(float(value[0]), float(value[1]), float(value[2]))
    else:
        start_pose = Pose(0.0, 0.0, 0.0)

    pushes_data = data.get("pushes", [])
    if not isinstance(pushes_data, list):
        raise ScenarioError("pushes: expected a list")
    pushes = tuple(_parse_push(i, p, specs) for i, p in enumerate(pushes_data))

    duration_s = _number("scenario", data, "duration_s")
    if duration_s < 0.0:
        raise ScenarioError("scenario.duration_s: must be non-negative")
    dt = _number("scenario", data, "dt", 0.02)
    if not 0.0 < dt <= 0.1:
        raise ScenarioError("scenario.dt: must be in (0, 0.1]")
    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ScenarioError("scenario.seed: expected an integer")

    return Scenario(
        id=scenario_id,
        world=world,
        joint_specs=specs,
        gravity=gravity,
        noise_std=noise_std,
        start_pose=start_pose,
        control=control,
        estimator=estimator,
        compliance=compliance_params,
        limits=limits,
        pushes=pushes,
        duration_s=duration_s,
        dt=dt,
        seed=seed,
    )


def load_scenario(path: str | Path) -> Scenario:
    """Parse and validate a scenario file; errors carry a position or field."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"{path.name}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_scenario(data, default_id=path.stem)


def obstacle_to_json(obstacle: Obstacle) -> dict:
    """JSON-friendly obstacle description, matching the scenario schema."""
    if isinstance(obstacle, Circle):
        return {"kind": "circle", "center": list(obstacle.center), "radius": obstacle.radius}
    return {"kind": "segment", "p1": list(obstacle.p1), "p2": list(obstacle.p2)}


def sensor_to_json(sensor: RangeSensor) -> dict:
    """JSON-friendly sensor description, matching the scenario schema."""
    return {
        "kind": sensor.kind.value,
        "mount_bearing": sensor.mount_bearing,
        "fov": sensor.fov,
        "ray_count": sensor.ray_count,
        "max_range": sensor.max_range,
    }
