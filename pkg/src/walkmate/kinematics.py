"""Planar joint-chain statics and simulated joint-level sensing.

The chain is a serial linkage articulating in a single vertical plane. The
first coordinate of the plane is horizontal, the second points up, and joint
angles are measured from the upright direction, so a chain with all angles at
zero stands straight up. Lateral and fore-aft pushes are handled by evaluating
the same chain geometry in two orthogonal planes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np


class JointAxis(Enum):
    PITCH = "pitch"
    ROLL = "roll"


@dataclass(frozen=True)
class JointSpec:
    """Static description of one joint and the link it carries."""

    name: str
    axis: JointAxis
    link_length: float
    link_mass: float
    com_offset: float
    stiffness: float
    coulomb_friction: float = 0.5
    viscous_friction: float = 0.1
    angle_limits: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self) -> None:
        if self.link_length <= 0.0:
            raise ValueError(f"joint {self.name!r}: link_length must be positive")
        if self.stiffness <= 0.0:
            raise ValueError(f"joint {self.name!r}: stiffness must be positive")
        if self.coulomb_friction < 0.0:
            raise ValueError(f"joint {self.name!r}: coulomb_friction must be non-negative")
        if not 0.0 <= self.com_offset <= self.link_length:
            raise ValueError(f"joint {self.name!r}: com_offset must lie on the link")
        lo, hi = self.angle_limits
        if lo >= hi:
            raise ValueError(f"joint {self.name!r}: angle_limits must satisfy min < max")


@dataclass(frozen=True)
class JointState:
    """Commanded/sensed angles and the torque decomposition of one joint.

    ``tau_total`` is what the joint reports; ``tau_m`` is the gravity-hold
    share and ``tau_f`` the friction share, so subtracting both recovers the
    externally applied torque.
    """

    theta_c: float = 0.0
    theta_s: float = 0.0
    theta_dot: float = 0.0
    tau_total: float = 0.0
    tau_m: float = 0.0
    tau_f: float = 0.0


@dataclass
class KinematicChain:
    """Ordered base-first chain of joints articulating in one plane."""

    specs: tuple[JointSpec, ...]
    states: list[JointState] = field(default_factory=list)
    gravity: float = 9.81

    def __post_init__(self) -> None:
        self.specs = tuple(self.specs)
        if len(self.specs) < 2:
            raise ValueError("chain needs at least 2 joints")
        if not self.states:
            self.states = [JointState() for _ in self.specs]
        if len(self.states) != len(self.specs):
            raise ValueError("one state per joint spec required")
        for spec, state in zip(self.specs, self.states):
            lo, hi = spec.angle_limits
            if not lo <= state.theta_s <= hi:
                raise ValueError(f"joint {spec.name!r}: theta_s outside angle_limits")

    def __len__(self) -> int:
        return len(self.specs)

    def index_of(self, name: str) -> int:
        for i, spec in enumerate(self.specs):
            if spec.name == name:
                return i
        raise ValueError(f"chain has no joint named {name!r}")

    def state_of(self, name: str) -> JointState:
        return self.states[self.index_of(name)]

    def commanded_angles(self) -> np.ndarray:
        return np.array([s.theta_c for s in self.states])


@dataclass(frozen=True)
class ContactForce:
    """A planar force applied somewhere along one link of the chain.

    ``force`` is (horizontal, vertical-up) newtons in the chain's plane;
    ``application_distance`` is measured along the link from its joint.
    """

    link_index: int
    application_distance: float
    force: tuple[float, float]


def validate_contact(chain: KinematicChain, contact: ContactForce) -> None:
    """Raise ValueError if the contact does not land on a link of the chain."""
    if not 0 <= contact.link_index < len(chain):
        raise ValueError(
            f"contact link_index {contact.link_index} out of range for a "
            f"{len(chain)}-joint chain"
        )
    link = chain.specs[contact.link_index]
    if not 0.0 <= contact.application_distance <= link.link_length:
        raise ValueError(
            f"application_distance {contact.application_distance} outside link "
            f"{link.name!r} of length {link.link_length}"
        )


def joint_positions(chain: KinematicChain) -> np.ndarray:
    """Planar positions of each joint at the commanded configuration."""
    phi = np.cumsum(chain.commanded_angles())
    points = np.zeros((len(chain) + 1, 2))
    for i, spec in enumerate(chain.specs):
        direction = np.array([math.sin(phi[i]), math.cos(phi[i])])
        points[i + 1] = points[i] + spec.link_length * direction
    return points[:-1]


def _com_positions(chain: KinematicChain) -> np.ndarray:
    phi = np.cumsum(chain.commanded_angles())
    joints = joint_positions(chain)
    coms = np.zeros((len(chain), 2))
    for i, spec in enumerate(chain.specs):
        direction = np.array([math.sin(phi[i]), math.cos(phi[i])])
        coms[i] = joints[i] + spec.com_offset * direction
    return coms


def contact_point(chain: KinematicChain, contact: ContactForce) -> np.ndarray:
    """Planar position of a contact at the commanded configuration."""
    validate_contact(chain, contact)
    phi = np.cumsum(chain.commanded_angles())
    joints = joint_positions(chain)
    i = contact.link_index
    direction = np.array([math.sin(phi[i]), math.cos(phi[i])])
    return joints[i] + contact.application_distance * direction


def static_hold_torques(chain: KinematicChain) -> np.ndarray:
    """Per-joint torque holding the commanded posture against gravity.

    Equals the negated gradient of gravitational potential energy with
    respect to the joint angles; independent of any contact force.
    """
    joints = joint_positions(chain)
    coms = _com_positions(chain)
    masses = np.array([s.link_mass for s in chain.specs])
    torques = np.zeros(len(chain))
    for i in range(len(chain)):
        arms = coms[i:, 0] - joints[i, 0]
        torques[i] = chain.gravity * np.dot(masses[i:], arms)
    return torques


def propagate_contact_force(chain: KinematicChain, contact: ContactForce) -> np.ndarray:
    """External torque each joint must balance for a contact force on the chain.

    Jacobian-transpose statics: joints above the contact link see exactly
    zero, joints at or below it see (p - q_i) x F for contact point p and
    joint position q_i. Linear in the force vector.
    """
    validate_contact(chain, contact)
    point = contact_point(chain, contact)
    joints = joint_positions(chain)
    fx, fz = contact.force
    torques = np.zeros(len(chain))
    for i in range(contact.link_index + 1):
        torques[i] = (point[1] - joints[i, 1]) * fx - (point[0] - joints[i, 0]) * fz
    return torques


def sensed_states(
    chain: KinematicChain,
    tau_ext: np.ndarray,
    noise_std: float,
    rng: np.random.Generator,
    tau_m: np.ndarray | None = None,
) -> list[JointState]:
    """Joint states the robot would report under the given external torques.

    Each joint reports tau_total = tau_m + tau_f + tau_ext + gaussian noise,
    and a sensed angle deflected from the commanded one by tau_ext/stiffness
    (series-elastic model), clamped into the joint's angle limits. Hold
    torques default to this chain's statics; a caller resolving several
    articulation planes can pass its own.
    """
    if noise_std < 0.0:
        raise ValueError("noise_std must be non-negative")
    if tau_m is None:
        tau_m = static_hold_torques(chain)
    noise = rng.normal(0.0, noise_std, len(chain)) if noise_std > 0.0 else np.zeros(len(chain))
    updated = []
    for spec, state, te, tm, eps in zip(chain.specs, chain.states, tau_ext, tau_m, noise):
        te, tm, eps = float(te), float(tm), float(eps)
        tau_f = spec.coulomb_friction * float(np.sign(state.theta_dot))
        tau_f += spec.viscous_friction * state.theta_dot
        lo, hi = spec.angle_limits
        theta_s = min(max(state.theta_c + te / spec.stiffness, lo), hi)
        updated.append(
            replace(
                state,
                theta_s=theta_s,
                tau_total=tm + tau_f + te + eps,
                tau_m=tm,
                tau_f=tau_f,
            )
        )
    return updated


def simulate_sensing(
    chain: KinematicChain,
    contact: ContactForce,
    noise_std: float = 0.0,
    seed: int = 0,
) -> list[JointState]:
    """Sensed joint states for one contact force; bit-reproducible per seed."""
    tau_ext = propagate_contact_force(chain, contact)
    return sensed_states(chain, tau_ext, noise_std, np.random.default_rng(seed))


def default_chain(gravity: float = 9.81) -> KinematicChain:
    """Knee-hip-torso stand-in chain used by the simulator.

    Three actuated joints: knee pitch carrying the shank-to-hip link, hip
    pitch carrying the pelvis link, and hip roll carrying the torso link.
    Masses total 28 kg.
    """
    specs = (
        JointSpec(
            name="knee_pitch",
            axis=JointAxis.PITCH,
            link_length=0.33,
            link_mass=10.0,
            com_offset=0.165,
            stiffness=100.0,
        ),
        JointSpec(
            name="hip_pitch",
            axis=JointAxis.PITCH,
            link_length=0.30,
            link_mass=8.0,
            com_offset=0.15,
            stiffness=100.0,
        ),
        JointSpec(
            name="hip_roll",
            axis=JointAxis.ROLL,
            link_length=0.45,
            link_mass=10.0,
            com_offset=0.225,
            stiffness=100.0,
        ),
    )
    return KinematicChain(specs=specs, gravity=gravity)
