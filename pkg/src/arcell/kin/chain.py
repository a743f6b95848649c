"""Serial-manipulator model, forward kinematics and geometric Jacobian."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import InvalidConfiguration, InvalidParameter
from ..geom import RigidTransform

AXIS_TOL = 1e-9


class JointType(str, Enum):
    REVOLUTE = "revolute"
    PRISMATIC = "prismatic"


@dataclass(frozen=True, eq=False)
class Capsule:
    """Sphere-swept segment in the owning link's frame."""

    p0: np.ndarray
    p1: np.ndarray
    radius: float

    def __post_init__(self):
        p0 = np.array(self.p0, dtype=float).reshape(3)
        p1 = np.array(self.p1, dtype=float).reshape(3)
        if self.radius <= 0:
            raise InvalidParameter("capsule radius must be > 0")
        p0.setflags(write=False)
        p1.setflags(write=False)
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p1", p1)


@dataclass(frozen=True, eq=False)
class LinkGeometry:
    capsules: tuple[Capsule, ...]
    grab_radius: float = 0.12

    def __post_init__(self):
        if not self.capsules:
            raise InvalidParameter("each link needs at least one capsule")
        if self.grab_radius < 0:
            raise InvalidParameter("grab radius must be >= 0")
        object.__setattr__(self, "capsules", tuple(self.capsules))


@dataclass(frozen=True, eq=False)
class Joint:
    type: JointType
    origin: RigidTransform
    axis: np.ndarray
    limits: tuple[float, float]

    def __post_init__(self):
        axis = np.array(self.axis, dtype=float).reshape(3)
        if abs(np.linalg.norm(axis) - 1.0) > AXIS_TOL:
            raise InvalidParameter("joint axis must be unit norm")
        lo, hi = float(self.limits[0]), float(self.limits[1])
        if not lo < hi:
            raise InvalidParameter("joint limits must satisfy lo < hi")
        axis.setflags(write=False)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "limits", (lo, hi))
        object.__setattr__(self, "type", JointType(self.type))


@dataclass(frozen=True, eq=False)
class KinematicChain:
    """Serial chain: joint i's parent is joint i-1; link i is the body driven by joint i."""

    joints: tuple[Joint, ...]
    links: tuple[LinkGeometry, ...]
    tool: RigidTransform = field(default_factory=RigidTransform.identity)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "joints", tuple(self.joints))
        object.__setattr__(self, "links", tuple(self.links))
        if len(self.joints) < 1:
            raise InvalidParameter("chain needs at least one joint")
        if len(self.links) != len(self.joints):
            raise InvalidParameter("need exactly one link geometry per joint")

    @property
    def n(self) -> int:
        return len(self.joints)

    def limits_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.array([j.limits[0] for j in self.joints])
        hi = np.array([j.limits[1] for j in self.joints])
        return lo, hi

    def clamp(self, q) -> np.ndarray:
        lo, hi = self.limits_arrays()
        return np.clip(np.asarray(q, dtype=float).reshape(self.n), lo, hi)

    def within_limits(self, q, tol: float = 1e-9) -> bool:
        lo, hi = self.limits_arrays()
        qa = np.asarray(q, dtype=float).reshape(-1)
        return qa.shape[0] == self.n and bool(np.all(qa >= lo - tol) and np.all(qa <= hi + tol))


def _axis_rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    # Rodrigues, cheaper than a scipy round trip in the FK/IK hot path
    c = np.cos(angle)
    s = np.sin(angle)
    x, y, z = axis
    K = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return np.eye(3) + s * K + (1.0 - c) * (K @ K)


def _check_q(chain: KinematicChain, q) -> np.ndarray:
    qa = np.asarray(q, dtype=float).reshape(-1)
    if qa.shape[0] != chain.n:
        raise InvalidConfiguration(f"joint state has {qa.shape[0]} values, chain has {chain.n} joints")
    return qa


def fk_arrays(chain: KinematicChain, q) -> tuple[np.ndarray, np.ndarray]:
    """Raw FK: rotations (n+1, 3, 3) and positions (n+1, 3).

    Entry i < n is the frame of link i; entry n is the end-effector frame
    (last link composed with the tool transform).
    """
    qa = _check_q(chain, q)
    n = chain.n
    Rs = np.empty((n + 1, 3, 3))
    ts = np.empty((n + 1, 3))
    R = np.eye(3)
    t = np.zeros(3)
    for i, joint in enumerate(chain.joints):
        t = R @ joint.origin.translation + t
        R = R @ joint.origin.rotation
        if joint.type is JointType.REVOLUTE:
            R = R @ _axis_rotation(joint.axis, qa[i])
        else:
            t = t + R @ (joint.axis * qa[i])
        Rs[i] = R
        ts[i] = t
    Rs[n] = R @ chain.tool.rotation
    ts[n] = R @ chain.tool.translation + t
    return Rs, ts


def fk(chain: KinematicChain, q) -> list[RigidTransform]:
    """Base_from_link poses, one per link, plus the end-effector frame last."""
    Rs, ts = fk_arrays(chain, q)
    return [RigidTransform(Rs[i], ts[i]) for i in range(chain.n + 1)]


def jacobian(chain: KinematicChain, q, attach: tuple[int, np.ndarray] | None = None) -> np.ndarray:
    """Geometric Jacobian (6 x n): rows 0-2 linear (m), rows 3-5 angular (rad).

    `attach` is (link index, point in that link's frame); default is the
    end-effector origin. Columns of joints distal to the attach link are zero.
    """
    qa = _check_q(chain, q)
    Rs, ts = fk_arrays(chain, qa)
    n = chain.n
    if attach is None:
        link = n - 1
        p = ts[n]
    else:
        link, local = attach
        if not 0 <= link < n:
            raise InvalidParameter(f"attach link {link} out of range")
        p = Rs[link] @ np.asarray(local, dtype=float).reshape(3) + ts[link]
    J = np.zeros((6, n))
    for i in range(link + 1):
        joint = chain.joints[i]
        axis_world = Rs[i] @ joint.axis
        if joint.type is JointType.REVOLUTE:
            J[:3, i] = np.cross(axis_world, p - ts[i])
            J[3:, i] = axis_world
        else:
            J[:3, i] = axis_world
    return J


def attach_point_world(chain: KinematicChain, frames_ts: np.ndarray, link: int) -> np.ndarray:
    """Distal end of a link: the next frame's origin, or the EE point for the last link."""
    return frames_ts[link + 1]


def link_capsules_world(chain: KinematicChain, q) -> list[list[tuple[np.ndarray, np.ndarray, float]]]:
    """Per-link capsule endpoints in the base frame at configuration q."""
    Rs, ts = fk_arrays(chain, q)
    out = []
    for i, link in enumerate(chain.links):
        caps = []
        for c in link.capsules:
            caps.append((Rs[i] @ c.p0 + ts[i], Rs[i] @ c.p1 + ts[i], c.radius))
        out.append(caps)
    return out


def joint_motion_bounds(chain: KinematicChain) -> np.ndarray:
    """Conservative per-joint bound on workspace speed |dx/dq_j| over any link point.

    Used to convert configuration-space step sizes into workspace travel for
    collision-validation margins.
    """
    n = chain.n
    origin_norms = [float(np.linalg.norm(j.origin.translation)) for j in chain.joints]
    tool_norm = float(np.linalg.norm(chain.tool.translation))
    cap_extent = np.zeros(n)
    for i, link in enumerate(chain.links):
        ext = max(
            max(float(np.linalg.norm(c.p0)), float(np.linalg.norm(c.p1))) + c.radius
            for c in link.capsules
        )
        cap_extent[i] = ext
    bounds = np.zeros(n)
    for j in range(n):
        reach = sum(origin_norms[j + 1 :]) + tool_norm + float(cap_extent[j:].max())
        bounds[j] = reach if chain.joints[j].type is JointType.REVOLUTE else 1.0
    return bounds
