"""SE(3) rigid transforms and pose error metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from ..errors import InvalidParameter

ORTHO_TOL = 1e-9


def _vec3(x) -> np.ndarray:
    return np.asarray(x, dtype=float).reshape(3)


@dataclass(frozen=True, eq=False)
class RigidTransform:
    """Rotation matrix (3x3, det +1) plus translation in meters.

    Maps points of the source frame into the destination frame via R @ p + t.
    Immutable; the wrapped arrays are marked read-only.
    """

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        R = np.array(self.rotation, dtype=float).reshape(3, 3)
        t = np.array(self.translation, dtype=float).reshape(3)
        residual = np.abs(R.T @ R - np.eye(3)).max()
        if residual > ORTHO_TOL:
            raise InvalidParameter(f"rotation not orthonormal (residual {residual:.3e})")
        if abs(np.linalg.det(R) - 1.0) > ORTHO_TOL:
            raise InvalidParameter("rotation must be proper (det +1)")
        R.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", t)

    @staticmethod
    def identity() -> "RigidTransform":
        return RigidTransform(np.eye(3), np.zeros(3))

    @staticmethod
    def from_axis_angle(axis, angle: float, translation=(0.0, 0.0, 0.0)) -> "RigidTransform":
        a = _vec3(axis)
        n = np.linalg.norm(a)
        if n == 0.0:
            raise InvalidParameter("axis must be non-zero")
        return RigidTransform(Rotation.from_rotvec(a / n * angle).as_matrix(), translation)

    @staticmethod
    def from_quat(quat_xyzw, translation=(0.0, 0.0, 0.0)) -> "RigidTransform":
        q = np.asarray(quat_xyzw, dtype=float).reshape(4)
        n = np.linalg.norm(q)
        if abs(n - 1.0) > 1e-6:
            raise InvalidParameter("quaternion must be unit norm")
        return RigidTransform(Rotation.from_quat(q / n).as_matrix(), translation)

    @staticmethod
    def rot_x(angle: float, translation=(0.0, 0.0, 0.0)) -> "RigidTransform":
        return RigidTransform.from_axis_angle((1, 0, 0), angle, translation)

    @staticmethod
    def rot_y(angle: float, translation=(0.0, 0.0, 0.0)) -> "RigidTransform":
        return RigidTransform.from_axis_angle((0, 1, 0), angle, translation)

    @staticmethod
    def rot_z(angle: float, translation=(0.0, 0.0, 0.0)) -> "RigidTransform":
        return RigidTransform.from_axis_angle((0, 0, 1), angle, translation)

    @staticmethod
    def translate(t) -> "RigidTransform":
        return RigidTransform(np.eye(3), t)

    def compose(self, other: "RigidTransform") -> "RigidTransform":
        """self after other: (self @ other).apply(p) == self.apply(other.apply(p))."""
        return RigidTransform(
            orthonormalize(self.rotation @ other.rotation),
            self.rotation @ other.translation + self.translation,
        )

    def __matmul__(self, other: "RigidTransform") -> "RigidTransform":
        return self.compose(other)

    def invert(self) -> "RigidTransform":
        return RigidTransform(self.rotation.T, -(self.rotation.T @ self.translation))

    def apply(self, points) -> np.ndarray:
        """Transform one point (3,) or a stack (N, 3)."""
        p = np.asarray(points, dtype=float)
        if p.ndim == 1:
            return self.rotation @ p + self.translation
        return p @ self.rotation.T + self.translation

    def quat_xyzw(self) -> np.ndarray:
        return Rotation.from_matrix(self.rotation).as_quat()

    def matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    def isclose(self, other: "RigidTransform", atol: float = 1e-9) -> bool:
        dt, dr = pose_error(self, other)
        return dt <= atol and dr <= atol


def orthonormalize(R: np.ndarray) -> np.ndarray:
    """Nearest proper rotation matrix (Frobenius sense) via SVD."""
    U, _, Vt = np.linalg.svd(np.asarray(R, dtype=float))
    D = np.diag([1.0, 1.0, np.sign(np.linalg.det(U @ Vt))])
    return U @ D @ Vt


def rotation_angle(R: np.ndarray) -> float:
    """Rotation angle in radians of a rotation matrix.

    Quaternion-based, so small angles are resolved far below the arccos
    precision floor.
    """
    return float(Rotation.from_matrix(np.asarray(R, dtype=float)).magnitude())


def rotation_log(R: np.ndarray) -> np.ndarray:
    """Axis-angle vector (rotvec) of a rotation matrix; robust near pi."""
    return Rotation.from_matrix(orthonormalize(R)).as_rotvec()


def pose_error(a: RigidTransform, b: RigidTransform) -> tuple[float, float]:
    """(translation error m, rotation error rad) between two poses."""
    dt = float(np.linalg.norm(a.translation - b.translation))
    dr = rotation_angle(a.rotation @ b.rotation.T)
    return dt, dr
