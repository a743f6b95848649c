"""Shared test utilities: random models and brute-force oracles."""

from __future__ import annotations

import numpy as np

from arcell.geom import RigidTransform
from arcell.kin import Capsule, Joint, JointType, KinematicChain, LinkGeometry


def random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_pose(rng, scale: float = 1.0) -> RigidTransform:
    return RigidTransform.from_axis_angle(
        random_unit(rng), rng.uniform(-np.pi, np.pi), rng.uniform(-scale, scale, size=3)
    )


def random_chain(rng, n_joints: int | None = None, prismatic_ok: bool = True) -> KinematicChain:
    n = int(n_joints if n_joints is not None else rng.integers(2, 7))
    joints = []
    links = []
    for _ in range(n):
        kind = JointType.PRISMATIC if (prismatic_ok and rng.random() < 0.25) else JointType.REVOLUTE
        origin = RigidTransform.from_axis_angle(
            random_unit(rng), rng.uniform(-1.0, 1.0), rng.uniform(-0.4, 0.4, size=3)
        )
        joints.append(Joint(type=kind, origin=origin, axis=random_unit(rng), limits=(-2.5, 2.5)))
        tip = rng.uniform(-0.3, 0.3, size=3)
        links.append(LinkGeometry(capsules=(Capsule(np.zeros(3), tip, 0.04),), grab_radius=0.1))
    tool = RigidTransform.translate(rng.uniform(-0.2, 0.2, size=3))
    return KinematicChain(joints=tuple(joints), links=tuple(links), tool=tool)


def finite_difference_jacobian(chain, q, h: float = 1e-6) -> np.ndarray:
    """Central-difference geometric Jacobian at the end-effector."""
    from arcell.geom import rotation_log
    from arcell.kin import fk_arrays

    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    J = np.zeros((6, n))
    for i in range(n):
        qp = q.copy()
        qm = q.copy()
        qp[i] += h
        qm[i] -= h
        Rp, tp = fk_arrays(chain, qp)
        Rm, tm = fk_arrays(chain, qm)
        J[:3, i] = (tp[-1] - tm[-1]) / (2 * h)
        J[3:, i] = rotation_log(Rp[-1] @ Rm[-1].T) / (2 * h)
    return J


def tripod_cloud(rng, n: int = 600) -> np.ndarray:
    """Strongly asymmetric solid: three unequal legs meeting at a corner."""
    boxes = [
        ((0.0, 0.0, 0.0), (0.6, 0.15, 0.15)),
        ((0.0, 0.0, 0.0), (0.15, 0.45, 0.15)),
        ((0.0, 0.0, 0.0), (0.15, 0.15, 0.9)),
    ]
    weights = np.array([b[1][0] * b[1][1] * b[1][2] for b in boxes], dtype=float)
    weights /= weights.sum()
    counts = np.floor(weights * n).astype(int)
    counts[0] += n - counts.sum()
    pts = []
    for (lo, hi), c in zip(boxes, counts):
        pts.append(rng.uniform(lo, hi, size=(c, 3)))
    return np.vstack(pts)
