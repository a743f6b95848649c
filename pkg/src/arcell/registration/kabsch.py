"""Least-squares rigid fit of corresponded point pairs (SVD with reflection guard)."""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateInput
from ..geom import RigidTransform

RANK_TOL = 1e-12


def kabsch_fit(source: np.ndarray, target: np.ndarray) -> RigidTransform:
    """Rigid transform minimizing sum ||T @ s_i - t_i||^2 over corresponded pairs.

    Needs at least 3 non-collinear pairs; reflections are excluded by the
    determinant correction. Raises DegenerateInput for rank-deficient
    configurations (collinear or coincident points).
    """
    s = np.asarray(source, dtype=float).reshape(-1, 3)
    t = np.asarray(target, dtype=float).reshape(-1, 3)
    if s.shape != t.shape:
        raise DegenerateInput("source/target correspondence count mismatch")
    if s.shape[0] < 3:
        raise DegenerateInput(f"need >= 3 correspondences, got {s.shape[0]}")
    s_mean = s.mean(axis=0)
    t_mean = t.mean(axis=0)
    H = (s - s_mean).T @ (t - t_mean)
    U, sing, Vt = np.linalg.svd(H)
    if sing[1] <= RANK_TOL * max(sing[0], RANK_TOL):
        raise DegenerateInput("correspondences are collinear or coincident")
    D = np.diag([1.0, 1.0, np.sign(np.linalg.det(Vt.T @ U.T))])
    R = Vt.T @ D @ U.T
    return RigidTransform(R, t_mean - R @ s_mean)


def fit_residual_rmse(transform: RigidTransform, source: np.ndarray, target: np.ndarray) -> float:
    s = np.asarray(source, dtype=float).reshape(-1, 3)
    t = np.asarray(target, dtype=float).reshape(-1, 3)
    d = transform.apply(s) - t
    return float(np.sqrt((d * d).sum(axis=1).mean()))
