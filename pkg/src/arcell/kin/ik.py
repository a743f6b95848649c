"""Damped-least-squares inverse kinematics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParameter
from ..geom import RigidTransform, rotation_log
from .chain import KinematicChain, fk_arrays, jacobian


@dataclass(frozen=True)
class IkParams:
    damping: float = 0.05
    max_iterations: int = 200
    position_tolerance: float = 1e-5
    orientation_tolerance: float = 1e-4
    step_limit: float = 0.3

    def __post_init__(self):
        for name in ("damping", "max_iterations", "position_tolerance", "orientation_tolerance", "step_limit"):
            if getattr(self, name) <= 0:
                raise InvalidParameter(f"IkParams.{name} must be > 0")


@dataclass(frozen=True)
class IkResult:
    q: np.ndarray
    converged: bool
    iterations: int
    position_error: float
    orientation_error: float


def ik_solve(
    chain: KinematicChain,
    target: RigidTransform,
    q0,
    params: IkParams = IkParams(),
) -> IkResult:
    """Iterate dq = J^T (J J^T + lambda^2 I)^-1 e toward the target pose.

    Steps are clamped to params.step_limit (infinity norm) and joints are
    clamped to their limits, so the result never leaves the limit box.
    Non-convergence is reported through the flag; the best visited state is
    returned.
    """
    lo, hi = chain.limits_arrays()
    q = np.clip(np.asarray(q0, dtype=float).reshape(chain.n), lo, hi)
    eye6 = np.eye(6)

    best_q = q.copy()
    best_score = np.inf
    best_err = (np.inf, np.inf)
    iterations = 0
    converged = False

    for it in range(params.max_iterations + 1):
        Rs, ts = fk_arrays(chain, q)
        e_pos = target.translation - ts[-1]
        e_rot = rotation_log(target.rotation @ Rs[-1].T)
        pos_err = float(np.linalg.norm(e_pos))
        ori_err = float(np.linalg.norm(e_rot))
        score = pos_err / params.position_tolerance + ori_err / params.orientation_tolerance
        if score < best_score:
            best_score = score
            best_q = q.copy()
            best_err = (pos_err, ori_err)
        if pos_err < params.position_tolerance and ori_err < params.orientation_tolerance:
            converged = True
            break
        if it == params.max_iterations:
            break
        J = jacobian(chain, q)
        e = np.concatenate([e_pos, e_rot])
        # error-proportional damping: full params.damping in the far field,
        # vanishing near the solution so small singular values still converge
        lam = params.damping * min(1.0, float(np.linalg.norm(e)))
        dq = J.T @ np.linalg.solve(J @ J.T + (lam**2 + 1e-14) * eye6, e)
        step = float(np.abs(dq).max())
        if step > params.step_limit:
            dq *= params.step_limit / step
        q = np.clip(q + dq, lo, hi)
        iterations = it + 1

    return IkResult(
        q=best_q,
        converged=converged,
        iterations=iterations,
        position_error=best_err[0],
        orientation_error=best_err[1],
    )
