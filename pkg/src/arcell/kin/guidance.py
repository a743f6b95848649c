"""Hand guidance: grab detection and joint-propagated link dragging."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParameter
from ..geom.primitives import point_segment_distance
from .chain import KinematicChain, fk_arrays, jacobian, link_capsules_world

MAX_GUIDANCE_STEP = 0.1  # m, UI streams small increments
RESIDUAL_STOP = 1e-6  # m


def grab_detect(chain: KinematicChain, q, hand) -> int | None:
    """Nearest link whose capsule surface is within its grab radius of the hand.

    Ties resolve to the more distal link. Returns None when nothing is in reach.
    """
    hand = np.asarray(hand, dtype=float).reshape(3)
    best: int | None = None
    best_d = np.inf
    for i, caps in enumerate(link_capsules_world(chain, q)):
        d = min(point_segment_distance(hand, a, b) - r for a, b, r in caps)
        if d <= chain.links[i].grab_radius and d <= best_d:
            best = i
            best_d = d
    return best


@dataclass(frozen=True)
class GuidanceResult:
    q: np.ndarray
    residual: float
    residual_trace: tuple[float, ...]  # |d| before each joint update, then after the last


def hand_guidance_step(
    chain: KinematicChain,
    q,
    link: int,
    delta,
    lambda_g: float = 1e-6,
) -> GuidanceResult:
    """Absorb a desired grab-point displacement into the chain, parent joint first.

    The grab point is the distal end of the grabbed link. For each joint from
    the link's own joint toward the base, the joint takes the damped projection
    of the remaining displacement onto its linear Jacobian column (clamped to
    limits), and the consumed part is subtracted. Whatever no joint can perform
    is discarded and reported as the residual.
    """
    if not 0 <= link < chain.n:
        raise InvalidParameter(f"link index {link} out of range")
    if lambda_g < 0:
        raise InvalidParameter("lambda_g must be >= 0")
    d = np.asarray(delta, dtype=float).reshape(3).copy()
    if np.linalg.norm(d) > MAX_GUIDANCE_STEP + 1e-12:
        raise InvalidParameter(f"guidance step larger than {MAX_GUIDANCE_STEP} m")
    lo, hi = chain.limits_arrays()
    q = np.asarray(q, dtype=float).reshape(chain.n).copy()

    Rs, ts = fk_arrays(chain, q)
    grab_world = ts[link + 1]
    local = Rs[link].T @ (grab_world - ts[link])
    # columns fixed at the entry configuration; deltas are small by contract
    J_lin = jacobian(chain, q, attach=(link, local))[:3, :]

    trace = [float(np.linalg.norm(d))]
    for j in range(link, -1, -1):
        c = J_lin[:, j]
        cc = float(c @ c)
        dq = float(c @ d) / (cc + lambda_g) if cc + lambda_g > 0 else 0.0
        new_qj = float(np.clip(q[j] + dq, lo[j], hi[j]))
        dq = new_qj - q[j]
        q[j] = new_qj
        d -= c * dq
        trace.append(float(np.linalg.norm(d)))
        if trace[-1] < RESIDUAL_STOP:
            break
    return GuidanceResult(q=q, residual=float(np.linalg.norm(d)), residual_trace=tuple(trace))
