"""Point-to-point ICP with distance-gated correspondence rejection."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ..errors import EmptyInput, InvalidParameter, NoCorrespondences
from ..geom import PointCloud, RigidTransform
from .kabsch import kabsch_fit


@dataclass(frozen=True)
class IcpParams:
    max_iterations: int = 60
    max_correspondence_distance: float = 0.25
    convergence_tolerance: float = 1e-7
    min_inlier_fraction: float = 0.25

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InvalidParameter("max_iterations must be >= 1")
        if self.max_correspondence_distance <= 0:
            raise InvalidParameter("max_correspondence_distance must be > 0")
        if self.convergence_tolerance <= 0:
            raise InvalidParameter("convergence_tolerance must be > 0")
        if not 0.0 <= self.min_inlier_fraction <= 1.0:
            raise InvalidParameter("min_inlier_fraction must be in [0, 1]")


@dataclass(frozen=True)
class RegistrationResult:
    """Outcome of a rigid registration; transform maps source into target coordinates."""

    transform: RigidTransform
    rmse: float
    inlier_fraction: float
    iterations: int
    converged: bool
    rmse_history: tuple[float, ...] = field(default=(), repr=False)


def icp(
    source: PointCloud,
    target: PointCloud,
    seed: RigidTransform,
    params: IcpParams = IcpParams(),
) -> RegistrationResult:
    """Iterate gated nearest-neighbor correspondence plus least-squares refit.

    The refit is computed from the original source points each iteration, so
    the returned transform is the full target_from_source map including the
    seed. Converged means the RMSE delta dropped below the tolerance while the
    inlier fraction met the gate.
    """
    if len(source) == 0 or len(target) == 0:
        raise EmptyInput("icp requires non-empty source and target clouds")
    tree = cKDTree(target.points)
    src = source.points
    transform = seed
    prev_rmse: float | None = None
    history: list[float] = []
    inlier_fraction = 0.0
    delta_ok = False
    iterations = 0

    for it in range(params.max_iterations):
        moved = transform.apply(src)
        dists, idx = tree.query(moved, k=1)
        mask = dists <= params.max_correspondence_distance
        n_in = int(mask.sum())
        if n_in == 0:
            raise NoCorrespondences(
                f"no correspondences within {params.max_correspondence_distance} m at iteration {it}"
            )
        inlier_fraction = n_in / src.shape[0]
        pairs_s = src[mask]
        pairs_t = target.points[idx[mask]]
        new_transform = kabsch_fit(pairs_s, pairs_t)
        resid = new_transform.apply(pairs_s) - pairs_t
        rmse = float(np.sqrt((resid * resid).sum(axis=1).mean()))
        if prev_rmse is not None and rmse > prev_rmse:
            # gating admitted a worse refit; keep the previous iterate
            break
        transform = new_transform
        history.append(rmse)
        iterations = it + 1
        if prev_rmse is not None and abs(prev_rmse - rmse) < params.convergence_tolerance:
            delta_ok = True
            prev_rmse = rmse
            break
        prev_rmse = rmse

    rmse_final = history[-1] if history else float("inf")
    converged = delta_ok and inlier_fraction >= params.min_inlier_fraction
    return RegistrationResult(
        transform=transform,
        rmse=rmse_final,
        inlier_fraction=inlier_fraction,
        iterations=iterations,
        converged=converged,
        rmse_history=tuple(history),
    )
