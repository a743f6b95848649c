"""Referencing: registering the HMD world frame to the robot base frame.

Frame convention: Referencing.robot_from_world maps HMD-world coordinates into
the robot base frame. Everything downstream (octrees, zones, waypoints) lives
in the robot base frame.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import NoCorrespondences, ReferencingRejected
from ..geom import Aabb, PointCloud, RigidTransform, crop_aabb
from .icp import IcpParams, RegistrationResult, icp

# seed footprint box scaled about its center before cropping, mirroring the
# "dilate the bounding box" practice
CROP_DILATION = 1.5


class ReferenceMethod(str, Enum):
    SEMI_AUTOMATIC = "semi_automatic"
    AUTOMATIC = "automatic"


@dataclass(frozen=True)
class Referencing:
    robot_from_world: RigidTransform
    quality: RegistrationResult
    method: ReferenceMethod
    created_at: float

    @property
    def world_from_robot(self) -> RigidTransform:
        return self.robot_from_world.invert()


def seeded_reference(
    scene: PointCloud,
    robot_surface: PointCloud,
    seed: RigidTransform,
    params: IcpParams,
    method: ReferenceMethod,
) -> Referencing:
    """Crop the scene around the seeded robot footprint, refine with ICP.

    `seed` is the world_from_robot guess (the user-placed hologram pose);
    `robot_surface` is sampled from the robot model at the current joint state
    in the robot base frame.
    """
    footprint = Aabb.of_points(seed.apply(robot_surface.points)).dilated(CROP_DILATION)
    scene_crop = crop_aabb(scene, footprint, keep_inside=True)
    if len(scene_crop) == 0:
        raise NoCorrespondences("no scene points inside the dilated seed footprint")
    result = icp(robot_surface, scene_crop, seed, params)
    if not result.converged:
        raise ReferencingRejected(
            f"registration rejected (rmse {result.rmse:.4g} m, "
            f"inliers {result.inlier_fraction:.2f}, {result.iterations} iterations)",
            result=result,
        )
    return Referencing(
        robot_from_world=result.transform.invert(),
        quality=result,
        method=method,
        created_at=time.time(),
    )


def semi_automatic_reference(
    scene: PointCloud,
    robot_surface: PointCloud,
    seed: RigidTransform,
    params: IcpParams = IcpParams(),
) -> Referencing:
    """Referencing from a user-placed seed hologram pose."""
    return seeded_reference(scene, robot_surface, seed, params, ReferenceMethod.SEMI_AUTOMATIC)


def referencing_from_ground_truth(world_from_robot: RigidTransform) -> Referencing:
    """Oracle referencing for simulator tests and demos."""
    result = RegistrationResult(
        transform=world_from_robot,
        rmse=0.0,
        inlier_fraction=1.0,
        iterations=0,
        converged=True,
    )
    return Referencing(
        robot_from_world=world_from_robot.invert(),
        quality=result,
        method=ReferenceMethod.SEMI_AUTOMATIC,
        created_at=time.time(),
    )
