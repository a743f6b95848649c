"""Serial-manipulator kinematics: FK, Jacobian, damped-least-squares IK, hand guidance."""

from .chain import (
    Capsule,
    Joint,
    JointType,
    KinematicChain,
    LinkGeometry,
    fk,
    fk_arrays,
    jacobian,
    joint_motion_bounds,
    link_capsules_world,
)
from .guidance import GuidanceResult, grab_detect, hand_guidance_step
from .ik import IkParams, IkResult, ik_solve
from .models import chain_from_dict, chain_to_dict, load_robot, pose_from_dict, pose_to_dict, save_robot

__all__ = [
    "Capsule",
    "GuidanceResult",
    "IkParams",
    "IkResult",
    "Joint",
    "JointType",
    "KinematicChain",
    "LinkGeometry",
    "chain_from_dict",
    "chain_to_dict",
    "fk",
    "fk_arrays",
    "grab_detect",
    "hand_guidance_step",
    "ik_solve",
    "jacobian",
    "joint_motion_bounds",
    "link_capsules_world",
    "load_robot",
    "pose_from_dict",
    "pose_to_dict",
    "save_robot",
]
