"""Foundational geometry: transforms, point clouds, meshes, sampling and queries."""

from .cloud import Aabb, PointCloud, crop_aabb, knn_query, voxel_downsample
from .io import load_cloud_ply, load_mesh_obj, save_cloud_ply, save_mesh_obj
from .mesh import TriangleMesh, merge_meshes, ray_mesh_intersect, sample_mesh_surface
from .transform import (
    RigidTransform,
    orthonormalize,
    pose_error,
    rotation_angle,
    rotation_log,
)

__all__ = [
    "Aabb",
    "PointCloud",
    "RigidTransform",
    "TriangleMesh",
    "crop_aabb",
    "knn_query",
    "load_cloud_ply",
    "load_mesh_obj",
    "merge_meshes",
    "orthonormalize",
    "pose_error",
    "ray_mesh_intersect",
    "rotation_angle",
    "rotation_log",
    "sample_mesh_surface",
    "save_cloud_ply",
    "save_mesh_obj",
    "voxel_downsample",
]
