"""Point clouds, axis-aligned boxes and the filtering/query primitives built on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, InvalidParameter
from .transform import RigidTransform


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Ordered list of 3D points in meters. May be empty; coordinates must be finite."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 3)
        if pts.size and not np.isfinite(pts).all():
            raise InvalidParameter("point cloud contains non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    @staticmethod
    def empty() -> "PointCloud":
        return PointCloud(np.zeros((0, 3)))

    def transformed(self, transform: RigidTransform) -> "PointCloud":
        return PointCloud(transform.apply(self.points))


@dataclass(frozen=True, eq=False)
class Aabb:
    """Axis-aligned box with inclusive bounds."""

    min: np.ndarray
    max: np.ndarray

    def __post_init__(self):
        lo = np.array(self.min, dtype=float).reshape(3)
        hi = np.array(self.max, dtype=float).reshape(3)
        if np.any(lo > hi):
            raise InvalidParameter("aabb min must be <= max componentwise")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "min", lo)
        object.__setattr__(self, "max", hi)

    @staticmethod
    def of_points(points: np.ndarray) -> "Aabb":
        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        if pts.shape[0] == 0:
            raise EmptyInput("cannot bound an empty point set")
        return Aabb(pts.min(axis=0), pts.max(axis=0))

    @property
    def size(self) -> np.ndarray:
        return self.max - self.min

    @property
    def center(self) -> np.ndarray:
        return (self.min + self.max) / 2.0

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.size))

    def dilated(self, factor: float) -> "Aabb":
        """Scale about the center; factor 1.2 grows every edge by 20%."""
        if factor < 0:
            raise InvalidParameter("dilation factor must be >= 0")
        half = self.size / 2.0 * factor
        return Aabb(self.center - half, self.center + half)

    def contains_mask(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        return np.all((pts >= self.min) & (pts <= self.max), axis=1)

    def intersection_volume(self, other: "Aabb") -> float:
        ext = np.minimum(self.max, other.max) - np.maximum(self.min, other.min)
        if np.any(ext <= 0):
            return 0.0
        return float(np.prod(ext))

    def volume(self) -> float:
        return float(np.prod(self.size))

    def iou(self, other: "Aabb") -> float:
        inter = self.intersection_volume(other)
        union = self.volume() + other.volume() - inter
        return inter / union if union > 0 else 0.0


def voxel_downsample(cloud: PointCloud, cell: float) -> PointCloud:
    """One point per occupied floor(p/cell) grid cell, at the cell's centroid.

    Output is ordered by ascending lexicographic cell key.
    """
    if cell <= 0:
        raise InvalidParameter("voxel cell size must be > 0")
    if len(cloud) == 0:
        return PointCloud.empty()
    keys = np.floor(cloud.points / cell).astype(np.int64)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    sums = np.zeros((uniq.shape[0], 3))
    np.add.at(sums, inverse.reshape(-1), cloud.points)
    counts = np.bincount(inverse.reshape(-1), minlength=uniq.shape[0]).astype(float)
    return PointCloud(sums / counts[:, None])


def crop_aabb(cloud: PointCloud, box: Aabb, keep_inside: bool = True) -> PointCloud:
    """Retain points with min <= p <= max (inclusive), or the complement. Order preserved."""
    if len(cloud) == 0:
        return PointCloud.empty()
    mask = box.contains_mask(cloud.points)
    if not keep_inside:
        mask = ~mask
    return PointCloud(cloud.points[mask])


def knn_query(cloud: PointCloud, query, k: int) -> list[tuple[int, float]]:
    """k nearest points by Euclidean distance, ascending; ties broken by lower index.

    k larger than the cloud returns every point, sorted.
    """
    if len(cloud) == 0:
        raise EmptyInput("knn_query on an empty cloud")
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    q = np.asarray(query, dtype=float).reshape(3)
    dists = np.linalg.norm(cloud.points - q, axis=1)
    order = np.lexsort((np.arange(len(cloud)), dists))
    take = order[: min(k, len(cloud))]
    return [(int(i), float(dists[i])) for i in take]
