"""Sliding-window descriptor search and fully automatic referencing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AutoReferencingFailed, ArcellError, EmptyInput, EmptyWindow, InvalidParameter
from ..geom import Aabb, PointCloud, RigidTransform
from ..registration import IcpParams, ReferenceMethod, Referencing, seeded_reference
from .descriptor import SliceDescriptor, compute_descriptor, descriptor_distance

YAW_HYPOTHESES = (0.0, np.pi / 2, np.pi, 3 * np.pi / 2)


@dataclass(frozen=True)
class SearchParams:
    n_slices: int = 8
    stride: float | None = None  # None: quarter of the window's smallest horizontal extent
    dilation: float = 1.2
    weights: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    top_k: int = 5

    def __post_init__(self):
        if self.n_slices < 1:
            raise InvalidParameter("n_slices must be >= 1")
        if self.stride is not None and self.stride <= 0:
            raise InvalidParameter("stride must be > 0")
        if self.dilation < 1.0:
            raise InvalidParameter("dilation must be >= 1")
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or not np.any(w > 0):
            raise InvalidParameter("weights must be non-negative and not all zero")
        if self.top_k < 1:
            raise InvalidParameter("top_k must be >= 1")


@dataclass(frozen=True)
class CandidateBox:
    box: Aabb
    score: float

    def __post_init__(self):
        if self.score < 0:
            raise InvalidParameter("candidate score must be >= 0")


def _grid_starts(lo: float, hi: float, window: float, stride: float) -> np.ndarray:
    span = hi - lo - window
    if span <= 0:
        return np.array([lo])
    steps = int(np.ceil(span / stride)) + 1
    return lo + np.arange(steps) * stride


def sliding_search(
    scene: PointCloud,
    template: SliceDescriptor,
    window_size,
    params: SearchParams = SearchParams(),
) -> list[CandidateBox]:
    """Score every non-empty grid window against the template descriptor.

    Windows are placed on a regular grid over the scene bounding box. Result is
    ascending by score (ties by lexicographic window min corner), at most top_k
    entries, and independent of evaluation order.
    """
    ws = np.asarray(window_size, dtype=float).reshape(3)
    if np.any(ws <= 0):
        raise InvalidParameter("window size must be positive componentwise")
    if len(scene) == 0:
        raise EmptyInput("sliding_search on an empty scene")
    stride = params.stride if params.stride is not None else float(min(ws[0], ws[1]) / 4.0)
    bbox = Aabb.of_points(scene.points)
    scale = float(np.linalg.norm(ws))

    xs = _grid_starts(bbox.min[0], bbox.max[0], ws[0], stride)
    ys = _grid_starts(bbox.min[1], bbox.max[1], ws[1], stride)
    zs = _grid_starts(bbox.min[2], bbox.max[2], ws[2], stride)

    scored: list[tuple[float, tuple[float, float, float], CandidateBox]] = []
    pts = scene.points
    for x in xs:
        in_x = (pts[:, 0] >= x) & (pts[:, 0] <= x + ws[0])
        if not in_x.any():
            continue
        px = pts[in_x]
        for y in ys:
            in_y = (px[:, 1] >= y) & (px[:, 1] <= y + ws[1])
            if not in_y.any():
                continue
            pxy = px[in_y]
            for z in zs:
                in_z = (pxy[:, 2] >= z) & (pxy[:, 2] <= z + ws[2])
                if not in_z.any():
                    continue
                window = Aabb((x, y, z), (x + ws[0], y + ws[1], z + ws[2]))
                desc = compute_descriptor(PointCloud(pxy[in_z]), window, params.n_slices)
                score = descriptor_distance(desc, template, params.weights, scale)
                scored.append((score, (x, y, z), CandidateBox(box=window, score=score)))

    scored.sort(key=lambda item: (item[0], item[1]))
    return [c for _, _, c in scored[: params.top_k]]


def template_descriptor(robot_surface: PointCloud, params: SearchParams) -> tuple[SliceDescriptor, Aabb]:
    """Descriptor of the robot surface inside its dilated bounding box."""
    if len(robot_surface) == 0:
        raise EmptyInput("robot surface cloud is empty")
    box = Aabb.of_points(robot_surface.points).dilated(params.dilation)
    return compute_descriptor(robot_surface, box, params.n_slices), box


def automatic_reference(
    scene: PointCloud,
    robot_surface: PointCloud,
    params: SearchParams = SearchParams(),
    icp_params: IcpParams = IcpParams(),
) -> Referencing:
    """Referencing without user input: descriptor search plus seeded refinement.

    For each candidate window in score order, seeds align the template centroid
    to the window centroid under four yaw hypotheses; the first converged ICP
    wins. Raises AutoReferencingFailed (candidates attached) if none converge.
    """
    template, template_box = template_descriptor(robot_surface, params)
    ws = template_box.size
    candidates = sliding_search(scene, template, ws, params)
    centroid_robot = template.centroid + template_box.min

    for cand in candidates:
        inside = scene.points[cand.box.contains_mask(scene.points)]
        if inside.shape[0] == 0:
            continue
        centroid_window = inside.mean(axis=0)
        for yaw in YAW_HYPOTHESES:
            seed_rot = RigidTransform.rot_z(yaw)
            seed = RigidTransform(
                seed_rot.rotation, centroid_window - seed_rot.rotation @ centroid_robot
            )
            try:
                ref = seeded_reference(scene, robot_surface, seed, icp_params, ReferenceMethod.AUTOMATIC)
            except ArcellError:
                continue
            return ref
    raise AutoReferencingFailed(
        f"no converged referencing among {len(candidates)} candidate windows",
        candidates=candidates,
    )
