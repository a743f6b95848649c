"""Window descriptor for automatic robot localization in a scene cloud.

Captures the window-local centroid, the covariance eigen-structure and the
fraction of points in n equal vertical slices of the window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyWindow, InvalidParameter
from ..geom import Aabb, PointCloud

EPS = 1e-12


@dataclass(frozen=True, eq=False)
class SliceDescriptor:
    centroid: np.ndarray  # window-local, meters
    eigenvalues: np.ndarray  # descending, m^2
    eigenvectors: np.ndarray  # columns, unit norm, sign-normalized
    slice_counts: np.ndarray  # fractions summing to 1
    point_count: int

    def __post_init__(self):
        for name in ("centroid", "eigenvalues", "eigenvectors", "slice_counts"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_slices(self) -> int:
        return int(self.slice_counts.shape[0])


def compute_descriptor(cloud: PointCloud, window: Aabb, n_slices: int) -> SliceDescriptor:
    """Describe the points inside `window` (inclusive bounds).

    Centroid is relative to the window min corner; eigenvalues of the
    population covariance are sorted descending; each eigenvector's
    largest-magnitude component is made positive; slices split the window's
    z extent into n equal bands.
    """
    if n_slices < 1:
        raise InvalidParameter("n_slices must be >= 1")
    pts = cloud.points[window.contains_mask(cloud.points)]
    if pts.shape[0] == 0:
        raise EmptyWindow("no points inside the descriptor window")

    local = pts - window.min
    centroid = local.mean(axis=0)
    centered = local - centroid
    cov = centered.T @ centered / pts.shape[0]
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals)[::-1]
    evals = np.clip(evals[order], 0.0, None)
    evecs = evecs[:, order]
    # sign normalization: largest-magnitude component positive
    for c in range(3):
        k = int(np.argmax(np.abs(evecs[:, c])))
        if evecs[k, c] < 0:
            evecs[:, c] = -evecs[:, c]

    height = float(window.max[2] - window.min[2])
    if height > 0:
        bands = np.floor(local[:, 2] / height * n_slices).astype(int)
        bands = np.clip(bands, 0, n_slices - 1)
    else:
        bands = np.zeros(pts.shape[0], dtype=int)
    counts = np.bincount(bands, minlength=n_slices).astype(float) / pts.shape[0]

    return SliceDescriptor(
        centroid=centroid,
        eigenvalues=evals,
        eigenvectors=evecs,
        slice_counts=counts,
        point_count=int(pts.shape[0]),
    )


def descriptor_distance(a: SliceDescriptor, b: SliceDescriptor, weights, scale: float) -> float:
    """Weighted descriptor mismatch; symmetric, zero for identical descriptors.

    Terms: centroid offset normalized by `scale`, relative eigenvalue gaps,
    eigenvector misalignment via 1 - |cos|, and L1 slice histogram difference.
    """
    w = np.asarray(weights, dtype=float).reshape(4)
    if np.any(w < 0) or not np.any(w > 0):
        raise InvalidParameter("weights must be non-negative and not all zero")
    if a.n_slices != b.n_slices:
        raise InvalidParameter("descriptors have different slice counts")
    if scale <= 0:
        raise InvalidParameter("scale must be > 0")

    d_centroid = float(np.linalg.norm(a.centroid - b.centroid)) / scale
    d_eig = float(np.sum(np.abs(a.eigenvalues - b.eigenvalues) / (a.eigenvalues + b.eigenvalues + EPS)))
    cosines = np.abs(np.einsum("ij,ij->j", a.eigenvectors, b.eigenvectors))
    d_vec = float(np.sum(1.0 - np.clip(cosines, 0.0, 1.0)))
    d_slice = float(np.sum(np.abs(a.slice_counts - b.slice_counts)))
    return float(w[0] * d_centroid + w[1] * d_eig + w[2] * d_vec + w[3] * d_slice)
