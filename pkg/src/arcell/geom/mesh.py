"""Triangle meshes: surface sampling and ray casting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParameter
from .cloud import PointCloud
from .transform import RigidTransform


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    """Vertices in meters plus triangles as vertex-index triples."""

    vertices: np.ndarray
    triangles: np.ndarray

    def __post_init__(self):
        verts = np.array(self.vertices, dtype=float).reshape(-1, 3)
        tris = np.array(self.triangles, dtype=np.int64).reshape(-1, 3)
        if tris.size:
            if tris.min() < 0 or tris.max() >= verts.shape[0]:
                raise InvalidParameter("triangle index out of range")
            a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
            if np.any((a == b) | (b == c) | (a == c)):
                raise InvalidParameter("triangle indices must be pairwise distinct")
        verts.setflags(write=False)
        tris.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "triangles", tris)

    def __len__(self) -> int:
        return self.triangles.shape[0]

    def triangle_corners(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        v = self.vertices
        t = self.triangles
        return v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]

    def triangle_areas(self) -> np.ndarray:
        a, b, c = self.triangle_corners()
        return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)

    def surface_area(self) -> float:
        return float(self.triangle_areas().sum())

    def transformed(self, transform: RigidTransform) -> "TriangleMesh":
        return TriangleMesh(transform.apply(self.vertices), self.triangles)


def merge_meshes(meshes: list[TriangleMesh]) -> TriangleMesh:
    verts = []
    tris = []
    offset = 0
    for m in meshes:
        verts.append(m.vertices)
        tris.append(m.triangles + offset)
        offset += m.vertices.shape[0]
    if not verts:
        return TriangleMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64))
    return TriangleMesh(np.vstack(verts), np.vstack(tris))


def sample_mesh_surface(mesh: TriangleMesh, density: float, seed: int = 0) -> PointCloud:
    """Deterministic uniform surface sampling at `density` points per square meter.

    Total count is round(area * density); counts are allocated per triangle by
    largest remainder on triangle areas, then drawn uniformly in barycentric
    coordinates from a generator seeded with `seed`.
    """
    if density <= 0:
        raise InvalidParameter("sampling density must be > 0")
    areas = mesh.triangle_areas()
    total = float(areas.sum())
    count = int(round(total * density))
    if total == 0.0 or count == 0:
        return PointCloud.empty()

    quota = count * areas / total
    base = np.floor(quota).astype(np.int64)
    remainder = count - int(base.sum())
    if remainder > 0:
        # stable sort so equal fractional parts favor lower triangle index
        order = np.argsort(-(quota - base), kind="stable")
        base[order[:remainder]] += 1

    rng = np.random.default_rng(seed)
    a, b, c = mesh.triangle_corners()
    out = np.empty((count, 3))
    pos = 0
    for i in np.nonzero(base)[0]:
        n = int(base[i])
        uv = rng.random((n, 2))
        fold = uv.sum(axis=1) > 1.0
        uv[fold] = 1.0 - uv[fold]
        out[pos : pos + n] = a[i] + uv[:, :1] * (b[i] - a[i]) + uv[:, 1:] * (c[i] - a[i])
        pos += n
    return PointCloud(out)


def ray_mesh_intersect(origin, direction, mesh: TriangleMesh) -> tuple[float, int, np.ndarray] | None:
    """First hit (smallest positive t) of a ray against the mesh.

    Returns (t, triangle index, barycentric weights for the triangle's three
    vertices) or None. Ties on t resolve to the lower triangle index.
    """
    if len(mesh) == 0:
        return None
    o = np.asarray(origin, dtype=float).reshape(3)
    d = np.asarray(direction, dtype=float).reshape(3)
    n = np.linalg.norm(d)
    if not np.isclose(n, 1.0, atol=1e-6):
        raise InvalidParameter("ray direction must be unit norm")
    d = d / n

    eps = 1e-12
    a, b, c = mesh.triangle_corners()
    e1 = b - a
    e2 = c - a
    h = np.cross(d[None, :], e2)
    det = np.einsum("ij,ij->i", e1, h)
    ok = np.abs(det) > eps
    inv = np.zeros_like(det)
    inv[ok] = 1.0 / det[ok]
    s = o[None, :] - a
    u = np.einsum("ij,ij->i", s, h) * inv
    q = np.cross(s, e1)
    v = (q @ d) * inv
    t = np.einsum("ij,ij->i", e2, q) * inv
    hit = ok & (u >= -1e-12) & (v >= -1e-12) & (u + v <= 1.0 + 1e-12) & (t > 1e-12)
    if not hit.any():
        return None
    t_masked = np.where(hit, t, np.inf)
    idx = int(np.argmin(t_masked))
    bary = np.array([1.0 - u[idx] - v[idx], u[idx], v[idx]])
    return float(t[idx]), idx, bary
