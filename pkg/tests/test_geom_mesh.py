import numpy as np
import pytest

from arcell.errors import InvalidParameter
from arcell.geom import TriangleMesh, merge_meshes, ray_mesh_intersect, sample_mesh_surface


def unit_square_mesh() -> TriangleMesh:
    verts = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]
    tris = [[0, 1, 2], [0, 2, 3]]
    return TriangleMesh(verts, tris)


def test_unit_square_sample_count_and_plane():
    cloud = sample_mesh_surface(unit_square_mesh(), 1000.0, seed=0)
    assert len(cloud) == 1000
    assert np.allclose(cloud.points[:, 2], 0.0)
    assert cloud.points[:, 0].min() >= 0 and cloud.points[:, 0].max() <= 1


def test_single_triangle_count():
    mesh = TriangleMesh([[0, 0, 0], [1, 0, 0], [0, 1, 0]], [[0, 1, 2]])
    cloud = sample_mesh_surface(mesh, 10.0, seed=1)
    assert len(cloud) == 5  # area 0.5 * density 10
    # all samples inside the triangle: x,y >= 0 and x+y <= 1
    assert (cloud.points[:, 0] >= 0).all()
    assert (cloud.points[:, 1] >= 0).all()
    assert (cloud.points[:, 0] + cloud.points[:, 1] <= 1 + 1e-12).all()


def test_degenerate_triangle_yields_nothing():
    mesh = TriangleMesh([[0, 0, 0], [1, 0, 0], [2, 0, 0]], [[0, 1, 2]])
    assert len(sample_mesh_surface(mesh, 100.0)) == 0


def test_sample_count_rule_random_meshes():
    rng = np.random.default_rng(4)
    for _ in range(10):
        nv = int(rng.integers(3, 12))
        verts = rng.normal(size=(nv, 3))
        tris = []
        for _ in range(int(rng.integers(1, 8))):
            idx = rng.choice(nv, size=3, replace=False)
            tris.append(idx)
        mesh = TriangleMesh(verts, np.asarray(tris))
        density = float(rng.uniform(10, 300))
        expected = int(round(mesh.surface_area() * density))
        assert len(sample_mesh_surface(mesh, density, seed=2)) == expected


def test_samples_lie_on_source_triangles():
    mesh = unit_square_mesh()
    cloud = sample_mesh_surface(mesh, 500.0, seed=3)
    # plane z=0 and the square bound is exactly the triangle union here
    assert np.abs(cloud.points[:, 2]).max() == 0.0


def test_sampling_deterministic():
    mesh = unit_square_mesh()
    a = sample_mesh_surface(mesh, 200.0, seed=9)
    b = sample_mesh_surface(mesh, 200.0, seed=9)
    assert np.array_equal(a.points, b.points)


def test_sampling_requires_positive_density():
    with pytest.raises(InvalidParameter):
        sample_mesh_surface(unit_square_mesh(), 0.0)


def test_triangle_index_validation():
    with pytest.raises(InvalidParameter):
        TriangleMesh([[0, 0, 0], [1, 0, 0]], [[0, 1, 2]])
    with pytest.raises(InvalidParameter):
        TriangleMesh([[0, 0, 0], [1, 0, 0], [0, 1, 0]], [[0, 1, 1]])


def test_ray_hits_floor():
    hit = ray_mesh_intersect((0.25, 0.25, 1.0), (0, 0, -1), unit_square_mesh())
    assert hit is not None
    t, tri, bary = hit
    assert t == pytest.approx(1.0)
    assert bary.sum() == pytest.approx(1.0)


def test_ray_parallel_misses():
    assert ray_mesh_intersect((0.5, 0.5, 1.0), (1, 0, 0), unit_square_mesh()) is None


def test_ray_two_stacked_surfaces_takes_nearer():
    lower = unit_square_mesh()
    upper = TriangleMesh(lower.vertices + np.array([0, 0, 0.5]), lower.triangles)
    mesh = merge_meshes([lower, upper])
    t, tri, _ = ray_mesh_intersect((0.25, 0.25, 1.0), (0, 0, -1), mesh)
    assert t == pytest.approx(0.5)
    assert tri >= 2  # one of the upper triangles


def test_merge_offsets_indices():
    m = merge_meshes([unit_square_mesh(), unit_square_mesh()])
    assert m.vertices.shape[0] == 8
    assert m.triangles.max() == 7
