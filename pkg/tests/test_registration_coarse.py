import numpy as np
import pytest

from arcell.errors import InvalidParameter, NoAlignmentFound
from arcell.geom import PointCloud, RigidTransform, pose_error
from arcell.registration import IcpParams, coarse_align, icp
from helpers import tripod_cloud


@pytest.fixture(scope="module")
def cloud():
    return PointCloud(tripod_cloud(np.random.default_rng(5), 500))


def test_self_alignment_full_support(cloud):
    res = coarse_align(cloud, cloud, overlap_estimate=0.9, delta=0.01)
    assert res.inlier_fraction == pytest.approx(1.0)
    dt, dr = pose_error(res.transform, RigidTransform.identity())
    assert dt < 0.02
    assert dr < 0.1


def test_recovers_60_degree_rotation_then_icp_refines(cloud):
    T_star = RigidTransform.from_axis_angle((0.2, -0.3, 1.0), np.deg2rad(60.0), (0.3, -0.3, 0.2))
    target = PointCloud(T_star.apply(cloud.points))
    res = coarse_align(cloud, target, overlap_estimate=0.5, delta=0.02)
    dt, dr = pose_error(res.transform, T_star)
    assert dt < 0.06  # delta-level coarse error
    refined = icp(cloud, target, res.transform, IcpParams(max_correspondence_distance=0.08))
    dt2, dr2 = pose_error(refined.transform, T_star)
    assert dt2 < 1e-3
    assert dr2 < 1e-3


def test_too_few_points_rejected(cloud):
    with pytest.raises(InvalidParameter):
        coarse_align(PointCloud(np.zeros((3, 3))), cloud, 0.5, 0.01)


def test_unrelated_clouds_raise(cloud):
    rng = np.random.default_rng(9)
    far = PointCloud(rng.uniform(10.0, 11.0, size=(200, 3)))
    with pytest.raises(NoAlignmentFound):
        coarse_align(cloud, far, overlap_estimate=0.5, delta=0.005, n_bases=8)


def test_support_matches_brute_force_count(cloud):
    T_star = RigidTransform.rot_z(0.4, (0.1, 0.2, 0.0))
    target = PointCloud(T_star.apply(cloud.points))
    delta = 0.02
    res = coarse_align(cloud, target, overlap_estimate=0.3, delta=delta)
    moved = res.transform.apply(cloud.points)
    diff = moved[:, None, :] - target.points[None, :, :]
    min_d = np.sqrt((diff**2).sum(axis=2)).min(axis=1)
    brute = float((min_d <= delta).mean())
    assert res.inlier_fraction == pytest.approx(brute, abs=1e-12)


def test_deterministic_given_seed(cloud):
    T_star = RigidTransform.rot_z(0.4, (0.1, 0.2, 0.0))
    target = PointCloud(T_star.apply(cloud.points))
    a = coarse_align(cloud, target, 0.4, 0.02, seed=7)
    b = coarse_align(cloud, target, 0.4, 0.02, seed=7)
    assert np.array_equal(a.transform.rotation, b.transform.rotation)
    assert np.array_equal(a.transform.translation, b.transform.translation)
    assert a.inlier_fraction == b.inlier_fraction
