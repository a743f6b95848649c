import numpy as np
import pytest

from arcell.errors import InvalidConfiguration
from arcell.geom import RigidTransform, pose_error
from arcell.kin import (
    Capsule,
    Joint,
    JointType,
    KinematicChain,
    LinkGeometry,
    fk,
    fk_arrays,
    load_robot,
)
from helpers import random_chain


@pytest.fixture(scope="module")
def planar2r():
    return load_robot("planar2r")


@pytest.fixture(scope="module")
def kr6():
    return load_robot("kr6")


def test_planar2r_bent_elbow(planar2r):
    frames = fk(planar2r, [np.pi / 2, 0.0])
    ee = frames[-1]
    assert np.allclose(ee.translation, [0.0, 2.0, 0.0], atol=1e-12)


def test_planar2r_both_joints(planar2r):
    frames = fk(planar2r, [np.pi / 2, -np.pi / 2])
    assert np.allclose(frames[-1].translation, [1.0, 1.0, 0.0], atol=1e-12)


def test_zero_q_gives_cumulative_origins():
    rng = np.random.default_rng(0)
    for _ in range(10):
        chain = random_chain(rng, prismatic_ok=False)
        frames = fk(chain, np.zeros(chain.n))
        T = RigidTransform.identity()
        for i, joint in enumerate(chain.joints):
            T = T @ joint.origin
            dt, dr = pose_error(frames[i], T)
            assert dt < 1e-12 and dr < 1e-9


def test_prismatic_translates_along_axis():
    chain = KinematicChain(
        joints=(
            Joint(
                type=JointType.PRISMATIC,
                origin=RigidTransform.identity(),
                axis=np.array([0.0, 0.0, 1.0]),
                limits=(-1.0, 1.0),
            ),
        ),
        links=(LinkGeometry(capsules=(Capsule((0, 0, 0), (0, 0, 0.1), 0.02),)),),
    )
    frames = fk(chain, [0.3])
    assert np.allclose(frames[0].translation, [0, 0, 0.3])
    assert np.allclose(frames[0].rotation, np.eye(3))


def test_fk_rejects_wrong_length(planar2r):
    with pytest.raises(InvalidConfiguration):
        fk(planar2r, [0.0])


def test_fk_frames_are_rigid(kr6):
    rng = np.random.default_rng(1)
    lo, hi = kr6.limits_arrays()
    worst = 0.0
    for _ in range(2000):
        q = rng.uniform(lo, hi)
        Rs, _ = fk_arrays(kr6, q)
        for R in Rs:
            worst = max(worst, float(np.abs(R.T @ R - np.eye(3)).max()))
            worst = max(worst, abs(float(np.linalg.det(R)) - 1.0))
    assert worst < 1e-9


def test_kr6_home_pose(kr6):
    frames = fk(kr6, np.zeros(6))
    # sum of link offsets: x = 0.08+0.12+0.21+0.075+0.08, z = 0.3+0.05+0.34
    assert np.allclose(frames[-1].translation, [0.565, 0.0, 0.69], atol=1e-12)
