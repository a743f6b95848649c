import numpy as np
import pytest

from arcell.errors import InvalidParameter
from arcell.kin import grab_detect, hand_guidance_step, load_robot
from helpers import random_chain


@pytest.fixture(scope="module")
def planar2r():
    return load_robot("planar2r")


def test_grab_on_link_surface(planar2r):
    # point on link 0's capsule surface
    assert grab_detect(planar2r, [0.0, 0.0], (0.5, 0.05, 0.0)) == 0


def test_grab_far_away_none(planar2r):
    assert grab_detect(planar2r, [0.0, 0.0], (0.0, 5.0, 0.0)) is None


def test_grab_tie_prefers_distal(planar2r):
    # elbow point (1,0,0) is exactly on both link capsules' shared endpoint
    assert grab_detect(planar2r, [0.0, 0.0], (1.0, 0.08, 0.0)) == 1


def test_guidance_parent_joint_absorbs_tangent_drag(planar2r):
    res = hand_guidance_step(planar2r, [0.0, 0.0], link=0, delta=(0.0, 0.1, 0.0), lambda_g=0.0)
    assert np.allclose(res.q, [0.1, 0.0], atol=1e-9)
    assert res.residual < 1e-9


def test_guidance_zero_delta_noop(planar2r):
    res = hand_guidance_step(planar2r, [0.2, -0.4], link=1, delta=(0.0, 0.0, 0.0))
    assert np.allclose(res.q, [0.2, -0.4])
    assert res.residual == 0.0


def test_guidance_radial_drag_is_all_residual(planar2r):
    # pulling the straight arm outward along its own axis cannot move any joint
    res = hand_guidance_step(planar2r, [0.0, 0.0], link=1, delta=(-0.1, 0.0, 0.0), lambda_g=0.0)
    assert np.allclose(res.q, [0.0, 0.0], atol=1e-12)
    assert res.residual == pytest.approx(0.1, abs=1e-9)


def test_guidance_invalid_link(planar2r):
    with pytest.raises(InvalidParameter):
        hand_guidance_step(planar2r, [0.0, 0.0], link=5, delta=(0.01, 0, 0))


def test_guidance_oversized_step_rejected(planar2r):
    with pytest.raises(InvalidParameter):
        hand_guidance_step(planar2r, [0.0, 0.0], link=0, delta=(0.2, 0, 0))


def test_guidance_residual_monotone_random():
    rng = np.random.default_rng(11)
    for _ in range(400):
        chain = random_chain(rng)
        q = rng.uniform(-1.5, 1.5, size=chain.n)
        link = int(rng.integers(0, chain.n))
        delta = rng.normal(size=3)
        delta *= rng.uniform(0.0, 0.1) / max(np.linalg.norm(delta), 1e-12)
        res = hand_guidance_step(chain, q, link, delta, lambda_g=rng.uniform(0, 1e-3))
        trace = np.asarray(res.residual_trace)
        assert np.all(np.diff(trace) <= 1e-12)


def test_parent_span_displacement_fully_absorbed():
    rng = np.random.default_rng(23)
    for _ in range(50):
        chain = random_chain(rng, prismatic_ok=False)
        q = rng.uniform(-1.0, 1.0, size=chain.n)
        link = int(rng.integers(0, chain.n))
        from arcell.kin import fk_arrays, jacobian

        Rs, ts = fk_arrays(chain, q)
        p = ts[link + 1]
        local = Rs[link].T @ (p - ts[link])
        c = jacobian(chain, q, attach=(link, local))[:3, link]
        if np.linalg.norm(c) < 1e-3:
            continue
        delta = c / np.linalg.norm(c) * 0.01
        res = hand_guidance_step(chain, q, link, delta, lambda_g=0.0)
        assert res.residual < 1e-9
