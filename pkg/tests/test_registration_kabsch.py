import numpy as np
import pytest

from arcell.errors import DegenerateInput
from arcell.geom import RigidTransform, pose_error
from arcell.registration import fit_residual_rmse, kabsch_fit
from helpers import random_pose


def test_identical_sets_give_identity():
    pts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0.3, 0.2, 0.9]], dtype=float)
    T = kabsch_fit(pts, pts)
    dt, dr = pose_error(T, RigidTransform.identity())
    assert dt < 1e-12 and dr < 1e-9
    assert fit_residual_rmse(T, pts, pts) < 1e-12


def test_recovers_generating_transform():
    src = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float)
    T_star = RigidTransform.rot_z(np.deg2rad(90), (0.1, 0.0, 0.0))
    tgt = T_star.apply(src)
    T = kabsch_fit(src, tgt)
    dt, dr = pose_error(T, T_star)
    assert dt < 1e-10 and dr < 1e-10


def test_two_pairs_degenerate():
    with pytest.raises(DegenerateInput):
        kabsch_fit(np.zeros((2, 3)), np.zeros((2, 3)))


def test_collinear_points_degenerate():
    src = np.array([[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]], dtype=float)
    with pytest.raises(DegenerateInput):
        kabsch_fit(src, src)


def test_global_optimum_versus_random_transforms():
    # Monte-Carlo lower bound: no random rigid transform beats the fit
    rng = np.random.default_rng(0)
    for _ in range(5):
        n = int(rng.integers(3, 7))
        src = rng.normal(size=(n, 3))
        tgt = rng.normal(size=(n, 3))
        try:
            T = kabsch_fit(src, tgt)
        except DegenerateInput:
            continue
        best = fit_residual_rmse(T, src, tgt)
        for _ in range(10_000):
            cand = random_pose(rng, scale=2.0)
            assert fit_residual_rmse(cand, src, tgt) >= best - 1e-12


def test_noisy_fit_beats_truth_residual():
    rng = np.random.default_rng(1)
    src = rng.normal(size=(40, 3))
    T_star = random_pose(rng)
    tgt = T_star.apply(src) + rng.normal(scale=0.01, size=(40, 3))
    T = kabsch_fit(src, tgt)
    assert fit_residual_rmse(T, src, tgt) <= fit_residual_rmse(T_star, src, tgt) + 1e-12
