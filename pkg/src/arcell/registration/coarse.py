"""4PCS-family coarse alignment scored by largest-common-pointset support.

Approximately-coplanar 4-point bases are drawn from the target; congruent
4-point sets in the source are found through the two affine-invariant
intersection ratios of the base diagonals; candidate rigid transforms are
scored by the fraction of source points landing within `delta` of the target.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from ..errors import InvalidParameter, NoAlignmentFound
from ..geom import Aabb, PointCloud
from .icp import RegistrationResult
from .kabsch import kabsch_fit

# documented engineering defaults; the paper leaves 4PCS internals external
DEFAULT_BASES = 32
DEFAULT_COPLANARITY_TOL = 0.005
DEFAULT_MAX_CANDIDATES = 512

_RATIO_MARGIN = 0.05  # keep diagonal intersections away from base endpoints
_PAIR_SEARCH_LIMIT = 2000  # decimate pair extraction above this source size


def _segment_intersection(a, b, c, d) -> tuple[float, float, float] | None:
    """Closest-approach parameters (s on ab, t on cd) and the gap between them."""
    u = b - a
    v = d - c
    w0 = c - a
    uu = float(u @ u)
    vv = float(v @ v)
    uv = float(u @ v)
    det = uu * vv - uv * uv
    if det <= 1e-12 * max(uu * vv, 1e-30):
        return None
    s = (vv * float(u @ w0) - uv * float(v @ w0)) / det
    t = (uv * float(u @ w0) - uu * float(v @ w0)) / det
    gap = float(np.linalg.norm(a + s * u - (c + t * v)))
    return s, t, gap


def _sample_base(tgt: np.ndarray, rng, source_diam: float, coplanarity_tol: float):
    """One wide, approximately coplanar 4-point base with interior diagonal ratios."""
    n = tgt.shape[0]
    lo_d = 0.25 * source_diam
    hi_d = 0.95 * source_diam
    for _ in range(64):
        i1, i2, i3 = (int(x) for x in rng.choice(n, size=3, replace=False))
        a, b, c = tgt[i1], tgt[i2], tgt[i3]
        d_ab = np.linalg.norm(a - b)
        d_ac = np.linalg.norm(a - c)
        d_bc = np.linalg.norm(b - c)
        if not all(lo_d <= d <= hi_d for d in (d_ab, d_ac, d_bc)):
            continue
        normal = np.cross(b - a, c - a)
        area2 = float(np.linalg.norm(normal))
        if area2 < 0.05 * source_diam**2:
            continue
        normal /= area2
        offsets = np.abs((tgt - a) @ normal)
        near_plane = np.nonzero(offsets <= coplanarity_tol)[0]
        near_plane = near_plane[~np.isin(near_plane, (i1, i2, i3))]
        if near_plane.size == 0:
            continue
        dists_a = np.linalg.norm(tgt[near_plane] - a, axis=1)
        near_plane = near_plane[(dists_a >= lo_d * 0.5) & (dists_a <= hi_d)]
        if near_plane.size == 0:
            continue
        i4 = int(rng.choice(near_plane))
        pts = (i1, i2, i3, i4)
        # find a pairing whose diagonals actually cross inside both segments
        for pa, pb, pc, pd in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
            quad = tuple(pts[k] for k in (pa, pb, pc, pd))
            hit = _segment_intersection(tgt[quad[0]], tgt[quad[1]], tgt[quad[2]], tgt[quad[3]])
            if hit is None:
                continue
            s, t, gap = hit
            if _RATIO_MARGIN <= s <= 1 - _RATIO_MARGIN and _RATIO_MARGIN <= t <= 1 - _RATIO_MARGIN and gap <= coplanarity_tol:
                return quad, s, t
    return None


def _length_pairs(pts: np.ndarray, pair_idx: np.ndarray, pair_len: np.ndarray, length: float, tol: float):
    """Index pairs (both orientations) whose length matches within tol."""
    hit = np.nonzero(np.abs(pair_len - length) <= tol)[0]
    ij = pair_idx[hit]
    return np.vstack([ij, ij[:, ::-1]]) if ij.size else ij.reshape(0, 2)


def coarse_align(
    source: PointCloud,
    target: PointCloud,
    overlap_estimate: float,
    delta: float,
    seed: int = 0,
    n_bases: int = DEFAULT_BASES,
    coplanarity_tol: float = DEFAULT_COPLANARITY_TOL,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> RegistrationResult:
    """Global alignment without an initial guess; deterministic for a given seed.

    Raises NoAlignmentFound when no candidate reaches support of
    overlap_estimate * |source| points within delta.
    """
    if len(source) < 4 or len(target) < 4:
        raise InvalidParameter("coarse_align needs at least 4 points in each cloud")
    if not 0.0 < overlap_estimate <= 1.0:
        raise InvalidParameter("overlap_estimate must be in (0, 1]")
    if delta <= 0:
        raise InvalidParameter("delta must be > 0")

    rng = np.random.default_rng(seed)
    src = source.points
    tgt = target.points
    tree_tgt = cKDTree(tgt)
    source_diam = Aabb.of_points(src).diagonal

    # pair table of the (possibly decimated) source
    if src.shape[0] > _PAIR_SEARCH_LIMIT:
        keep = np.unique(np.linspace(0, src.shape[0] - 1, _PAIR_SEARCH_LIMIT).astype(int))
    else:
        keep = np.arange(src.shape[0])
    sub = src[keep]
    iu, ju = np.triu_indices(sub.shape[0], k=1)
    pair_idx = np.column_stack([keep[iu], keep[ju]])
    pair_len = np.linalg.norm(sub[iu] - sub[ju], axis=1)

    best: tuple[float, float] | None = None
    best_result: RegistrationResult | None = None
    evaluated = 0
    per_base_quota = max(1, max_candidates // n_bases)

    for _ in range(n_bases):
        if evaluated >= max_candidates:
            break
        base = _sample_base(tgt, rng, source_diam, coplanarity_tol)
        if base is None:
            continue
        quad, r1, r2 = base
        A, B, C, D = (tgt[i] for i in quad)
        L1 = float(np.linalg.norm(A - B))
        L2 = float(np.linalg.norm(C - D))
        pairs1 = _length_pairs(src, pair_idx, pair_len, L1, delta)
        pairs2 = _length_pairs(src, pair_idx, pair_len, L2, delta)
        if pairs1.shape[0] == 0 or pairs2.shape[0] == 0:
            continue
        e1 = src[pairs1[:, 0]] + r1 * (src[pairs1[:, 1]] - src[pairs1[:, 0]])
        e2 = src[pairs2[:, 0]] + r2 * (src[pairs2[:, 1]] - src[pairs2[:, 0]])
        hits = cKDTree(e1).sparse_distance_matrix(cKDTree(e2), delta, output_type="ndarray")
        if hits.size == 0:
            continue
        m1 = hits["i"].astype(np.int64)
        m2 = hits["j"].astype(np.int64)

        ii = pairs1[m1, 0]
        jj = pairs1[m1, 1]
        kk = pairs2[m2, 0]
        ll = pairs2[m2, 1]
        distinct = (ii != kk) & (ii != ll) & (jj != kk) & (jj != ll)

        base_dists = np.array(
            [
                np.linalg.norm(A - C),
                np.linalg.norm(A - D),
                np.linalg.norm(B - C),
                np.linalg.norm(B - D),
            ]
        )
        cross = np.stack(
            [
                np.linalg.norm(src[ii] - src[kk], axis=1),
                np.linalg.norm(src[ii] - src[ll], axis=1),
                np.linalg.norm(src[jj] - src[kk], axis=1),
                np.linalg.norm(src[jj] - src[ll], axis=1),
            ],
            axis=1,
        )
        residual = np.abs(cross - base_dists).max(axis=1)
        keep = distinct & (residual <= 2 * delta)
        if not keep.any():
            continue
        # most-congruent candidates first; ties by match indices for determinism
        sel = np.nonzero(keep)[0]
        order = sel[np.lexsort((m1[sel], m2[sel], residual[sel]))]

        target_quad = np.vstack([A, B, C, D])
        for m in order[:per_base_quota]:
            if evaluated >= max_candidates:
                break
            quad_s = src[[ii[m], jj[m], kk[m], ll[m]]]
            try:
                T = kabsch_fit(quad_s, target_quad)
            except Exception:
                continue
            evaluated += 1
            dists, _ = tree_tgt.query(T.apply(src), k=1)
            inlier = dists <= delta
            support = float(inlier.mean())
            rmse = float(np.sqrt((dists[inlier] ** 2).mean())) if inlier.any() else float("inf")
            # tie-break: higher support, then lower rmse, then earlier candidate
            if best is None or (support, -rmse) > best:
                best = (support, -rmse)
                best_result = RegistrationResult(
                    transform=T,
                    rmse=rmse,
                    inlier_fraction=support,
                    iterations=evaluated,
                    converged=True,
                )

    if best_result is None or best_result.inlier_fraction < overlap_estimate:
        got = 0.0 if best_result is None else best_result.inlier_fraction
        raise NoAlignmentFound(
            f"best support {got:.3f} below overlap estimate {overlap_estimate:.3f} "
            f"({evaluated} candidates evaluated)"
        )
    return RegistrationResult(
        transform=best_result.transform,
        rmse=best_result.rmse,
        inlier_fraction=best_result.inlier_fraction,
        iterations=evaluated,
        converged=True,
    )
