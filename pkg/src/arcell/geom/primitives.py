"""Distance primitives shared by collision checking and grab detection."""

from __future__ import annotations

import numpy as np


def point_segment_distance(points, a, b) -> np.ndarray:
    """Euclidean distance from one or more points to segment [a, b].

    Accepts (3,) or (N, 3) points; returns a scalar array of matching shape.
    """
    p = np.asarray(points, dtype=float)
    single = p.ndim == 1
    p = p.reshape(-1, 3)
    a = np.asarray(a, dtype=float).reshape(3)
    b = np.asarray(b, dtype=float).reshape(3)
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        d = np.linalg.norm(p - a, axis=1)
    else:
        t = np.clip((p - a) @ ab / denom, 0.0, 1.0)
        d = np.linalg.norm(p - (a + t[:, None] * ab), axis=1)
    return float(d[0]) if single else d


def point_aabb_distance(points, lo, hi) -> np.ndarray:
    """Distance from points (N, 3) to one box, or (3,) point to boxes (M, 3)."""
    p = np.asarray(points, dtype=float)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    gap = np.maximum(np.maximum(lo - p, p - hi), 0.0)
    return np.linalg.norm(gap, axis=-1)


def segment_aabb_distance(a, b, lo, hi, iters: int = 96) -> np.ndarray:
    """Distance between segment [a, b] and axis-aligned boxes.

    `lo`/`hi` may be (3,) or (M, 3). The point-to-box distance along the
    segment is convex in the segment parameter, so a vectorized ternary
    search converges to full float precision well before `iters`.
    """
    a = np.asarray(a, dtype=float).reshape(3)
    b = np.asarray(b, dtype=float).reshape(3)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    single = lo.ndim == 1
    lo = lo.reshape(-1, 3)
    hi = hi.reshape(-1, 3)
    m = lo.shape[0]
    t_lo = np.zeros(m)
    t_hi = np.ones(m)
    ab = b - a

    def f(t):
        p = a + t[:, None] * ab
        return point_aabb_distance(p, lo, hi)

    for _ in range(iters):
        m1 = t_lo + (t_hi - t_lo) / 3.0
        m2 = t_hi - (t_hi - t_lo) / 3.0
        f1 = f(m1)
        f2 = f(m2)
        shrink_hi = f1 < f2
        t_hi = np.where(shrink_hi, m2, t_hi)
        t_lo = np.where(shrink_hi, t_lo, m1)
    d = f((t_lo + t_hi) / 2.0)
    return float(d[0]) if single else d
