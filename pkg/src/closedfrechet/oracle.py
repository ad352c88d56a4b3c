"""Brute-force reference procedures used to validate the fast decision.

Nothing here calls into the free-space or sweep modules: segment clipping,
reachability propagation and discrete matching are all reimplemented in the
plainest form available.
"""

import math
from typing import NamedTuple

import numpy as np
from numba import njit

from .geometry import Curve, hausdorff_distance, point_at

__all__ = [
    "Bracket",
    "clip_by_projection",
    "open_curve_decide",
    "discrete_frechet",
    "refine",
    "cyclic_discrete_frechet_bracket",
    "sampled_shift_decide",
    "doubled_edge_intervals",
    "reachable_top",
    "rightmost_top_landing",
    "rightmost_bottom_takeoff",
]


class Bracket(NamedTuple):
    """Interval known to contain the Frechet distance."""

    lo: float
    hi: float

    def verdict(self, eps):
        """True or False when ``eps`` lies outside the bracket, else None."""
        if eps < self.lo:
            return False
        if eps > self.hi:
            return True
        return None


def clip_by_projection(p, q, c, eps):
    """Free parameter range of segment ``pq`` around ``c`` via the foot of the perpendicular.

    Returns ``(lo, hi)`` in ``[0, 1]`` or ``None``.
    """
    p, q, c = (np.asarray(a, dtype=float) for a in (p, q, c))
    d = q - p
    L2 = float(d @ d)
    if L2 == 0.0:
        return (0.0, 1.0) if float(np.linalg.norm(p - c)) <= eps else None
    t0 = float((c - p) @ d) / L2
    foot = p + t0 * d
    h2 = float((c - foot) @ (c - foot))
    if h2 > eps * eps:
        return None
    w = math.sqrt(eps * eps - h2) / math.sqrt(L2)
    lo, hi = max(0.0, t0 - w), min(1.0, t0 + w)
    if lo > hi:
        return None
    return lo, hi


def _as_points(P):
    arr = np.asarray(P, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr


def open_curve_decide(P, Q, eps):
    """Frechet decision for open polylines by cell-by-cell propagation.

    ``P`` and ``Q`` are vertex arrays, each with at least one point.  A
    single point is treated as a polyline with one zero-length edge.
    """
    P, Q = _as_points(P), _as_points(Q)
    if len(P) == 1:
        P = np.vstack([P, P])
    if len(Q) == 1:
        Q = np.vstack([Q, Q])
    p, q = len(P) - 1, len(Q) - 1
    if np.linalg.norm(P[0] - Q[0]) > eps or np.linalg.norm(P[-1] - Q[-1]) > eps:
        return False
    # horizontal edge (i, j): segment P[i]P[i+1] against Q[j]; vertical (i, j): Q[j]Q[j+1] against P[i]
    horiz = [[clip_by_projection(P[i], P[i + 1], Q[j], eps) for i in range(p)] for j in range(q + 1)]
    vert = [[clip_by_projection(Q[j], Q[j + 1], P[i], eps) for i in range(p + 1)] for j in range(q)]
    # reachable parts, same layout
    rh = [[None] * p for _ in range(q + 1)]
    rv = [[None] * (p + 1) for _ in range(q)]
    # boundary: slide along the bottom row and up the left column from the origin
    for i in range(p):
        free = horiz[0][i]
        if free is not None and free[0] == 0.0 and (i == 0 or (rh[0][i - 1] is not None and rh[0][i - 1][1] == 1.0)):
            rh[0][i] = free
        else:
            break
    for j in range(q):
        free = vert[j][0]
        if free is not None and free[0] == 0.0 and (j == 0 or (rv[j - 1][0] is not None and rv[j - 1][0][1] == 1.0)):
            rv[j][0] = free
        else:
            break
    for j in range(q):
        for i in range(p):
            below, left = rh[j][i], rv[j][i]
            free_r, free_t = vert[j][i + 1], horiz[j + 1][i]
            if free_r is not None:
                if below is not None:
                    rv[j][i + 1] = free_r
                elif left is not None and max(left[0], free_r[0]) <= free_r[1]:
                    rv[j][i + 1] = (max(left[0], free_r[0]), free_r[1])
            if free_t is not None:
                if left is not None:
                    rh[j + 1][i] = free_t
                elif below is not None and max(below[0], free_t[0]) <= free_t[1]:
                    rh[j + 1][i] = (max(below[0], free_t[0]), free_t[1])
    # the end corner is reached through the last cell's top or right side
    top_end = rh[q][p - 1]
    right_end = rv[q - 1][p]
    return (top_end is not None and top_end[1] == 1.0) or (right_end is not None and right_end[1] == 1.0)


@njit(cache=True)
def _discrete_frechet(A, B):
    na, nb = A.shape[0], B.shape[0]
    prev = np.empty(nb)
    cur = np.empty(nb)
    for i in range(na):
        for j in range(nb):
            d = 0.0
            for k in range(A.shape[1]):
                t = A[i, k] - B[j, k]
                d += t * t
            d = math.sqrt(d)
            if i == 0 and j == 0:
                best = d
            elif i == 0:
                best = max(cur[j - 1], d)
            elif j == 0:
                best = max(prev[0], d)
            else:
                best = max(min(prev[j], prev[j - 1], cur[j - 1]), d)
            cur[j] = best
        prev, cur = cur, prev
    return prev[nb - 1]


def discrete_frechet(A, B):
    """Discrete Frechet distance of two vertex sequences (coupling distance)."""
    A = np.ascontiguousarray(_as_points(A))
    B = np.ascontiguousarray(_as_points(B))
    if A.shape[1] != B.shape[1]:
        raise ValueError("dimension mismatch")
    return float(_discrete_frechet(A, B))


def refine(curve: Curve, h: float):
    """Vertices of the closed curve with every edge split into pieces of length at most ``h``."""
    out = []
    for a, b in curve.edges():
        k = max(1, math.ceil(float(np.linalg.norm(b - a)) / h))
        for s in range(k):
            out.append(a + (b - a) * (s / k))
    return np.array(out)


@njit(cache=True)
def _min_over_shifts(A, B, bound):
    """Smallest discrete Frechet over rotations of ``A`` against closed ``B``."""
    n = A.shape[0]
    best = bound
    rot = np.empty((n + 1, A.shape[1]))
    for s in range(n):
        d0 = 0.0
        for k in range(A.shape[1]):
            t = A[s, k] - B[0, k]
            d0 += t * t
        if math.sqrt(d0) >= best:
            continue
        for r in range(n):
            rot[r] = A[(s + r) % n]
        rot[n] = A[s]
        val = _discrete_frechet(rot, B)
        if val < best:
            best = val
    return best


def cyclic_discrete_frechet_bracket(X: Curve, Y: Curve, h: float = 0.02) -> Bracket:
    """Bracket the closed-curve Frechet distance with refined discrete matchings.

    Any cyclic traverse passes over vertex 0 of Y, so the rotations of X's
    refined vertex ring against Y's refined ring (closed at vertex 0) cover
    every start.  The discrete value bounds the continuous one from above,
    and rounding each continuous position to the nearest refined vertex
    costs at most ``h / 2`` per curve.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    if X.dim != Y.dim:
        raise ValueError("dimension mismatch")
    A = np.ascontiguousarray(refine(X, h))
    Bring = refine(Y, h)
    B = np.ascontiguousarray(np.vstack([Bring, Bring[:1]]))
    Dd = float(_min_over_shifts(A, B, math.inf))
    return Bracket(max(hausdorff_distance(X, Y), Dd - h), Dd)


def _bottom_endpoints(X: Curve, Y: Curve, eps):
    """Endpoints of the free parts of X's edges around vertex 0 of Y."""
    pts = set()
    y0 = Y.vertex(0)
    for i, (a, b) in enumerate(X.edges()):
        iv = clip_by_projection(a, b, y0, eps)
        if iv is not None:
            pts.update((i + iv[0], i + iv[1]))
    return pts


def _rerooted(X: Curve, u):
    """Open polyline tracing X once from parameter ``u`` back to itself."""
    m = X.m
    start = point_at(X, u)
    k = math.floor(u)
    pts = [start]
    for r in range(k + 1, k + m + 1):
        pts.append(X.vertex(r))
    pts.append(start)
    return np.array(pts)


def sampled_shift_decide(X: Curve, Y: Curve, eps: float, K: int = 32) -> bool:
    """One-sided check: True certifies a traverse of width at most ``eps``.

    Tries X rooted at each free endpoint over Y's vertex 0 and at ``K``
    evenly spaced offsets, with Y rooted at vertex 0.
    """
    m = X.m
    candidates = _bottom_endpoints(X, Y, eps) | set(np.linspace(0.0, m, K, endpoint=False).tolist())
    Yopen = Y.closed_vertices()
    for u in sorted(candidates):
        u = min(max(u, 0.0), float(m))
        if open_curve_decide(_rerooted(X, u), Yopen, eps):
            return True
    return False


def doubled_edge_intervals(X: Curve, Y: Curve, eps):
    """Free edge intervals of the doubled diagram, built with the projection clip.

    Returns ``(top, right)`` dictionaries keyed by ``(i, j)`` holding
    ``(lo, hi)`` in diagram coordinates.
    """
    m, n = X.m, Y.m
    top, right = {}, {}
    for j in range(n + 1):
        for i in range(1, 2 * m + 1):
            e = (i - 1) % m
            iv = clip_by_projection(X.vertex(e), X.vertex(e + 1), Y.vertex(j), eps)
            if iv is not None:
                top[i, j] = (i - 1 + iv[0], i - 1 + iv[1])
    for j in range(1, n + 1):
        for i in range(0, 2 * m + 1):
            iv = clip_by_projection(Y.vertex(j - 1), Y.vertex(j), X.vertex(i), eps)
            if iv is not None:
                right[i, j] = (j - 1 + iv[0], j - 1 + iv[1])
    return top, right


def reachable_top(top, right, W, H, u0):
    """Top-row points reachable from the bottom point ``(u0, 0)``.

    Monotone paths may slide along the bottom and top rows.  Returns the
    list of reachable ``(lo, hi)`` pieces of the top row.
    """
    rt, rr = {}, {}
    i0 = max(1, math.ceil(u0))
    iv = top.get((i0, 0))
    if iv is None or not iv[0] <= u0 <= iv[1]:
        return []
    rt[i0, 0] = (u0, iv[1])
    i = i0
    while rt[i, 0][1] == i and (i + 1, 0) in top and top[i + 1, 0][0] == i:
        rt[i + 1, 0] = top[i + 1, 0]
        i += 1
    if u0 == 0.0:
        j = 1
        while (0, j) in right and right[0, j][0] == j - 1:
            rr[0, j] = right[0, j]
            if right[0, j][1] != j:
                break
            j += 1
    for j in range(1, H + 1):
        for i in range(1, W + 1):
            below, left = rt.get((i, j - 1)), rr.get((i - 1, j))
            fr, ft = right.get((i, j)), top.get((i, j))
            if fr is not None:
                if below is not None:
                    rr[i, j] = fr
                elif left is not None and max(left[0], fr[0]) <= fr[1]:
                    rr[i, j] = (max(left[0], fr[0]), fr[1])
            if ft is not None:
                if left is not None:
                    rt[i, j] = ft
                elif below is not None and max(below[0], ft[0]) <= ft[1]:
                    rt[i, j] = (max(below[0], ft[0]), ft[1])
    pieces = [rt[i, H] for i in range(1, W + 1) if (i, H) in rt]
    # slide right along the top row
    out = []
    for i in range(1, W + 1):
        if (i, H) in rt:
            out.append(list(rt[i, H]))
        elif out and out[-1][1] == i - 1 and (i, H) in top and top[i, H][0] == i - 1:
            out.append(list(top[i, H]))
    merged = []
    for lo, hi in out:
        if merged and merged[-1][1] >= lo:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [tuple(p) for p in merged] if pieces else []


def rightmost_top_landing(X: Curve, Y: Curve, eps, u0):
    """Largest top-row ``u`` reachable from ``(u0, 0)`` in the doubled diagram, or None."""
    top, right = doubled_edge_intervals(X, Y, eps)
    pieces = reachable_top(top, right, 2 * X.m, Y.m, u0)
    return max(hi for _, hi in pieces) if pieces else None


def _reflect(top, right, W, H):
    rtop = {(W - i + 1, H - j): (W - hi, W - lo) for (i, j), (lo, hi) in top.items()}
    rright = {(W - i, H - j + 1): (H - hi, H - lo) for (i, j), (lo, hi) in right.items()}
    return rtop, rright


def rightmost_bottom_takeoff(X: Curve, Y: Curve, eps, x):
    """Largest bottom-row ``u`` from which the top point ``(x, n)`` is reachable, or None."""
    W, H = 2 * X.m, Y.m
    top, right = _reflect(*doubled_edge_intervals(X, Y, eps), W, H)
    pieces = reachable_top(top, right, W, H, W - x)
    return W - min(lo for lo, _ in pieces) if pieces else None
